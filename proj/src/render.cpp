#include "apex/render.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace apex {

namespace {

// Upper-triangular factor E of the pairing matrix (E^T E = gram), so that
// u = E x has the true Euclidean geometry of the realization; rendering is
// the one place where doubles are acceptable.
struct Embed {
  int rank = 1;
  double e00 = 1.0, e01 = 0.0, e11 = 0.0;
  double scale = 120.0, ox = 0.0, oy = 0.0;
};

double to_d(const Rat& x) { return x.get_d(); }

std::array<double, 2> euclid(const Embed& em, const Vec& x) {
  double x0 = to_d(x[0]);
  double x1 = em.rank > 1 ? to_d(x[1]) : 0.0;
  return {em.e00 * x0 + em.e01 * x1, em.e11 * x1};
}

std::array<double, 2> place(const Embed& em, const Vec& x) {
  auto u = euclid(em, x);
  return {em.ox + em.scale * u[0], em.oy - em.scale * u[1]};
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string points_attr(const Embed& em, const std::vector<Vec>& pts) {
  std::string s;
  for (const Vec& p : pts) {
    auto q = place(em, p);
    if (!s.empty()) s += ' ';
    s += num(q[0]) + ',' + num(q[1]);
  }
  return s;
}

std::string line_el(const Embed& em, const Vec& a, const Vec& b, const std::string& style) {
  auto p = place(em, a);
  auto q = place(em, b);
  return "<line x1=\"" + num(p[0]) + "\" y1=\"" + num(p[1]) + "\" x2=\"" + num(q[0]) +
         "\" y2=\"" + num(q[1]) + "\" " + style + "/>\n";
}

std::string circle_el(const Embed& em, const Vec& c, double r, const std::string& style) {
  auto p = place(em, c);
  return "<circle cx=\"" + num(p[0]) + "\" cy=\"" + num(p[1]) + "\" r=\"" + num(r) + "\" " +
         style + "/>\n";
}

std::string polygon_el(const Embed& em, const std::vector<Vec>& cycle, const std::string& style) {
  return "<polygon points=\"" + points_attr(em, cycle) + "\" " + style + "/>\n";
}

// Cycle order of a 2-cell's vertex set, for polygon drawing.
std::vector<Vec> cell_cycle(const CellComplex& cx, const Cell& c) {
  std::vector<Vec> pts;
  for (int v : c.verts) pts.push_back(cx.cells[v].interior);
  return region_of(hull_of_points(cx.sys.rank, pts)).pts;
}

// A convex region drawn at the right dimension: polygon, fat segment, or dot.
std::string region_el(const Embed& em, const ConvexRegion& r, const std::string& fill,
                      double seg_width) {
  if (r.pts.empty()) return "";
  if (r.pts.size() == 1)
    return circle_el(em, r.pts[0], seg_width / 2, "fill=\"" + fill + "\" fill-opacity=\"0.6\"");
  if (r.pts.size() == 2)
    return line_el(em, r.pts[0], r.pts[1],
                   "stroke=\"" + fill + "\" stroke-width=\"" + num(seg_width) +
                       "\" stroke-opacity=\"0.6\" stroke-linecap=\"round\"");
  return polygon_el(em, r.pts,
                    "fill=\"" + fill + "\" fill-opacity=\"0.5\" stroke=\"#d99a00\" stroke-width=\"1.2\"");
}

}  // namespace

std::string render_svg(const CellComplex& cx, int sigma, const Support* sup, const Chain* chain) {
  if (cx.sys.rank > 2) throw std::runtime_error("svg rendering is limited to rank 1 and 2");
  if (sigma >= 0 && (sigma >= (int)cx.cells.size()))
    throw std::runtime_error("cell id is outside the complex");

  Embed em;
  em.rank = cx.sys.rank;
  double g00 = to_d(cx.sys.gram.at(0, 0));
  em.e00 = std::sqrt(g00);
  if (em.rank > 1) {
    double g01 = to_d(cx.sys.gram.at(0, 1));
    double g11 = to_d(cx.sys.gram.at(1, 1));
    em.e01 = g01 / em.e00;
    em.e11 = std::sqrt(g11 - g01 * g01 / g00);
  }

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Vec& v : cx.window.vertices) {
    auto u = euclid(em, v);
    xmin = std::min(xmin, u[0]);
    xmax = std::max(xmax, u[0]);
    ymin = std::min(ymin, u[1]);
    ymax = std::max(ymax, u[1]);
  }
  double margin = 45.0;
  double width = em.scale * (xmax - xmin) + 2 * margin;
  double height = em.scale * (ymax - ymin) + 2 * margin;
  em.ox = margin - em.scale * xmin;
  em.oy = margin + em.scale * ymax;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"#ffffff\"/>\n";

  ConvexRegion win = region_of(cx.window);
  if (em.rank > 1 && win.pts.size() >= 3) {
    svg += polygon_el(em, win.pts, "fill=\"#f7f7f5\" stroke=\"#c8c8c8\" stroke-width=\"1\"");
  } else if (!cx.window.vertices.empty()) {
    svg += line_el(em, cx.window.vertices.front(), cx.window.vertices.back(),
                   "stroke=\"#f0f0ee\" stroke-width=\"14\" stroke-linecap=\"round\"");
  }

  int e0 = cx.first_of_dim(1);
  for (int i = 0; i < cx.count_of_dim(1); ++i) {
    const Cell& e = cx.cells[e0 + i];
    svg += line_el(em, cx.cells[e.verts[0]].interior, cx.cells[e.verts[1]].interior,
                   "stroke=\"#9a9a9a\" stroke-width=\"1\"");
  }

  if (sup != nullptr) {
    svg += region_el(em, region_of(sup->hull), "#ffd98c", 10.0);
    for (int id : sup->cells) {
      const Cell& c = cx.cells[id];
      if (c.dim == 2) {
        svg += polygon_el(em, cell_cycle(cx, c), "fill=\"#ffc04d\" fill-opacity=\"0.4\"");
      } else if (c.dim == 1) {
        svg += line_el(em, cx.cells[c.verts[0]].interior, cx.cells[c.verts[1]].interior,
                       "stroke=\"#e07b00\" stroke-width=\"3\" stroke-linecap=\"round\"");
      } else {
        svg += circle_el(em, c.interior, 3.2, "fill=\"#b85c00\"");
      }
    }
  }

  if (sigma >= 0) {
    const Cell& c = cx.cells[sigma];
    if (c.dim == 2) {
      svg += polygon_el(em, cell_cycle(cx, c),
                        "fill=\"none\" stroke=\"#d40000\" stroke-width=\"2.5\"");
    } else if (c.dim == 1) {
      svg += line_el(em, cx.cells[c.verts[0]].interior, cx.cells[c.verts[1]].interior,
                     "stroke=\"#d40000\" stroke-width=\"4\" stroke-linecap=\"round\"");
    } else {
      svg += circle_el(em, c.interior, 5.0, "fill=\"none\" stroke=\"#d40000\" stroke-width=\"2.5\"");
    }
  }

  int v0 = cx.first_of_dim(0);
  for (int i = 0; i < cx.count_of_dim(0); ++i)
    svg += circle_el(em, cx.cells[v0 + i].interior, 2.2, "fill=\"#55504a\"");
  svg += circle_el(em, cx.center, 4.5, "fill=\"#1661c7\"");

  if (chain != nullptr) {
    for (const auto& [id, coeff] : chain->coef) {
      auto p = place(em, cx.cells[id].interior);
      double ty = em.rank > 1 ? p[1] + 4.5 : p[1] - 12.0;
      svg += "<text x=\"" + num(p[0]) + "\" y=\"" + num(ty) +
             "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"13\" "
             "text-anchor=\"middle\" fill=\"#1c1c1c\">" +
             coeff.get_str() + "</text>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace apex
