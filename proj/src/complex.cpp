#include "apex/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace apex {

Hyperplane canonical_plane(Vec w, Rat c) {
  // normalize by the gradient alone, so parallel planes share one primitive
  // direction and c carries the level
  if (vec_is_zero(w)) throw std::runtime_error("hyperplane: zero gradient");
  Int l(1);
  auto fold_den = [&l](const Rat& q) {
    Int d = rat_den(q);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  };
  for (const auto& e : w) fold_den(e);
  Int g(0);
  auto fold_gcd = [&g, &l](const Rat& q) {
    Int n = rat_num(q * Rat(l));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  };
  for (const auto& e : w) fold_gcd(e);
  Rat scale = Rat(l) / Rat(g);
  for (auto& e : w) e *= scale;
  c *= scale;
  for (const auto& e : w) {
    if (sgn(e) == 0) continue;
    if (sgn(e) < 0) {
      for (auto& f : w) f = -f;
      c = -c;
    }
    break;
  }
  return {std::move(w), std::move(c)};
}

std::string plane_key(const Hyperplane& h) {
  std::ostringstream os;
  for (const auto& e : h.w) os << rat_str(e) << ';';
  os << rat_str(h.c);
  return os.str();
}

int CellComplex::count_of_dim(int d) const {
  if (d < 0 || d > top_dim()) return 0;
  return dim_begin[(size_t)d + 1] - dim_begin[(size_t)d];
}

int CellComplex::first_of_dim(int d) const { return dim_begin[(size_t)d]; }

std::string CellComplex::sign_key(const std::vector<int8_t>& s) const {
  std::string k(s.size(), '0');
  for (size_t i = 0; i < s.size(); ++i) k[i] = s[i] == 0 ? '0' : (s[i] > 0 ? '+' : '-');
  return k;
}

std::vector<int8_t> CellComplex::sign_of(const Vec& x) const {
  std::vector<int8_t> s(planes.size());
  for (size_t i = 0; i < planes.size(); ++i)
    s[i] = (int8_t)sgn(dot(planes[i].w, x) + planes[i].c);
  return s;
}

int CellComplex::cell_at(const Vec& x) const {
  auto it = by_sign.find(sign_key(sign_of(x)));
  if (it == by_sign.end()) throw std::runtime_error("point is not in the window");
  return it->second;
}

Polytope build_window(const FiniteRootSystem& sys, long m, const Vec& center, long radius) {
  if (m < 1) throw std::runtime_error("refinement order must be a positive integer");
  if (radius < 1) throw std::runtime_error("window radius must be at least 1");
  if ((int)center.size() != sys.rank) throw std::runtime_error("center dimension mismatch");
  std::vector<HalfSpace> hs;
  for (int i : sys.positive) {
    const Vec& cv = sys.covec[(size_t)i];
    Rat t = dot(cv, center);
    Rat lo = Rat(rat_floor(t * m - radius)) / m;
    Rat hi = Rat(rat_ceil(t * m + radius)) / m;
    hs.push_back({cv, hi});
    hs.push_back({vec_scale(Rat(-1), cv), -lo});
  }
  Polytope w = make_polytope(sys.rank, std::move(hs));
  if (!w.contains(center)) throw std::runtime_error("window does not contain its center");
  return w;
}

namespace {

Vec rot90(const Vec& v) { return {v[1], -v[0]}; }

bool dominates(const std::vector<int8_t>& face, const std::vector<int8_t>& cell) {
  for (size_t i = 0; i < face.size(); ++i)
    if (face[i] != 0 && face[i] != cell[i]) return false;
  return true;
}

struct Proto {
  int dim;
  std::vector<int8_t> sign;
  Vec probe;
};

}  // namespace

CellComplex build_complex(const FiniteRootSystem& sys, long m, const Vec& center, long radius) {
  CellComplex cx;
  cx.sys = sys;
  cx.m = m;
  cx.center = center;
  cx.radius = radius;
  cx.window = build_window(sys, m, center, radius);

  std::map<std::string, Hyperplane> uniq;
  for (const auto& a : affine_roots_in_window(sys, m, cx.window)) {
    Hyperplane h = canonical_plane(sys.covec[(size_t)a.grad], a.level);
    uniq.emplace(plane_key(h), h);
  }
  for (auto& [k, h] : uniq) cx.planes.push_back(h);
  std::sort(cx.planes.begin(), cx.planes.end(), [](const Hyperplane& x, const Hyperplane& y) {
    int c = vec_cmp(x.w, y.w);
    if (c != 0) return c < 0;
    return cmp(x.c, y.c) < 0;
  });

  // chamber alignment: every window facet must lie on a root hyperplane of
  // level n/m
  for (const auto& hsc : cx.window.ineqs) {
    Hyperplane h = canonical_plane(hsc.a, -hsc.b);
    bool ok = false;
    for (size_t i = 0; i < sys.roots.size() && !ok; ++i) {
      Hyperplane dir = canonical_plane(sys.covec[i], Rat(0));
      if (vec_cmp(dir.w, h.w) != 0) continue;
      // level of the facet in the alpha_i normalization
      Rat lam;
      for (size_t k = 0; k < h.w.size(); ++k)
        if (sgn(sys.covec[i][k]) != 0) {
          lam = h.w[k] / sys.covec[i][k];
          break;
        }
      if (on_grid(h.c / lam, m)) ok = true;
    }
    if (!ok) throw std::runtime_error("window is not chamber-aligned");
  }

  int np = (int)cx.planes.size();
  auto sign_at = [&](const Vec& x) { return cx.sign_of(x); };

  // vertices
  std::map<std::string, Vec> vset;
  if (sys.rank == 1) {
    for (const auto& h : cx.planes) {
      Vec p = {-h.c / h.w[0]};
      if (cx.window.contains(p)) vset.emplace(vec_key(p), p);
    }
  } else {
    for (int i = 0; i < np; ++i)
      for (int j = i + 1; j < np; ++j) {
        const auto& u = cx.planes[(size_t)i];
        const auto& v = cx.planes[(size_t)j];
        Rat det = u.w[0] * v.w[1] - u.w[1] * v.w[0];
        if (sgn(det) == 0) continue;
        Vec p = {(-u.c * v.w[1] + u.w[1] * v.c) / det, (-u.w[0] * v.c + u.c * v.w[0]) / det};
        if (cx.window.contains(p)) vset.emplace(vec_key(p), p);
      }
  }
  std::vector<Proto> protos;
  std::vector<Vec> vcoords;
  for (auto& [k, p] : vset) {
    protos.push_back({0, sign_at(p), p});
    vcoords.push_back(p);
  }
  if (vcoords.empty()) throw std::runtime_error("window contains no arrangement vertex");

  // edges: consecutive vertices along each hyperplane (whole line in rank 1)
  size_t nverts = vcoords.size();
  auto push_edges = [&](std::vector<Vec> on_line, const Vec& dir) {
    std::sort(on_line.begin(), on_line.end(),
              [&](const Vec& a, const Vec& b) { return cmp(dot(dir, a), dot(dir, b)) < 0; });
    for (size_t t = 0; t + 1 < on_line.size(); ++t) {
      Vec mid = vec_scale(Rat(1, 2), vec_add(on_line[t], on_line[t + 1]));
      protos.push_back({1, sign_at(mid), mid});
    }
  };
  if (sys.rank == 1) {
    push_edges(vcoords, {Rat(1)});
  } else {
    for (int i = 0; i < np; ++i) {
      std::vector<Vec> on_line;
      for (size_t v = 0; v < nverts; ++v)
        if (protos[v].sign[(size_t)i] == 0) on_line.push_back(vcoords[v]);
      push_edges(std::move(on_line), rot90(cx.planes[(size_t)i].w));
    }
  }

  // chambers: probe just off each side of every edge
  if (sys.rank == 2) {
    std::map<std::string, Proto> chambers;
    for (size_t e = nverts; e < protos.size(); ++e) {
      int own = -1;
      for (int i = 0; i < np; ++i)
        if (protos[e].sign[(size_t)i] == 0) {
          if (own >= 0) throw std::runtime_error("edge interior lies on two hyperplanes");
          own = i;
        }
      if (own < 0) throw std::runtime_error("edge interior lies on no hyperplane");
      const Vec& n = cx.planes[(size_t)own].w;
      const Vec& mid = protos[e].probe;
      for (int s : {1, -1}) {
        Rat delta(2);
        bool first = true;
        for (int i = 0; i < np; ++i) {
          Rat slope = Rat(s) * dot(cx.planes[(size_t)i].w, n);
          if (sgn(slope) == 0) continue;
          Rat t = -(dot(cx.planes[(size_t)i].w, mid) + cx.planes[(size_t)i].c) / slope;
          if (sgn(t) > 0 && (first || t < delta)) {
            delta = t;
            first = false;
          }
        }
        for (const auto& hsc : cx.window.ineqs) {
          Rat slope = Rat(s) * dot(hsc.a, n);
          if (sgn(slope) == 0) continue;
          Rat t = (hsc.b - dot(hsc.a, mid)) / slope;
          if (sgn(t) > 0 && (first || t < delta)) {
            delta = t;
            first = false;
          }
        }
        Vec q = vec_add(mid, vec_scale(delta / 2 * s, n));
        if (!cx.window.contains(q)) continue;
        Proto p{2, sign_at(q), q};
        chambers.emplace(cx.sign_key(p.sign), p);
      }
    }
    for (auto& [k, p] : chambers) protos.push_back(p);
  }

  // assemble cells sorted by (dim, sign)
  std::sort(protos.begin(), protos.end(), [&](const Proto& a, const Proto& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return cx.sign_key(a.sign) < cx.sign_key(b.sign);
  });
  cx.dim_begin.assign((size_t)cx.top_dim() + 2, 0);
  for (const auto& p : protos) cx.dim_begin[(size_t)p.dim + 1]++;
  for (size_t d = 1; d < cx.dim_begin.size(); ++d) cx.dim_begin[d] += cx.dim_begin[d - 1];
  for (size_t i = 0; i < protos.size(); ++i) {
    Cell c;
    c.id = (int)i;
    c.dim = protos[i].dim;
    c.sign = protos[i].sign;
    c.interior = protos[i].probe;
    cx.cells.push_back(std::move(c));
    if (!cx.by_sign.emplace(cx.sign_key(protos[i].sign), (int)i).second)
      throw std::runtime_error("duplicate cell sign vector");
  }

  // closure vertex lists, then canonical interior points (barycenters)
  int nv = cx.count_of_dim(0);
  for (auto& c : cx.cells) {
    for (int v = 0; v < nv; ++v)
      if (dominates(cx.cells[(size_t)v].sign, c.sign)) c.verts.push_back(v);
    if (c.verts.empty()) throw std::runtime_error("cell has no vertices");
    Vec b(cx.sys.rank, Rat(0));
    for (int v : c.verts) b = vec_add(b, cx.cells[(size_t)v].interior);
    c.interior = vec_scale(Rat(1, (unsigned long)c.verts.size()), b);
  }

  // codim-1 incidences
  cx.faces.assign(cx.cells.size(), {});
  cx.cofaces.assign(cx.cells.size(), {});
  for (int d = 1; d <= cx.top_dim(); ++d)
    for (int s = cx.first_of_dim(d); s < cx.first_of_dim(d) + cx.count_of_dim(d); ++s)
      for (int t = cx.first_of_dim(d - 1); t < cx.first_of_dim(d - 1) + cx.count_of_dim(d - 1);
           ++t)
        if (dominates(cx.cells[(size_t)t].sign, cx.cells[(size_t)s].sign)) {
          cx.faces[(size_t)s].push_back(t);
          cx.cofaces[(size_t)t].push_back(s);
        }
  for (int e = cx.first_of_dim(1); e < cx.first_of_dim(1) + cx.count_of_dim(1); ++e)
    if (cx.faces[(size_t)e].size() != 2)
      throw std::runtime_error("edge does not have exactly two endpoints");
  return cx;
}

namespace {

// Oriented frame: differences from the lex-least vertex toward the next
// lex-ordered affinely independent vertices.
Mat frame_of(const CellComplex& cx, int cell) {
  const Cell& c = cx.cells[(size_t)cell];
  std::vector<Vec> pts;
  for (int v : c.verts) pts.push_back(cx.cells[(size_t)v].interior);
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return vec_cmp(a, b) < 0; });
  int n = cx.sys.rank;
  Mat f(n, c.dim);
  int got = 0;
  for (size_t i = 1; i < pts.size() && got < c.dim; ++i) {
    Vec u = vec_sub(pts[i], pts[0]);
    Mat trial(n, got + 1);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < got; ++k) trial.at(r, k) = f.at(r, k);
      trial.at(r, got) = u[(size_t)r];
    }
    if (mat_rank(trial) == got + 1) {
      for (int r = 0; r < n; ++r) f.at(r, got) = u[(size_t)r];
      ++got;
    }
  }
  if (got != c.dim) throw std::runtime_error("cell vertices do not span its dimension");
  return f;
}

Vec coords_in(const Mat& f, const Vec& v) {
  auto x = solve_linear(f, v);
  if (!x) throw std::runtime_error("vector is outside the cell frame span");
  return *x;
}

}  // namespace

int incidence_sign(const CellComplex& cx, int sigma, int tau) {
  const auto& fl = cx.faces[(size_t)sigma];
  if (std::find(fl.begin(), fl.end(), tau) == fl.end()) return 0;
  int d = cx.cells[(size_t)sigma].dim;
  Mat fs = frame_of(cx, sigma);
  Mat m(d, d);
  Vec u = coords_in(fs, vec_sub(cx.cells[(size_t)tau].interior, cx.cells[(size_t)sigma].interior));
  for (int r = 0; r < d; ++r) m.at(r, 0) = u[(size_t)r];
  if (d > 1) {
    Mat ft = frame_of(cx, tau);
    for (int k = 0; k + 1 < d; ++k) {
      Vec col((size_t)cx.sys.rank);
      for (int r = 0; r < cx.sys.rank; ++r) col[(size_t)r] = ft.at(r, k);
      Vec cc = coords_in(fs, col);
      for (int r = 0; r < d; ++r) m.at(r, k + 1) = cc[(size_t)r];
    }
  }
  int s = sgn(mat_det(m));
  if (s == 0) throw std::runtime_error("degenerate incidence frame");
  return s;
}

SMat boundary_matrix(const CellComplex& cx, int d) {
  if (d == 0) {
    SMat b(1, cx.count_of_dim(0));
    for (int j = 0; j < b.cols; ++j) b.add(0, j, Int(1));
    return b;
  }
  SMat b(cx.count_of_dim(d - 1), cx.count_of_dim(d));
  int f0 = cx.first_of_dim(d);
  int g0 = cx.first_of_dim(d - 1);
  for (int j = 0; j < b.cols; ++j)
    for (int t : cx.faces[(size_t)(f0 + j)])
      b.add(t - g0, j, Int(incidence_sign(cx, f0 + j, t)));
  return b;
}

Chain boundary_cell(const CellComplex& cx, int cell) {
  Chain z;
  z.dim = cx.cells[(size_t)cell].dim - 1;
  if (z.dim < 0) {
    z.coef[-1] = 1;  // augmentation: every vertex maps to the empty cell
    return z;
  }
  for (int t : cx.faces[(size_t)cell]) z.coef[t] = incidence_sign(cx, cell, t);
  return z;
}

Chain boundary(const CellComplex& cx, const Chain& z) {
  Chain out;
  out.dim = z.dim - 1;
  if (z.dim < 0) return out;
  for (const auto& [cell, co] : z.coef) {
    Chain b = boundary_cell(cx, cell);
    for (const auto& [t, e] : b.coef) out.coef[t] += co * e;
  }
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = sgn(it->second) == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

bool chain_eq(const Chain& a, const Chain& b) {
  auto strip = [](const Chain& z) {
    std::map<int, Int> m;
    for (const auto& [c, v] : z.coef)
      if (sgn(v) != 0) m[c] = v;
    return m;
  };
  return a.dim == b.dim && strip(a) == strip(b);
}

int cell_image(const CellComplex& cx, const AffineMap& g, int cell) {
  Vec y = g.apply(cx.cells[(size_t)cell].interior);
  auto it = cx.by_sign.find(cx.sign_key(cx.sign_of(y)));
  if (it == cx.by_sign.end()) throw std::runtime_error("map does not preserve the complex");
  if (cx.cells[(size_t)it->second].dim != cx.cells[(size_t)cell].dim)
    throw std::runtime_error("map does not preserve cell dimension");
  return it->second;
}

namespace {

// Orientation twist of g on a cell: compare mapped frame with the image frame.
int action_sign(const CellComplex& cx, const AffineMap& g, int cell, int image) {
  int d = cx.cells[(size_t)cell].dim;
  if (d == 0) return 1;
  Mat fs = frame_of(cx, cell);
  Mat fi = frame_of(cx, image);
  Mat m(d, d);
  for (int k = 0; k < d; ++k) {
    Vec col((size_t)cx.sys.rank);
    for (int r = 0; r < cx.sys.rank; ++r) col[(size_t)r] = fs.at(r, k);
    Vec cc = coords_in(fi, mat_apply(g.linear, col));
    for (int r = 0; r < d; ++r) m.at(r, k) = cc[(size_t)r];
  }
  int s = sgn(mat_det(m));
  if (s == 0) throw std::runtime_error("degenerate action frame");
  return s;
}

}  // namespace

Chain chain_image(const CellComplex& cx, const AffineMap& g, const Chain& z) {
  Chain out;
  out.dim = z.dim;
  if (z.dim < 0) {
    out.coef = z.coef;  // the empty cell is fixed
    return out;
  }
  for (const auto& [cell, co] : z.coef) {
    if (sgn(co) == 0) continue;
    int im = cell_image(cx, g, cell);
    out.coef[im] += co * action_sign(cx, g, cell, im);
  }
  return out;
}

std::vector<AffineMap> stabilizer_of(const CellComplex& cx, const Vec& point) {
  Mat binv = mat_inverse(cx.sys.gram).value();  // gram pairings are nonsingular
  std::vector<AffineMap> gens;
  for (const auto& h : cx.planes) {
    if (sgn(dot(h.w, point) + h.c) != 0) continue;
    Vec d = mat_apply(binv, h.w);
    Rat c = Rat(2) / dot(h.w, d);
    AffineMap g = AffineMap::identity(cx.sys.rank);
    for (int i = 0; i < cx.sys.rank; ++i) {
      for (int j = 0; j < cx.sys.rank; ++j) g.linear.at(i, j) -= c * d[(size_t)i] * h.w[(size_t)j];
      g.shift[(size_t)i] = -c * h.c * d[(size_t)i];
    }
    gens.push_back(std::move(g));
  }
  std::map<std::string, AffineMap> closure;
  AffineMap id = AffineMap::identity(cx.sys.rank);
  closure.emplace(id.key(), id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<AffineMap> snapshot;
    for (auto& [k, g] : closure) snapshot.push_back(g);
    for (const auto& a : snapshot)
      for (const auto& r : gens) {
        AffineMap p = a.compose(r);
        if (closure.emplace(p.key(), p).second) grew = true;
      }
    if (closure.size() > 100000) throw std::runtime_error("stabilizer closure did not terminate");
  }
  std::vector<AffineMap> out;
  for (auto& [k, g] : closure) out.push_back(g);
  return out;
}

long euler_characteristic(const CellComplex& cx) {
  long chi = 0;
  for (int d = 0; d <= cx.top_dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * (long)cx.count_of_dim(d);
  return chi;
}

}  // namespace apex
