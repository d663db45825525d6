#include "apex/support.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace apex {

Polytope cone_hull(const CellComplex& cx, int cell) {
  std::vector<Vec> pts = {cx.center};
  for (int v : cx.cells[(size_t)cell].verts) pts.push_back(cx.cells[(size_t)v].interior);
  return hull_of_points(cx.sys.rank, pts);
}

bool relint_meets(const CellComplex& cx, int cell, const Polytope& hull, Vec* witness_out) {
  const Cell& c = cx.cells[(size_t)cell];
  ConvexRegion p = region_of(hull);
  for (size_t h = 0; h < cx.planes.size() && !p.empty(); ++h) {
    if (c.sign[h] != 0) continue;
    p = clip(p, {cx.planes[h].w, -cx.planes[h].c});
    p = clip(p, {vec_scale(Rat(-1), cx.planes[h].w), cx.planes[h].c});
  }
  std::set<size_t> facet_planes;
  for (int t : cx.faces[(size_t)cell])
    for (size_t h = 0; h < cx.planes.size(); ++h)
      if (cx.cells[(size_t)t].sign[h] == 0 && c.sign[h] != 0) facet_planes.insert(h);
  for (size_t h : facet_planes) {
    if (p.empty()) break;
    Rat s(c.sign[h]);
    p = clip(p, {vec_scale(-s, cx.planes[h].w), s * cx.planes[h].c});
  }
  if (p.empty()) return false;
  // if the clipped region lies inside a facet hyperplane it misses the
  // relative interior
  for (size_t h : facet_planes) {
    bool all_on = true;
    for (const auto& q : p.pts)
      if (sgn(dot(cx.planes[h].w, q) + cx.planes[h].c) != 0) {
        all_on = false;
        break;
      }
    if (all_on) return false;
  }
  if (witness_out) {
    Vec w(cx.sys.rank, Rat(0));
    for (const auto& q : p.pts) w = vec_add(w, q);
    *witness_out = vec_scale(Rat(1, (unsigned long)p.pts.size()), w);
  }
  return true;
}

Support support_subcomplex(const CellComplex& cx, int cell) {
  if (cell < 0 || cell >= (int)cx.cells.size())
    throw std::runtime_error("cell id is outside the complex");
  Support sup;
  sup.cell = cell;
  sup.hull = cone_hull(cx, cell);
  for (const Vec& v : sup.hull.vertices)
    if (!cx.window.contains(v))
      throw HullEscapeError("cone hull escapes the window; enlarge the window radius");
  size_t npos = cx.sys.positive.size();
  std::vector<Rat> hlo(npos), hhi(npos);
  for (size_t k = 0; k < npos; ++k) {
    const Vec& cv = cx.sys.covec[(size_t)cx.sys.positive[k]];
    for (size_t v = 0; v < sup.hull.vertices.size(); ++v) {
      Rat t = dot(cv, sup.hull.vertices[v]);
      if (v == 0 || t < hlo[k]) hlo[k] = t;
      if (v == 0 || t > hhi[k]) hhi[k] = t;
    }
  }
  std::set<int> closure;
  for (const auto& c : cx.cells) {
    bool maybe = true;
    for (size_t k = 0; k < npos && maybe; ++k) {
      const Vec& cv = cx.sys.covec[(size_t)cx.sys.positive[k]];
      Rat lo, hi;
      for (size_t v = 0; v < c.verts.size(); ++v) {
        Rat t = dot(cv, cx.cells[(size_t)c.verts[v]].interior);
        if (v == 0 || t < lo) lo = t;
        if (v == 0 || t > hi) hi = t;
      }
      if (hi < hlo[k] || hhi[k] < lo) maybe = false;
    }
    if (!maybe) continue;
    Vec w;
    if (relint_meets(cx, c.id, sup.hull, &w)) {
      sup.core.push_back(c.id);
      sup.witness[c.id] = w;
      closure.insert(c.id);
    }
  }
  std::vector<int> work(closure.begin(), closure.end());
  while (!work.empty()) {
    int s = work.back();
    work.pop_back();
    for (int t : cx.faces[(size_t)s])
      if (closure.insert(t).second) work.push_back(t);
  }
  sup.cells.assign(closure.begin(), closure.end());
  return sup;
}

bool is_acyclic(const CellComplex& cx, const std::vector<int>& cells) {
  if (cells.empty()) return false;
  std::set<int> in(cells.begin(), cells.end());
  for (int c : cells)
    for (int t : cx.faces[(size_t)c])
      if (!in.count(t)) throw std::runtime_error("subcomplex is not closed under faces");
  int top = cx.top_dim();
  std::vector<std::vector<int>> by_dim((size_t)top + 1);
  std::vector<int> local(cx.cells.size(), -1);
  for (int c : cells) {
    auto& lst = by_dim[(size_t)cx.cells[(size_t)c].dim];
    local[(size_t)c] = (int)lst.size();
    lst.push_back(c);
  }
  std::vector<int> rank((size_t)top + 2, 0);
  std::vector<bool> unit((size_t)top + 2, true);
  rank[0] = 1;  // augmentation row of ones
  for (int d = 1; d <= top; ++d) {
    SMat b((int)by_dim[(size_t)d - 1].size(), (int)by_dim[(size_t)d].size());
    for (int s : by_dim[(size_t)d])
      for (int t : cx.faces[(size_t)s])
        b.add(local[(size_t)t], local[(size_t)s], Int(incidence_sign(cx, s, t)));
    RankInfo ri = sparse_rank_unimodular(b);
    rank[(size_t)d] = ri.rank;
    unit[(size_t)d] = ri.unit_factors;
  }
  if (by_dim[0].empty()) return false;
  for (int d = 0; d <= top; ++d) {
    int n = (int)by_dim[(size_t)d].size();
    if (n - rank[(size_t)d] != rank[(size_t)d + 1]) return false;
    if (!unit[(size_t)d + 1]) return false;
  }
  return true;
}

}  // namespace apex
