#include "apex/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace apex {

bool Polytope::contains(const Vec& x) const {
  for (const auto& h : ineqs)
    if (dot(h.a, x) > h.b) return false;
  return true;
}

namespace {

Vec rot90(const Vec& v) { return {v[1], -v[0]}; }

// True when some nonzero direction d satisfies a.d <= 0 for every constraint,
// i.e. the recession cone of the constraint system is nontrivial.  For an
// infeasible system this is conservative (may flag unbounded), which is fine:
// every caller builds nonempty regions.
bool has_recession_direction(int dim, const std::vector<HalfSpace>& ineqs) {
  std::vector<Vec> normals;
  for (const auto& h : ineqs)
    if (!vec_is_zero(h.a)) normals.push_back(h.a);
  if (normals.empty()) return true;
  if (dim == 1) {
    bool pos = false, neg = false;
    for (const auto& n : normals) (sgn(n[0]) > 0 ? pos : neg) = true;
    return !(pos && neg);
  }
  std::vector<Vec> cands;
  for (const auto& n : normals) {
    cands.push_back(rot90(n));
    cands.push_back(vec_scale(Rat(-1), rot90(n)));
  }
  for (const auto& d : cands) {
    bool ok = true;
    for (const auto& n : normals)
      if (sgn(dot(n, d)) > 0) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

std::vector<Vec> dedup_sort(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec& x, const Vec& y) { return vec_cmp(x, y) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& x, const Vec& y) { return vec_cmp(x, y) == 0; }),
            pts.end());
  return pts;
}

Rat cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain on deduped lex-sorted points; returns CCW cycle, or the
// collinear extremes / single point for degenerate input.
std::vector<Vec> chain_hull(std::vector<Vec> pts) {
  pts = dedup_sort(pts);
  if (pts.size() <= 2) return pts;
  if (pts[0].size() == 1) return {pts.front(), pts.back()};  // sorted interval
  std::vector<Vec> lo, hi;
  for (const auto& p : pts) {
    while (lo.size() >= 2 && sgn(cross(lo[lo.size() - 2], lo.back(), p)) <= 0) lo.pop_back();
    lo.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (hi.size() >= 2 && sgn(cross(hi[hi.size() - 2], hi.back(), *it)) <= 0) hi.pop_back();
    hi.push_back(*it);
  }
  lo.pop_back();
  hi.pop_back();
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;  // size 2 exactly when all points are collinear: the extremes
}

}  // namespace

Polytope make_polytope(int dim, std::vector<HalfSpace> ineqs) {
  if (dim < 1 || dim > 2) throw std::runtime_error("polytope: rank must be 1 or 2");
  for (const auto& h : ineqs)
    if ((int)h.a.size() != dim) throw std::runtime_error("polytope: constraint dimension mismatch");
  if (has_recession_direction(dim, ineqs))
    throw std::runtime_error("polytope: constraint region is unbounded");
  Polytope p;
  p.dim = dim;
  p.ineqs = std::move(ineqs);
  std::vector<Vec> cand;
  if (dim == 1) {
    for (const auto& h : p.ineqs)
      if (sgn(h.a[0]) != 0) cand.push_back({h.b / h.a[0]});
  } else {
    for (size_t i = 0; i < p.ineqs.size(); ++i)
      for (size_t j = i + 1; j < p.ineqs.size(); ++j) {
        const auto& u = p.ineqs[i];
        const auto& v = p.ineqs[j];
        Rat det = u.a[0] * v.a[1] - u.a[1] * v.a[0];
        if (sgn(det) == 0) continue;
        cand.push_back({(u.b * v.a[1] - u.a[1] * v.b) / det,
                        (u.a[0] * v.b - u.b * v.a[0]) / det});
      }
  }
  std::vector<Vec> verts;
  for (auto& x : cand)
    if (p.contains(x)) verts.push_back(std::move(x));
  p.vertices = dedup_sort(std::move(verts));
  return p;
}

Polytope hull_of_points(int dim, const std::vector<Vec>& pts) {
  if (dim < 1 || dim > 2) throw std::runtime_error("polytope: rank must be 1 or 2");
  Polytope p;
  p.dim = dim;
  std::vector<Vec> hull = chain_hull(pts);
  if (hull.empty()) {
    p.ineqs.push_back({Vec(dim, Rat(0)), Rat(-1)});  // infeasible marker
    return p;
  }
  if (dim == 1) {
    Vec lo = hull.front(), hi = hull.back();
    p.ineqs.push_back({{Rat(-1)}, -lo[0]});
    p.ineqs.push_back({{Rat(1)}, hi[0]});
    p.vertices = {lo};
    if (vec_cmp(lo, hi) != 0) p.vertices.push_back(hi);
    return p;
  }
  if (hull.size() == 1) {
    const Vec& q = hull[0];
    p.ineqs.push_back({{Rat(1), Rat(0)}, q[0]});
    p.ineqs.push_back({{Rat(-1), Rat(0)}, -q[0]});
    p.ineqs.push_back({{Rat(0), Rat(1)}, q[1]});
    p.ineqs.push_back({{Rat(0), Rat(-1)}, -q[1]});
    p.vertices = hull;
    return p;
  }
  if (hull.size() == 2) {
    const Vec& u = hull[0];
    const Vec& w = hull[1];
    Vec d = vec_sub(w, u);
    Vec n = rot90(d);
    p.ineqs.push_back({d, dot(d, w)});
    p.ineqs.push_back({vec_scale(Rat(-1), d), -dot(d, u)});
    p.ineqs.push_back({n, dot(n, u)});
    p.ineqs.push_back({vec_scale(Rat(-1), n), -dot(n, u)});
    p.vertices = hull;
    return p;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec& u = hull[i];
    const Vec& w = hull[(i + 1) % hull.size()];
    Vec d = vec_sub(w, u);
    Vec n = {d[1], -d[0]};  // outward for a CCW cycle
    p.ineqs.push_back({n, dot(n, u)});
  }
  p.vertices = dedup_sort(hull);
  return p;
}

ConvexRegion region_of(const Polytope& p) {
  ConvexRegion r;
  r.dim = p.dim;
  r.pts = chain_hull(p.vertices);
  return r;
}

namespace {

ConvexRegion clip_segment(const ConvexRegion& r, const HalfSpace& hs) {
  const Vec& p0 = r.pts[0];
  const Vec& p1 = r.pts[1];
  Rat s0 = dot(hs.a, p0) - hs.b;
  Rat s1 = dot(hs.a, p1) - hs.b;
  ConvexRegion out;
  out.dim = r.dim;
  if (sgn(s0) <= 0 && sgn(s1) <= 0) {
    out.pts = r.pts;
    return out;
  }
  if (sgn(s0) > 0 && sgn(s1) > 0) return out;
  Rat t = s0 / (s0 - s1);
  Vec c = vec_add(p0, vec_scale(t, vec_sub(p1, p0)));
  out.pts.push_back(sgn(s0) <= 0 ? p0 : p1);
  if (vec_cmp(out.pts[0], c) != 0) out.pts.push_back(c);
  return out;
}

}  // namespace

ConvexRegion clip(const ConvexRegion& r, const HalfSpace& hs) {
  ConvexRegion out;
  out.dim = r.dim;
  if (r.pts.empty()) return out;
  if (r.pts.size() == 1) {
    if (sgn(dot(hs.a, r.pts[0]) - hs.b) <= 0) out.pts = r.pts;
    return out;
  }
  if (r.pts.size() == 2) return clip_segment(r, hs);
  size_t n = r.pts.size();
  std::vector<Rat> s(n);
  for (size_t i = 0; i < n; ++i) s[i] = dot(hs.a, r.pts[i]) - hs.b;
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    if (sgn(s[i]) <= 0) out.pts.push_back(r.pts[i]);
    if ((sgn(s[i]) > 0 && sgn(s[j]) < 0) || (sgn(s[i]) < 0 && sgn(s[j]) > 0)) {
      Rat t = s[i] / (s[i] - s[j]);
      out.pts.push_back(vec_add(r.pts[i], vec_scale(t, vec_sub(r.pts[j], r.pts[i]))));
    }
  }
  // drop consecutive duplicates (cyclically); collapse degenerate outputs
  std::vector<Vec> ded;
  for (auto& q : out.pts)
    if (ded.empty() || vec_cmp(ded.back(), q) != 0) ded.push_back(std::move(q));
  while (ded.size() > 1 && vec_cmp(ded.front(), ded.back()) == 0) ded.pop_back();
  if (ded.size() > 2) {
    bool collinear = true;
    for (size_t i = 2; i < ded.size() && collinear; ++i)
      if (sgn(cross(ded[0], ded[1], ded[i])) != 0) collinear = false;
    if (collinear) ded = chain_hull(std::move(ded));
  }
  out.pts = std::move(ded);
  return out;
}

}  // namespace apex
