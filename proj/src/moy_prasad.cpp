#include "apex/moy_prasad.hpp"

#include <algorithm>
#include <stdexcept>

namespace apex {

namespace {

Int threshold(const Rat& v, const Rat& r, bool strict) {
  // smallest integer n with v + n > r (strict) or v + n >= r
  return strict ? rat_floor(r - v) + 1 : rat_ceil(r - v);
}

Int imaginary_threshold(const Rat& r, bool strict) {
  Int t = threshold(Rat(0), r, strict);
  return sgn(t) < 0 ? Int(0) : t;
}

}  // namespace

MPFiltration index_set(const FiniteRootSystem& sys, const Vec& x, const Rat& r, bool strict) {
  if (sgn(r) < 0) throw std::runtime_error("filtration depth must be nonnegative");
  if ((int)x.size() != sys.rank) throw std::runtime_error("index_set: point dimension mismatch");
  MPFiltration f;
  f.label = sys.label;
  f.strict = strict;
  f.t0 = imaginary_threshold(r, strict);
  for (size_t i = 0; i < sys.roots.size(); ++i)
    f.t.push_back(threshold(dot(sys.covec[i], x), r, strict));
  return f;
}

bool mp_contains(const MPFiltration& big, const MPFiltration& small) {
  if (big.label != small.label || big.t.size() != small.t.size())
    throw std::runtime_error("mp_contains: filtrations over different root systems");
  for (size_t i = 0; i < big.t.size(); ++i)
    if (big.t[i] > small.t[i]) return false;
  return big.t0 <= small.t0;
}

bool facet_constancy_check(const CellComplex& cx, const Rat& r) {
  if (sgn(r) < 0) throw std::runtime_error("filtration depth must be nonnegative");
  for (const auto& c : cx.cells) {
    // probe route: barycenter against a second interior sample
    MPFiltration fb = index_set(cx.sys, c.interior, r, true);
    Vec second = c.interior;
    if (c.dim > 0) {
      const Vec& v = cx.cells[(size_t)c.verts[0]].interior;
      second = vec_scale(Rat(1, 2), vec_add(c.interior, v));
    }
    MPFiltration fs = index_set(cx.sys, second, r, true);
    if (fb.t != fs.t || fb.t0 != fs.t0) return false;
    // exact route: no integer threshold level may cross the open cell
    for (size_t i = 0; i < cx.sys.roots.size(); ++i) {
      Rat lo, hi;
      for (size_t k = 0; k < c.verts.size(); ++k) {
        Rat v = dot(cx.sys.covec[i], cx.cells[(size_t)c.verts[k]].interior);
        if (k == 0 || v < lo) lo = v;
        if (k == 0 || v > hi) hi = v;
      }
      if (!(lo < hi)) continue;
      // integer strictly inside (r - hi, r - lo)?
      Rat b = r - lo;
      Int khi = is_integer(b) ? rat_num(b) - 1 : rat_floor(b);
      if (Rat(khi) > r - hi) return false;
    }
  }
  return true;
}

bool face_monotonicity_check(const CellComplex& cx, const Rat& r) {
  // off the refinement grid the thresholds are not even facet-constant,
  // so the containment question is ill-posed
  if (!on_grid(r, cx.m)) throw std::runtime_error("depth is off the refinement grid");
  for (const auto& c : cx.cells) {
    MPFiltration fs = index_set(cx.sys, c.interior, r, true);
    for (int t : cx.faces[(size_t)c.id]) {
      MPFiltration ft = index_set(cx.sys, cx.cells[(size_t)t].interior, r, true);
      if (!mp_contains(fs, ft)) return false;
    }
  }
  return true;
}

namespace {

// fixed generic tie-breaking direction for the positive-system choice
Vec generic_vector(int rank) {
  Vec u;
  Rat p(1);
  for (int i = 0; i < rank; ++i) {
    u.push_back(p);
    p /= 97;
  }
  return u;
}

}  // namespace

MP1Result lemma_mp1_check(const FiniteRootSystem& sys, const Vec& x, const Vec& y, const Vec& z,
                          const Rat& r) {
  if (sgn(r) <= 0) throw std::runtime_error("depth must be positive");
  // z must lie on the segment [x, y]
  Vec e = vec_sub(y, x);
  Vec f = vec_sub(z, x);
  if (vec_is_zero(e)) {
    if (!vec_is_zero(f)) throw std::runtime_error("z is not on the segment");
  } else {
    std::optional<Rat> lambda;
    for (size_t k = 0; k < e.size(); ++k)
      if (sgn(e[k]) != 0) {
        lambda = f[k] / e[k];
        break;
      }
    if (sgn(*lambda) < 0 || *lambda > 1) throw std::runtime_error("z is not on the segment");
    for (size_t k = 0; k < e.size(); ++k)
      if (f[k] != *lambda * e[k]) throw std::runtime_error("z is not on the segment");
  }
  MPFiltration fx = index_set(sys, x, r, false);
  MPFiltration fy = index_set(sys, y, r, false);
  MPFiltration fz = index_set(sys, z, r, false);
  Vec u = generic_vector(sys.rank);
  Vec d = vec_sub(x, y);
  MP1Result res;
  res.ok = fx.t0 == fz.t0 && fy.t0 == fz.t0;
  for (size_t i = 0; i < sys.roots.size(); ++i) {
    int s = sgn(dot(sys.covec[i], d));
    if (s == 0) s = sgn(dot(sys.covec[i], u));
    bool pos = s > 0;
    if (pos) res.positive.push_back((int)i);
    if (pos ? fx.t[i] > fz.t[i] : fy.t[i] > fz.t[i]) res.ok = false;
  }
  return res;
}

std::optional<MP2Witness> lemma_mp2_witness(const CellComplex& cx, int sigma, int tau,
                                            const Rat& r) {
  return lemma_mp2_witness(cx, support_subcomplex(cx, sigma), tau, r);
}

std::optional<MP2Witness> lemma_mp2_witness(const CellComplex& cx, const Support& sup, int tau,
                                            const Rat& r) {
  int sigma = sup.cell;
  if (!std::binary_search(sup.cells.begin(), sup.cells.end(), tau)) return std::nullopt;
  // smallest core cell whose closure contains tau
  const auto& tsign = cx.cells[(size_t)tau].sign;
  int rho = -1;
  for (int c : sup.core) {
    const auto& csign = cx.cells[(size_t)c].sign;
    bool dom = true;
    for (size_t h = 0; h < tsign.size() && dom; ++h)
      if (tsign[h] != 0 && tsign[h] != csign[h]) dom = false;
    if (dom) {
      rho = c;
      break;
    }
  }
  if (rho < 0) throw std::runtime_error("support member has no covering core cell");
  MP2Witness w;
  w.z = sup.witness.at(rho);
  Vec e = vec_sub(w.z, cx.center);
  if (vec_is_zero(e)) {
    w.y = cx.cells[(size_t)sigma].interior;
  } else {
    // hull exit point of the ray from the center through z
    std::optional<Rat> smax;
    for (const auto& hs : sup.hull.ineqs) {
      Rat slope = dot(hs.a, e);
      if (sgn(slope) <= 0) continue;
      Rat s = (hs.b - dot(hs.a, cx.center)) / slope;
      if (!smax || s < *smax) smax = s;
    }
    if (!smax) throw std::runtime_error("cone hull is unbounded along a ray");
    w.y = vec_add(cx.center, vec_scale(*smax, e));
  }
  // the exit point lies in the closed base cell
  const auto& ssign = cx.cells[(size_t)sigma].sign;
  std::vector<int8_t> ysign = cx.sign_of(w.y);
  for (size_t h = 0; h < ysign.size(); ++h)
    if (ysign[h] != 0 && ysign[h] != ssign[h])
      throw std::runtime_error("hull exit point missed the base cell");
  // threshold form of the factorization through (y, z)
  if (!lemma_mp1_check(cx.sys, cx.center, w.y, w.z, r).ok)
    throw std::runtime_error("segment decomposition check failed at the witness");
  MPFiltration fz = index_set(cx.sys, w.z, r, true);
  MPFiltration ftau = index_set(cx.sys, cx.cells[(size_t)tau].interior, r, true);
  if (!mp_contains(fz, ftau))
    throw std::runtime_error("witness cell does not dominate the face group");
  MPFiltration fsig = index_set(cx.sys, cx.cells[(size_t)sigma].interior, r, true);
  MPFiltration fy = index_set(cx.sys, w.y, r, true);
  if (!mp_contains(fsig, fy))
    throw std::runtime_error("base cell does not dominate the exit point group");
  return w;
}

}  // namespace apex
