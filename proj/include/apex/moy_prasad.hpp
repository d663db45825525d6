#pragma once
#include <optional>
#include <string>
#include <vector>

#include "apex/complex.hpp"
#include "apex/support.hpp"

namespace apex {

// Depth-r filtration group at a point, encoded per gradient: t[i] is the
// smallest integer level n making alpha_i + n admissible at the point
// (strictly above r, or weakly).  t0 is the imaginary (torus) threshold over
// nonnegative integer levels.
struct MPFiltration {
  std::string label;
  bool strict = false;
  std::vector<Int> t;
  Int t0 = 0;
};

MPFiltration index_set(const FiniteRootSystem& sys, const Vec& x, const Rat& r, bool strict);

// Generator-level containment: the big filtration admits every generator of
// the small one (thresholds componentwise <=).
bool mp_contains(const MPFiltration& big, const MPFiltration& small);

// Strict index sets are constant on open cells: checked by a two-sample
// probe and, independently, by the exact no-integer-threshold-crossing test
// on every cell.  Accepts any rational r >= 0 so that off-grid
// counterexamples can be exhibited.
bool facet_constancy_check(const CellComplex& cx, const Rat& r);

// For every codim-1 face pair tau < sigma: the strict group of tau is
// contained in the strict group of sigma.
bool face_monotonicity_check(const CellComplex& cx, const Rat& r);

struct MP1Result {
  bool ok = false;
  std::vector<int> positive;  // chosen positive system (root indices)
};

// Threshold form of the product decomposition for z on the segment [x,y]:
// roots larger at x are controlled by x, roots larger at y by y, imaginary
// thresholds agree.
MP1Result lemma_mp1_check(const FiniteRootSystem& sys, const Vec& x, const Vec& y, const Vec& z,
                          const Rat& r);

struct MP2Witness {
  Vec y;
  Vec z;
};

// Witness points for the face-group factorization: present exactly when tau
// lies in the support subcomplex of sigma.  The returned z is interior to a
// cell whose closure contains tau, y is the hull exit point of the ray from
// the center through z (a point of sigma); the threshold-level inclusions
// they certify are asserted internally.
std::optional<MP2Witness> lemma_mp2_witness(const CellComplex& cx, int sigma, int tau,
                                            const Rat& r);

// Same check against a support subcomplex the caller already holds.
std::optional<MP2Witness> lemma_mp2_witness(const CellComplex& cx, const Support& sup, int tau,
                                            const Rat& r);

}  // namespace apex
