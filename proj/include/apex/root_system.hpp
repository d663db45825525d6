#pragma once
#include <string>
#include <vector>

#include "apex/linalg.hpp"
#include "apex/polytope.hpp"

namespace apex {

// Finite crystallographic root system in an explicit rational realization.
// Pairings go through the Gram matrix: <u,v> = u^T B v, and the functional of
// root i is x -> covec[i] . x with covec[i] = B * roots[i].
struct FiniteRootSystem {
  std::string label;
  int rank = 0;
  std::vector<Vec> roots;     // positives first, then negatives in the same order
  std::vector<int> positive;  // indices of the chosen positive system
  std::vector<int> simple;    // indices of the simple roots
  Mat gram;
  std::vector<Vec> covec;

  Rat pair(const Vec& u, const Vec& v) const;
  int index_of(const Vec& r) const;  // -1 if not a root
  int neg_index(int i) const;
};

FiniteRootSystem build_root_system(const std::string& label);

// Affine root a = alpha + level; grad == IMAGINARY means the constant
// functional x -> level.
constexpr int IMAGINARY = -1;
struct AffineRoot {
  int grad = IMAGINARY;
  Rat level;
};

Rat evaluate(const FiniteRootSystem& sys, const AffineRoot& a, const Vec& x);

// Affine reflection in the vanishing hyperplane of a; preserves the pairing.
// Throws for an imaginary root.
AffineMap reflection(const FiniteRootSystem& sys, const AffineRoot& a);

// a composed with g^{-1}, for a pairing-isometry g permuting the roots.
AffineRoot transform_root(const FiniteRootSystem& sys, const AffineRoot& a, const AffineMap& g);

// All affine roots alpha + n/m (n integral, alpha real) whose vanishing
// hyperplane meets the window.  Ordered by root index, then level.
std::vector<AffineRoot> affine_roots_in_window(const FiniteRootSystem& sys, long m,
                                               const Polytope& window);

}  // namespace apex
