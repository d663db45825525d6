#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "apex/rational.hpp"

namespace apex {

struct IMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Sparse integer matrix, column-major adjacency.
struct SMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Int>>> col;  // per column: (row, value), value != 0

  SMat() = default;
  SMat(int r, int c) : rows(r), cols(c), col(c) {}
  void add(int r, int c, Int v) { col[c].emplace_back(r, std::move(v)); }
  IMat dense() const;
};

struct IntSolve {
  bool solvable = false;
  std::vector<Int> particular;              // length cols when solvable
  std::vector<std::vector<Int>> kernel;     // basis of the integer kernel lattice
};

// Solve M w = z over the integers via column Hermite reduction; also returns a
// kernel lattice basis.  Dense reference route.
IntSolve solve_integer_dense(const IMat& M, const std::vector<Int>& z);

// Same contract, fast route: unit-pivot sparse elimination with a dense Hermite
// fallback for any residual core without +-1 pivots.
IntSolve solve_integer(const SMat& M, const std::vector<Int>& z);

// Nonzero diagonal entries d1 | d2 | ... of the Smith normal form.
std::vector<Int> smith_invariant_factors(IMat M);

struct RankInfo {
  int rank = 0;
  bool unit_factors = true;  // all invariant factors equal to 1
};

// Rank plus "is the image a direct summand" data, via unit-pivot elimination
// with a Smith-form fallback on the residual core.
RankInfo sparse_rank_unimodular(const SMat& M);

int integer_rank(const IMat& M);                 // exact rank over Q
int rank_mod_p(const IMat& M, uint64_t p);       // rank over F_p (lower bound for the rational rank)
int rank_mod_p(const SMat& M, uint64_t p);

}  // namespace apex
