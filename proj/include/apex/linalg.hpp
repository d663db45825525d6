#pragma once
#include <optional>
#include <string>
#include <vector>

#include "apex/rational.hpp"

namespace apex {

using Vec = std::vector<Rat>;

struct Mat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n);
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Vec vec_add(const Vec& u, const Vec& v);
Vec vec_sub(const Vec& u, const Vec& v);
Vec vec_scale(const Rat& c, const Vec& v);
Rat dot(const Vec& u, const Vec& v);  // plain coordinate dot product
bool vec_is_zero(const Vec& v);

Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_apply(const Mat& A, const Vec& x);
Mat mat_transpose(const Mat& A);
Rat mat_det(const Mat& A);          // square, exact Gaussian elimination
int mat_rank(const Mat& A);
std::optional<Mat> mat_inverse(const Mat& A);

// Solve A x = b exactly; empty optional when inconsistent.  For rectangular A a
// solution is returned whenever one exists (minimal-pivot Gaussian elimination).
std::optional<Vec> solve_linear(const Mat& A, const Vec& b);

// Invertible affine map x |-> linear*x + shift.
struct AffineMap {
  Mat linear;
  Vec shift;

  Vec apply(const Vec& x) const;
  AffineMap compose(const AffineMap& inner) const;  // this after inner
  AffineMap inverse() const;
  bool operator==(const AffineMap& o) const { return linear == o.linear && shift == o.shift; }
  bool is_identity() const;
  std::string key() const;  // canonical dedup key

  static AffineMap identity(int n);
};

// Canonical string for exact point dedup / ordering.
std::string vec_key(const Vec& v);
// Lexicographic comparison, coordinate by coordinate.
int vec_cmp(const Vec& u, const Vec& v);

}  // namespace apex
