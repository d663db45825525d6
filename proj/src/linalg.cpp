#include "apex/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace apex {

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

Vec vec_add(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vec_add: dimension mismatch");
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

Vec vec_sub(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vec_sub: dimension mismatch");
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

Vec vec_scale(const Rat& c, const Vec& v) {
  Vec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = c * v[i];
  return w;
}

Rat dot(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat s = 0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Rat& aik = A.at(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

Vec mat_apply(const Mat& A, const Vec& x) {
  if (A.cols != static_cast<int>(x.size())) throw std::invalid_argument("mat_apply: dimension mismatch");
  Vec y(A.rows, Rat(0));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
  return y;
}

Mat mat_transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

namespace {

// Row echelon in place; returns (rank, det of the square part if square).
std::pair<int, Rat> eliminate(Mat& M) {
  Rat det = 1;
  int rank = 0;
  for (int col = 0; col < M.cols && rank < M.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < M.rows; ++r)
      if (sgn(M.at(r, col)) != 0) { piv = r; break; }
    if (piv < 0) { det = 0; continue; }
    if (piv != rank) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(rank, j));
      det = -det;
    }
    det *= M.at(rank, col);
    for (int r = rank + 1; r < M.rows; ++r) {
      if (sgn(M.at(r, col)) == 0) continue;
      Rat f = M.at(r, col) / M.at(rank, col);
      for (int j = col; j < M.cols; ++j) M.at(r, j) -= f * M.at(rank, j);
    }
    ++rank;
  }
  if (rank < M.rows) det = 0;
  return {rank, det};
}

}  // namespace

Rat mat_det(const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("mat_det: not square");
  if (A.rows == 0) return Rat(1);
  Mat M = A;
  return eliminate(M).second;
}

int mat_rank(const Mat& A) {
  Mat M = A;
  return eliminate(M).first;
}

std::optional<Vec> solve_linear(const Mat& A, const Vec& b) {
  if (A.rows != static_cast<int>(b.size())) throw std::invalid_argument("solve_linear: dimension mismatch");
  // Augmented Gauss-Jordan.
  Mat M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, A.cols) = b[i];
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < A.cols && rank < M.rows; ++col) {
    int piv = -1;
    for (int r = rank; r < M.rows; ++r)
      if (sgn(M.at(r, col)) != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j <= A.cols; ++j) std::swap(M.at(piv, j), M.at(rank, j));
    Rat d = M.at(rank, col);
    for (int j = col; j <= A.cols; ++j) M.at(rank, j) /= d;
    for (int r = 0; r < M.rows; ++r) {
      if (r == rank || sgn(M.at(r, col)) == 0) continue;
      Rat f = M.at(r, col);
      for (int j = col; j <= A.cols; ++j) M.at(r, j) -= f * M.at(rank, j);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < M.rows; ++r)
    if (sgn(M.at(r, A.cols)) != 0) return std::nullopt;
  Vec x(A.cols, Rat(0));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = M.at(r, A.cols);
  return x;
}

std::optional<Mat> mat_inverse(const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("mat_inverse: not square");
  int n = A.rows;
  Mat inv(n, n);
  for (int c = 0; c < n; ++c) {
    Vec e(n, Rat(0));
    e[c] = 1;
    auto col = solve_linear(A, e);
    if (!col) return std::nullopt;
    for (int r = 0; r < n; ++r) inv.at(r, c) = (*col)[r];
  }
  return inv;
}

Vec AffineMap::apply(const Vec& x) const { return vec_add(mat_apply(linear, x), shift); }

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return {mat_mul(linear, inner.linear), vec_add(mat_apply(linear, inner.shift), shift)};
}

AffineMap AffineMap::inverse() const {
  auto inv = mat_inverse(linear);
  if (!inv) throw std::runtime_error("AffineMap::inverse: singular linear part");
  return {*inv, vec_scale(Rat(-1), mat_apply(*inv, shift))};
}

bool AffineMap::is_identity() const {
  if (!vec_is_zero(shift)) return false;
  return linear == Mat::identity(linear.rows);
}

AffineMap AffineMap::identity(int n) { return {Mat::identity(n), Vec(n, Rat(0))}; }

std::string AffineMap::key() const {
  std::ostringstream os;
  for (const auto& q : linear.a) os << rat_str(q) << ',';
  os << '|';
  for (const auto& q : shift) os << rat_str(q) << ',';
  return os.str();
}

std::string vec_key(const Vec& v) {
  std::ostringstream os;
  for (const auto& q : v) os << rat_str(q) << ',';
  return os.str();
}

int vec_cmp(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vec_cmp: dimension mismatch");
  for (size_t i = 0; i < u.size(); ++i) {
    int c = cmp(u[i], v[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace apex
