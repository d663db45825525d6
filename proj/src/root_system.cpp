#include "apex/root_system.hpp"

#include <stdexcept>

namespace apex {

Rat FiniteRootSystem::pair(const Vec& u, const Vec& v) const {
  return dot(u, mat_apply(gram, v));
}

int FiniteRootSystem::index_of(const Vec& r) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (vec_cmp(roots[i], r) == 0) return (int)i;
  return -1;
}

int FiniteRootSystem::neg_index(int i) const {
  int j = index_of(vec_scale(Rat(-1), roots[(size_t)i]));
  if (j < 0) throw std::runtime_error("root system: negative of a root is missing");
  return j;
}

namespace {

FiniteRootSystem assemble(std::string label, int rank, std::vector<Vec> positives, Mat gram,
                          std::vector<int> simple) {
  FiniteRootSystem s;
  s.label = std::move(label);
  s.rank = rank;
  s.gram = std::move(gram);
  size_t np = positives.size();
  s.roots = std::move(positives);
  for (size_t i = 0; i < np; ++i) s.roots.push_back(vec_scale(Rat(-1), s.roots[i]));
  for (size_t i = 0; i < np; ++i) s.positive.push_back((int)i);
  s.simple = std::move(simple);
  for (const auto& r : s.roots) s.covec.push_back(mat_apply(s.gram, r));
  return s;
}

Vec v1(long a) { return {Rat(a)}; }
Vec v2(long a, long b) { return {Rat(a), Rat(b)}; }

}  // namespace

FiniteRootSystem build_root_system(const std::string& label) {
  Mat I1 = Mat::identity(1);
  Mat I2 = Mat::identity(2);
  if (label == "A1") return assemble(label, 1, {v1(1)}, I1, {0});
  if (label == "A1xA1") return assemble(label, 2, {v2(1, 0), v2(0, 1)}, I2, {0, 1});
  if (label == "A2") {
    Mat B(2, 2);
    B.at(0, 0) = 2;
    B.at(0, 1) = -1;
    B.at(1, 0) = -1;
    B.at(1, 1) = 2;
    return assemble(label, 2, {v2(1, 0), v2(0, 1), v2(1, 1)}, B, {0, 1});
  }
  if (label == "B2")
    return assemble(label, 2, {v2(1, -1), v2(0, 1), v2(1, 0), v2(1, 1)}, I2, {0, 1});
  if (label == "C2")
    return assemble(label, 2, {v2(1, -1), v2(0, 2), v2(1, 1), v2(2, 0)}, I2, {0, 1});
  if (label == "G2") {
    Mat B(2, 2);
    B.at(0, 0) = 2;
    B.at(0, 1) = -3;
    B.at(1, 0) = -3;
    B.at(1, 1) = 6;
    return assemble(label, 2,
                    {v2(1, 0), v2(0, 1), v2(1, 1), v2(2, 1), v2(3, 1), v2(3, 2)}, B, {0, 1});
  }
  throw std::runtime_error("unknown root system label: " + label);
}

Rat evaluate(const FiniteRootSystem& sys, const AffineRoot& a, const Vec& x) {
  if ((int)x.size() != sys.rank) throw std::runtime_error("evaluate: point dimension mismatch");
  if (a.grad == IMAGINARY) return a.level;
  return dot(sys.covec[(size_t)a.grad], x) + a.level;
}

AffineMap reflection(const FiniteRootSystem& sys, const AffineRoot& a) {
  if (a.grad == IMAGINARY) throw std::runtime_error("reflection: imaginary root has no hyperplane");
  const Vec& al = sys.roots[(size_t)a.grad];
  const Vec& cv = sys.covec[(size_t)a.grad];
  Rat c = Rat(2) / sys.pair(al, al);
  AffineMap g = AffineMap::identity(sys.rank);
  for (int i = 0; i < sys.rank; ++i) {
    for (int j = 0; j < sys.rank; ++j)
      g.linear.at(i, j) -= c * al[(size_t)i] * cv[(size_t)j];
    g.shift[(size_t)i] = -c * a.level * al[(size_t)i];
  }
  return g;
}

AffineRoot transform_root(const FiniteRootSystem& sys, const AffineRoot& a, const AffineMap& g) {
  if (a.grad == IMAGINARY) return a;
  Vec im = mat_apply(g.linear, sys.roots[(size_t)a.grad]);
  int k = sys.index_of(im);
  if (k < 0) throw std::runtime_error("transform_root: map does not permute the roots");
  return {k, a.level - dot(sys.covec[(size_t)k], g.shift)};
}

std::vector<AffineRoot> affine_roots_in_window(const FiniteRootSystem& sys, long m,
                                               const Polytope& window) {
  if (m < 1) throw std::runtime_error("refinement order must be a positive integer");
  if (window.dim != sys.rank) throw std::runtime_error("window dimension mismatch");
  std::vector<AffineRoot> out;
  if (window.empty()) return out;
  for (size_t i = 0; i < sys.roots.size(); ++i) {
    // hyperplane covec.x + n/m = 0 meets the window iff -covec.x hits n/m
    Rat lo = -dot(sys.covec[i], window.vertices[0]);
    Rat hi = lo;
    for (const auto& v : window.vertices) {
      Rat t = -dot(sys.covec[i], v);
      if (t < lo) lo = t;
      if (t > hi) hi = t;
    }
    Int nlo = rat_ceil(lo * m);
    Int nhi = rat_floor(hi * m);
    for (Int n = nlo; n <= nhi; ++n) out.push_back({(int)i, Rat(n) / m});
  }
  return out;
}

}  // namespace apex
