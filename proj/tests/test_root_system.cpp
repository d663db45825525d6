#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "apex/complex.hpp"
#include "apex/root_system.hpp"

using namespace apex;

namespace {
const std::vector<std::pair<std::string, size_t>> kCounts = {
    {"A1", 2}, {"A1xA1", 4}, {"A2", 6}, {"B2", 8}, {"C2", 8}, {"G2", 12}};
}

TEST_CASE("root counts per type") {
  for (const auto& [label, n] : kCounts) {
    FiniteRootSystem sys = build_root_system(label);
    CHECK(sys.roots.size() == n);
    CHECK(sys.positive.size() == n / 2);
    CHECK(sys.covec.size() == n);
  }
  CHECK_THROWS(build_root_system("E8"));
}

TEST_CASE("negatives mirror positives and covectors match the pairing") {
  for (const auto& [label, n] : kCounts) {
    FiniteRootSystem sys = build_root_system(label);
    for (size_t i = 0; i < sys.roots.size(); ++i) {
      int j = sys.neg_index((int)i);
      CHECK(vec_cmp(sys.roots[(size_t)j], vec_scale(Rat(-1), sys.roots[i])) == 0);
      // covec[i].x equals <root_i, x> for a sample point
      Vec x(sys.roots[i].size(), Rat(1, 3));
      if (x.size() > 1) x[1] = Rat(-2, 5);
      CHECK(dot(sys.covec[i], x) == sys.pair(sys.roots[i], x));
    }
  }
}

TEST_CASE("cartan integrality and reflection closure") {
  for (const auto& [label, n] : kCounts) {
    FiniteRootSystem sys = build_root_system(label);
    for (const Vec& a : sys.roots)
      for (const Vec& b : sys.roots) {
        Rat c = Rat(2) * sys.pair(a, b) / sys.pair(b, b);
        CHECK(is_integer(c));
        // s_b(a) = a - <a,b^v> b stays a root
        Vec img = vec_sub(a, vec_scale(c, b));
        CHECK(sys.index_of(img) >= 0);
      }
  }
}

TEST_CASE("affine reflection on the refined line") {
  FiniteRootSystem sys = build_root_system("A1");
  // a = alpha + 1 vanishes at x = -1: reflection x -> -x - 2
  AffineMap g = reflection(sys, {0, Rat(1)});
  CHECK(g.apply({Rat(0)})[0] == Rat(-2));
  CHECK(g.apply({Rat(-1)})[0] == Rat(-1));
  CHECK(g.compose(g).is_identity());
  CHECK_THROWS(reflection(sys, {IMAGINARY, Rat(1)}));
}

TEST_CASE("reflections are pairing isometries") {
  for (const std::string& label : {"A2", "B2", "G2"}) {
    FiniteRootSystem sys = build_root_system(label);
    AffineMap g = reflection(sys, {1, Rat(1, 2)});
    Vec u = {Rat(1), Rat(2)};
    Vec v = {Rat(-1, 3), Rat(1)};
    Vec gu = vec_sub(g.apply(u), g.apply(Vec(2, Rat(0))));
    Vec gv = vec_sub(g.apply(v), g.apply(Vec(2, Rat(0))));
    CHECK(sys.pair(gu, gv) == sys.pair(u, v));
  }
}

TEST_CASE("transform of an affine root tracks the reflection") {
  FiniteRootSystem sys = build_root_system("A2");
  AffineMap g = reflection(sys, {0, Rat(0)});
  AffineRoot a{2, Rat(1, 2)};
  AffineRoot b = transform_root(sys, a, g);
  Vec x = {Rat(1, 5), Rat(2, 7)};
  CHECK(evaluate(sys, b, x) == evaluate(sys, a, g.inverse().apply(x)));
  AffineRoot im = transform_root(sys, {IMAGINARY, Rat(2)}, g);
  CHECK(im.grad == IMAGINARY);
  CHECK(im.level == Rat(2));
}

TEST_CASE("affine roots meeting a window") {
  FiniteRootSystem sys = build_root_system("A1");
  Polytope w = build_window(sys, 1, {Rat(0)}, 2);  // |x| <= 2
  auto roots = affine_roots_in_window(sys, 1, w);
  // per root direction the levels -2..2 vanish inside the window
  CHECK(roots.size() == 10);
  std::set<std::string> keys;
  for (const auto& a : roots) {
    CHECK(a.grad != IMAGINARY);
    keys.insert(plane_key(canonical_plane(sys.covec[(size_t)a.grad], a.level)));
  }
  CHECK(keys.size() == 5);  // +-alpha give the same wall

  auto refined = affine_roots_in_window(sys, 2, w);
  CHECK(refined.size() == 18);  // levels at half-integers: -2,-3/2,...,2
}
