#include <string>
#include <vector>

#include "doctest.h"

#include "apex/complex.hpp"

using namespace apex;

namespace {

CellComplex cx_of(const std::string& label, long m, const Vec& center, long radius) {
  return build_complex(build_root_system(label), m, center, radius);
}

void check_dd_zero(const CellComplex& cx) {
  for (const auto& c : cx.cells) {
    Chain b = boundary(cx, boundary_cell(cx, c.id));
    CHECK(b.coef.empty());
  }
}

}  // namespace

TEST_CASE("refined line window counts") {
  CellComplex cx = cx_of("A1", 1, {Rat(0)}, 1);
  CHECK(cx.count_of_dim(0) == 3);
  CHECK(cx.count_of_dim(1) == 2);
  CHECK(euler_characteristic(cx) == 1);
  check_dd_zero(cx);

  CellComplex half = cx_of("A1", 2, {Rat(0)}, 2);  // band [-1,1] in half steps
  CHECK(half.count_of_dim(0) == 5);
  CHECK(half.count_of_dim(1) == 4);
}

TEST_CASE("product grid counts") {
  CellComplex cx = cx_of("A1xA1", 1, {Rat(1), Rat(1)}, 1);  // [0,2]^2
  CHECK(cx.count_of_dim(0) == 9);
  CHECK(cx.count_of_dim(1) == 12);
  CHECK(cx.count_of_dim(2) == 4);
  CHECK(euler_characteristic(cx) == 1);
  check_dd_zero(cx);
}

TEST_CASE("hexagon star counts") {
  CellComplex cx = cx_of("A2", 1, {Rat(0), Rat(0)}, 1);
  CHECK(cx.count_of_dim(0) == 7);
  CHECK(cx.count_of_dim(1) == 12);
  CHECK(cx.count_of_dim(2) == 6);
  CHECK(euler_characteristic(cx) == 1);
  check_dd_zero(cx);
}

TEST_CASE("square and long root window counts") {
  CellComplex b2 = cx_of("B2", 1, {Rat(0), Rat(0)}, 1);
  CHECK(b2.count_of_dim(0) == 9);
  CHECK(b2.count_of_dim(1) == 16);
  CHECK(b2.count_of_dim(2) == 8);
  CHECK(euler_characteristic(b2) == 1);
  check_dd_zero(b2);

  CellComplex c2 = cx_of("C2", 1, {Rat(0), Rat(0)}, 1);
  CHECK(c2.count_of_dim(0) == 9);
  CHECK(c2.count_of_dim(1) == 16);
  CHECK(c2.count_of_dim(2) == 8);

  CellComplex g2 = cx_of("G2", 1, {Rat(0), Rat(0)}, 1);
  CHECK(g2.count_of_dim(2) == 12);
  CHECK(euler_characteristic(g2) == 1);
  check_dd_zero(g2);
}

TEST_CASE("refinement scales the line complex") {
  CellComplex cx = cx_of("A1", 3, {Rat(0)}, 4);  // band [-4/3, 4/3] in 1/3 steps
  CHECK(cx.count_of_dim(0) == 9);
  CHECK(cx.count_of_dim(1) == 8);
  CHECK(euler_characteristic(cx) == 1);
}

TEST_CASE("cell lookup by point") {
  CellComplex cx = cx_of("A2", 1, {Rat(0), Rat(0)}, 1);
  int v = cx.cell_at({Rat(0), Rat(0)});
  CHECK(cx.cells[(size_t)v].dim == 0);
  CHECK(v == cx.cell_at(cx.center));
  CHECK_THROWS(cx.cell_at({Rat(100), Rat(0)}));
  // a chamber barycenter resolves to that chamber
  int f0 = cx.first_of_dim(2);
  int back = cx.cell_at(cx.cells[(size_t)f0].interior);
  CHECK(back == f0);
}

TEST_CASE("edges carry one +1 and one -1 endpoint") {
  CellComplex cx = cx_of("A1xA1", 1, {Rat(0), Rat(0)}, 1);
  for (int e = cx.first_of_dim(1); e < cx.first_of_dim(1) + cx.count_of_dim(1); ++e) {
    Chain b = boundary_cell(cx, e);
    REQUIRE(b.coef.size() == 2);
    Int s = 0;
    for (const auto& [id, v] : b.coef) s += v;
    CHECK(sgn(s) == 0);
  }
}

TEST_CASE("vertices map to the augmentation class") {
  CellComplex cx = cx_of("A1", 1, {Rat(0)}, 1);
  Chain b = boundary_cell(cx, cx.cell_at({Rat(1)}));
  REQUIRE(b.coef.size() == 1);
  CHECK(b.coef.count(-1) == 1);
  CHECK(b.coef.at(-1) == 1);
}

TEST_CASE("stabilizer orders at the base vertex") {
  CHECK(stabilizer_of(cx_of("A1", 1, {Rat(0)}, 1), {Rat(0)}).size() == 2);
  CHECK(stabilizer_of(cx_of("A1", 2, {Rat(1, 2)}, 2), {Rat(1, 2)}).size() == 2);
  CHECK(stabilizer_of(cx_of("A1xA1", 1, {Rat(0), Rat(0)}, 1), {Rat(0), Rat(0)}).size() == 4);
  CHECK(stabilizer_of(cx_of("A2", 1, {Rat(0), Rat(0)}, 1), {Rat(0), Rat(0)}).size() == 6);
  CHECK(stabilizer_of(cx_of("B2", 1, {Rat(0), Rat(0)}, 1), {Rat(0), Rat(0)}).size() == 8);
  CHECK(stabilizer_of(cx_of("C2", 1, {Rat(0), Rat(0)}, 1), {Rat(0), Rat(0)}).size() == 8);
  CHECK(stabilizer_of(cx_of("G2", 1, {Rat(0), Rat(0)}, 1), {Rat(0), Rat(0)}).size() == 12);
}

TEST_CASE("stabilizer action commutes with the boundary") {
  CellComplex cx = cx_of("A2", 1, {Rat(0), Rat(0)}, 1);
  auto stab = stabilizer_of(cx, cx.center);
  int f0 = cx.first_of_dim(2);
  for (const auto& g : stab) {
    Chain sigma;
    sigma.dim = 2;
    sigma.coef[f0] = 1;
    Chain lhs = boundary(cx, chain_image(cx, g, sigma));
    Chain rhs = chain_image(cx, g, boundary(cx, sigma));
    CHECK(chain_eq(lhs, rhs));
  }
}

TEST_CASE("boundary matrices compose to zero") {
  CellComplex cx = cx_of("B2", 2, {Rat(0), Rat(0)}, 2);
  for (int d = 1; d <= cx.top_dim(); ++d) {
    SMat hi = boundary_matrix(cx, d);
    SMat lo = boundary_matrix(cx, d - 1);
    IMat h = hi.dense(), l = lo.dense();
    for (int i = 0; i < l.rows; ++i)
      for (int j = 0; j < h.cols; ++j) {
        Int s = 0;
        for (int k = 0; k < l.cols; ++k) s += l.at(i, k) * h.at(k, j);
        CHECK(sgn(s) == 0);
      }
  }
}

TEST_CASE("windows are chamber aligned and centered") {
  CellComplex cx = cx_of("G2", 2, {Rat(0), Rat(0)}, 3);
  CHECK(cx.window.contains(cx.center));
  CHECK(euler_characteristic(cx) == 1);
  for (const auto& c : cx.cells) CHECK(cx.window.contains(c.interior));
}
