#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"

#include "apex/support.hpp"

using namespace apex;

namespace {

CellComplex cx_of(const std::string& label, long m, const Vec& center, long radius) {
  return build_complex(build_root_system(label), m, center, radius);
}

bool face_closed(const CellComplex& cx, const std::vector<int>& cells) {
  std::set<int> s(cells.begin(), cells.end());
  for (int c : cells)
    for (int t : cx.faces[(size_t)c])
      if (!s.count(t)) return false;
  return true;
}

}  // namespace

TEST_CASE("support of the base vertex is the base vertex") {
  CellComplex cx = cx_of("A2", 1, {Rat(0), Rat(0)}, 1);
  int v0 = cx.cell_at(cx.center);
  Support sup = support_subcomplex(cx, v0);
  REQUIRE(sup.cells.size() == 1);
  CHECK(sup.cells[0] == v0);
  CHECK(sup.core == sup.cells);
}

TEST_CASE("support of a far half-edge on the refined line") {
  CellComplex cx = cx_of("A1", 2, {Rat(0)}, 4);  // band [-2,2], half steps
  int sigma = cx.cell_at({Rat(7, 4)});           // edge [3/2, 2]
  REQUIRE(cx.cells[(size_t)sigma].dim == 1);
  Support sup = support_subcomplex(cx, sigma);
  // all of [0,2]: vertices 0,1/2,1,3/2,2 and the four edges between
  CHECK(sup.cells.size() == 9);
  std::set<int> want;
  for (int k = 0; k <= 4; ++k) want.insert(cx.cell_at({frac(k, 2)}));
  for (int k = 0; k < 4; ++k) want.insert(cx.cell_at({Rat(2 * k + 1, 4)}));
  CHECK(std::set<int>(sup.cells.begin(), sup.cells.end()) == want);
  CHECK(face_closed(cx, sup.cells));
}

TEST_CASE("support of a grid vertex along a slope") {
  CellComplex cx = cx_of("A1xA1", 1, {Rat(0), Rat(0)}, 2);  // [-2,2]^2
  int sigma = cx.cell_at({Rat(2), Rat(1)});
  Support sup = support_subcomplex(cx, sigma);
  // segment (0,0)->(2,1) crosses two unit squares and the edge between them
  std::set<int> core_want;
  core_want.insert(cx.cell_at({Rat(0), Rat(0)}));
  core_want.insert(cx.cell_at({Rat(1, 2), Rat(1, 4)}));
  core_want.insert(cx.cell_at({Rat(1), Rat(1, 2)}));
  core_want.insert(cx.cell_at({Rat(3, 2), Rat(3, 4)}));
  core_want.insert(cx.cell_at({Rat(2), Rat(1)}));
  CHECK(std::set<int>(sup.core.begin(), sup.core.end()) == core_want);
  CHECK(sup.cells.size() == 15);
  CHECK(face_closed(cx, sup.cells));
}

TEST_CASE("witness points are exact interior hull points") {
  CellComplex cx = cx_of("A2", 1, {Rat(0), Rat(0)}, 2);
  int sigma = cx.first_of_dim(2) + cx.count_of_dim(2) / 2;
  Support sup = support_subcomplex(cx, sigma);
  REQUIRE(!sup.core.empty());
  for (int c : sup.core) {
    REQUIRE(sup.witness.count(c) == 1);
    const Vec& w = sup.witness.at(c);
    CHECK(sup.hull.contains(w));
    CHECK(cx.cell_at(w) == c);  // in the relative interior: exact sign match
  }
  for (int c : sup.cells) CHECK(cx.window.contains(cx.cells[(size_t)c].interior));
}

TEST_CASE("relint test agrees with a hand check") {
  CellComplex cx = cx_of("A1", 1, {Rat(0)}, 2);
  int sigma = cx.cell_at({Rat(2)});
  Polytope hull = cone_hull(cx, sigma);  // the segment [0,2]
  Vec w;
  CHECK(relint_meets(cx, cx.cell_at({Rat(1)}), hull, &w));
  CHECK(relint_meets(cx, cx.cell_at({Rat(3, 2)}), hull, &w));
  CHECK(!relint_meets(cx, cx.cell_at({Rat(-1)}), hull, &w));
  CHECK(!relint_meets(cx, cx.cell_at({Rat(-1, 2)}), hull, &w));
}

TEST_CASE("hull escape raises the enlarge-window error") {
  CellComplex cx = cx_of("A1", 1, {Rat(0)}, 2);
  int sigma = cx.cell_at({Rat(2)});
  CellComplex clipped = cx;
  clipped.window = make_polytope(1, {{{Rat(1)}, Rat(1)}, {{Rat(-1)}, Rat(1)}});  // |x| <= 1
  CHECK_THROWS_AS(support_subcomplex(clipped, sigma), HullEscapeError);
  CHECK_THROWS(support_subcomplex(cx, 10000));
}

TEST_CASE("acyclicity of supports and of engineered complexes") {
  CellComplex cx = cx_of("A1xA1", 1, {Rat(0), Rat(0)}, 2);
  std::vector<int> all;
  for (const auto& c : cx.cells) all.push_back(c.id);
  CHECK(is_acyclic(cx, all));

  // two isolated vertices: reduced homology in degree 0
  std::vector<int> two = {cx.cell_at({Rat(0), Rat(0)}), cx.cell_at({Rat(1), Rat(0)})};
  CHECK(!is_acyclic(cx, two));

  // the boundary ring of one square: a 1-cycle
  std::vector<int> ring;
  for (const Vec& p : std::vector<Vec>{{Rat(0), Rat(0)},
                                       {Rat(1), Rat(0)},
                                       {Rat(0), Rat(1)},
                                       {Rat(1), Rat(1)},
                                       {Rat(1, 2), Rat(0)},
                                       {Rat(1, 2), Rat(1)},
                                       {Rat(0), Rat(1, 2)},
                                       {Rat(1), Rat(1, 2)}})
    ring.push_back(cx.cell_at(p));
  CHECK(!is_acyclic(cx, ring));

  // an edge without its endpoints is not a subcomplex
  CHECK_THROWS(is_acyclic(cx, {cx.cell_at({Rat(1, 2), Rat(0)})}));

  int far = cx.cell_at({Rat(-3, 2), Rat(3, 2)});
  Support sup = support_subcomplex(cx, far);
  CHECK(is_acyclic(cx, sup.cells));
}
