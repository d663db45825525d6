#include <vector>

#include "doctest.h"

#include "apex/intmat.hpp"
#include "apex/linalg.hpp"

using namespace apex;

namespace {

IMat from_rows(const std::vector<std::vector<long>>& rows) {
  IMat m((int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = Int(rows[(size_t)i][(size_t)j]);
  return m;
}

SMat sparse_of(const IMat& m) {
  SMat s(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i)
      if (sgn(m.at(i, j)) != 0) s.add(i, j, m.at(i, j));
  return s;
}

std::vector<Int> mvmul(const IMat& m, const std::vector<Int>& x) {
  std::vector<Int> y((size_t)m.rows, Int(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) y[(size_t)i] += m.at(i, j) * x[(size_t)j];
  return y;
}

}  // namespace

TEST_CASE("rational rank and determinant") {
  Mat a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 3;
  a.at(1, 1) = 4;
  CHECK(mat_det(a) == Rat(-2));
  CHECK(mat_rank(a) == 2);
  Mat b(2, 2);
  b.at(0, 0) = 1;
  b.at(0, 1) = 2;
  b.at(1, 0) = 2;
  b.at(1, 1) = 4;
  CHECK(mat_rank(b) == 1);
  auto x = solve_linear(a, {Rat(5), Rat(11)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(2));
  CHECK(!solve_linear(b, {Rat(1), Rat(0)}).has_value());
}

TEST_CASE("smith invariant factors of a fixed matrix") {
  auto f = smith_invariant_factors(from_rows({{2, 4}, {6, 8}}));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 2);
  CHECK(f[1] == 4);
  auto id = smith_invariant_factors(from_rows({{1, 0}, {0, 1}}));
  REQUIRE(id.size() == 2);
  CHECK(id[0] == 1);
  CHECK(id[1] == 1);
  auto z = smith_invariant_factors(from_rows({{0, 0}, {0, 0}}));
  CHECK(z.empty());
}

TEST_CASE("integer solve: solvable and unsolvable") {
  IMat m = from_rows({{2}});
  auto bad = solve_integer(sparse_of(m), {Int(3)});
  CHECK(!bad.solvable);
  auto good = solve_integer(sparse_of(m), {Int(6)});
  REQUIRE(good.solvable);
  CHECK(good.particular[0] == 3);

  IMat a = from_rows({{1, 2, 0}, {0, 1, 1}});
  std::vector<Int> z = {Int(3), Int(2)};
  auto s = solve_integer(sparse_of(a), z);
  REQUIRE(s.solvable);
  CHECK(mvmul(a, s.particular) == z);
  // kernel vectors really are in the kernel
  for (const auto& k : s.kernel) {
    auto y = mvmul(a, k);
    for (const auto& e : y) CHECK(sgn(e) == 0);
  }
  CHECK(!s.kernel.empty());
}

TEST_CASE("dense and sparse integer solve agree") {
  IMat a = from_rows({{1, -1, 0, 0}, {-1, 2, -1, 3}, {0, -1, 1, -3}});
  std::vector<Int> z = {Int(0), Int(4), Int(-4)};
  auto d = solve_integer_dense(a, z);
  auto s = solve_integer(sparse_of(a), z);
  REQUIRE(d.solvable);
  REQUIRE(s.solvable);
  CHECK(mvmul(a, d.particular) == z);
  CHECK(mvmul(a, s.particular) == z);
}

TEST_CASE("rank routes agree on fixed matrices") {
  for (const auto& rows : std::vector<std::vector<std::vector<long>>>{
           {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
           {{2, 0, 0}, {0, 3, 0}, {0, 0, 0}},
           {{1, 1}, {1, -1}, {2, 0}},
       }) {
    IMat m = from_rows(rows);
    int r = integer_rank(m);
    CHECK(rank_mod_p(m, 1073741789) == r);
    CHECK(rank_mod_p(sparse_of(m), 1073741789) == r);
    CHECK(sparse_rank_unimodular(sparse_of(m)).rank == r);
  }
}

TEST_CASE("rank mod small p can drop below the rational rank") {
  IMat m = from_rows({{2}});
  CHECK(integer_rank(m) == 1);
  CHECK(rank_mod_p(m, 2) == 0);
}

TEST_CASE("unimodular image detection") {
  // identity image is a direct summand; doubled column is not
  CHECK(sparse_rank_unimodular(sparse_of(from_rows({{1, 0}, {0, 1}}))).unit_factors);
  CHECK(!sparse_rank_unimodular(sparse_of(from_rows({{2}}))).unit_factors);
}

TEST_CASE("sparse dense round trip") {
  IMat m = from_rows({{0, 2}, {-1, 0}});
  IMat back = sparse_of(m).dense();
  CHECK(back.rows == 2);
  CHECK(back.cols == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(back.at(i, j) == m.at(i, j));
}
