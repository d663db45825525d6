#include "apex/intmat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "apex/linalg.hpp"

namespace apex {

IMat SMat::dense() const {
  IMat D(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : col[c]) D.at(r, c) += v;
  return D;
}

namespace {

// Column Hermite reduction M*U = H with U unimodular.  H ends up in column
// echelon form: each pivot column has zeros above its pivot row, and all
// columns past the rank are identically zero.
struct ColEchelon {
  IMat H;
  IMat U;
  std::vector<std::pair<int, int>> pivots;  // (row, col) in ascending row order
};

ColEchelon column_echelon(const IMat& M) {
  ColEchelon E;
  E.H = M;
  E.U = IMat(M.cols, M.cols);
  for (int i = 0; i < M.cols; ++i) E.U.at(i, i) = 1;
  IMat& H = E.H;
  IMat& U = E.U;

  auto col_op = [&](int dst, int src, const Int& f) {  // col_dst -= f * col_src
    for (int r = 0; r < H.rows; ++r) H.at(r, dst) -= f * H.at(r, src);
    for (int r = 0; r < U.rows; ++r) U.at(r, dst) -= f * U.at(r, src);
  };
  auto col_swap = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < H.rows; ++r) std::swap(H.at(r, a), H.at(r, b));
    for (int r = 0; r < U.rows; ++r) std::swap(U.at(r, a), U.at(r, b));
  };

  int k = 0;
  for (int row = 0; row < M.rows && k < M.cols; ++row) {
    // gcd-reduce this row across columns >= k until at most one nonzero survives
    while (true) {
      int best = -1;
      for (int j = k; j < M.cols; ++j)
        if (sgn(H.at(row, j)) != 0 && (best < 0 || int_abs(H.at(row, j)) < int_abs(H.at(row, best))))
          best = j;
      if (best < 0) break;
      bool others = false;
      for (int j = k; j < M.cols; ++j) {
        if (j == best || sgn(H.at(row, j)) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H.at(row, j).get_mpz_t(), H.at(row, best).get_mpz_t());
        col_op(j, best, q);
        if (sgn(H.at(row, j)) != 0) others = true;
      }
      if (!others) {
        col_swap(k, best);
        if (sgn(H.at(row, k)) < 0) {
          for (int r = 0; r < H.rows; ++r) H.at(r, k) = -H.at(r, k);
          for (int r = 0; r < U.rows; ++r) U.at(r, k) = -U.at(r, k);
        }
        E.pivots.emplace_back(row, k);
        ++k;
        break;
      }
    }
  }
  return E;
}

}  // namespace

IntSolve solve_integer_dense(const IMat& M, const std::vector<Int>& z) {
  if (static_cast<int>(z.size()) != M.rows) throw std::invalid_argument("solve_integer_dense: size mismatch");
  ColEchelon E = column_echelon(M);
  int rank = static_cast<int>(E.pivots.size());

  IntSolve out;
  // forward substitution over the pivot columns
  std::vector<Int> resid = z;
  std::vector<Int> y(M.cols, Int(0));
  for (int t = 0; t < rank; ++t) {
    auto [pr, pc] = E.pivots[t];
    if (sgn(resid[pr]) == 0) continue;
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), resid[pr].get_mpz_t(), E.H.at(pr, pc).get_mpz_t());
    if (sgn(r) != 0) return out;  // not divisible -> no integer solution
    y[pc] = q;
    for (int i = 0; i < M.rows; ++i) resid[i] -= q * E.H.at(i, pc);
  }
  for (const auto& v : resid)
    if (sgn(v) != 0) return out;

  out.solvable = true;
  out.particular.assign(M.cols, Int(0));
  for (int i = 0; i < M.cols; ++i)
    for (int j = 0; j < M.cols; ++j)
      if (sgn(y[j]) != 0) out.particular[i] += E.U.at(i, j) * y[j];
  for (int j = rank; j < M.cols; ++j) {
    std::vector<Int> k(M.cols);
    for (int i = 0; i < M.cols; ++i) k[i] = E.U.at(i, j);
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::vector<Int> smith_invariant_factors(IMat M) {
  std::vector<Int> factors;
  int top = 0;
  while (top < M.rows && top < M.cols) {
    // find the minimal nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = top; i < M.rows; ++i)
      for (int j = top; j < M.cols; ++j)
        if (sgn(M.at(i, j)) != 0 &&
            (pi < 0 || int_abs(M.at(i, j)) < int_abs(M.at(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    for (int j = top; j < M.cols; ++j) std::swap(M.at(pi, j), M.at(top, j));
    for (int i = top; i < M.rows; ++i) std::swap(M.at(i, pj), M.at(i, top));

    bool clean = true;
    for (int i = top + 1; i < M.rows && clean; ++i) {
      if (sgn(M.at(i, top)) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), M.at(i, top).get_mpz_t(), M.at(top, top).get_mpz_t());
      for (int j = top; j < M.cols; ++j) M.at(i, j) -= q * M.at(top, j);
      if (sgn(M.at(i, top)) != 0) clean = false;
    }
    if (!clean) continue;
    for (int j = top + 1; j < M.cols && clean; ++j) {
      if (sgn(M.at(top, j)) == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), M.at(top, j).get_mpz_t(), M.at(top, top).get_mpz_t());
      for (int i = top; i < M.rows; ++i) M.at(i, j) -= q * M.at(i, top);
      if (sgn(M.at(top, j)) != 0) clean = false;
    }
    if (!clean) continue;
    // divisibility sweep: the pivot must divide everything below-right
    bool divides = true;
    for (int i = top + 1; i < M.rows && divides; ++i)
      for (int j = top + 1; j < M.cols && divides; ++j) {
        if (sgn(M.at(i, j)) == 0) continue;
        Int r;
        mpz_tdiv_r(r.get_mpz_t(), M.at(i, j).get_mpz_t(), M.at(top, top).get_mpz_t());
        if (sgn(r) != 0) {
          for (int jj = top; jj < M.cols; ++jj) M.at(top, jj) += M.at(i, jj);
          divides = false;
        }
      }
    if (!divides) continue;
    factors.push_back(int_abs(M.at(top, top)));
    ++top;
  }
  return factors;
}

namespace {

// Shared unit-pivot elimination used by the sparse solver and the rank check.
// Rows are kept as maps col->value; z (when present) is carried along.
struct SparseElim {
  std::vector<std::map<int, Int>> rows;
  std::vector<std::set<int>> col_rows;
  std::vector<bool> row_pivoted, col_pivoted;
  std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
  std::vector<Int> z;
  bool with_z = false;

  void init(const SMat& M, const std::vector<Int>* rhs) {
    rows.assign(M.rows, {});
    col_rows.assign(M.cols, {});
    for (int c = 0; c < M.cols; ++c)
      for (const auto& [r, v] : M.col[c]) {
        auto& cell = rows[r][c];
        cell += v;
        if (sgn(cell) == 0) rows[r].erase(c);
      }
    for (int r = 0; r < M.rows; ++r)
      for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
    row_pivoted.assign(M.rows, false);
    col_pivoted.assign(M.cols, false);
    if (rhs) { z = *rhs; with_z = true; }
  }

  // Returns false when no +-1 pivot remains among unpivoted rows/cols.
  bool step() {
    long best_score = -1;
    int pi = -1, pj = -1;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (row_pivoted[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (col_pivoted[c] || int_abs(v) != 1) continue;
        long score = static_cast<long>(rows[r].size() - 1) *
                     static_cast<long>(col_rows[c].size() - 1);
        if (best_score < 0 || score < best_score) { best_score = score; pi = r; pj = c; }
        if (best_score == 0) break;
      }
      if (best_score == 0) break;
    }
    if (pi < 0) return false;

    const Int piv = rows[pi].at(pj);  // +-1
    std::vector<int> touched(col_rows[pj].begin(), col_rows[pj].end());
    for (int r : touched) {
      if (r == pi) continue;
      Int f = rows[r].at(pj) * piv;  // rows[r][pj] / piv since piv = +-1
      // row_r -= f * row_pi
      for (const auto& [c, v] : rows[pi]) {
        auto it = rows[r].find(c);
        if (it == rows[r].end()) {
          rows[r][c] = -f * v;
          col_rows[c].insert(r);
        } else {
          it->second -= f * v;
          if (sgn(it->second) == 0) {
            rows[r].erase(it);
            col_rows[c].erase(r);
          }
        }
      }
      if (with_z) z[r] -= f * z[pi];
    }
    row_pivoted[pi] = true;
    col_pivoted[pj] = true;
    pivots.emplace_back(pi, pj);
    return true;
  }

  void run() { while (step()) {} }

  // Dense leftover block over unpivoted rows/cols (empty when elimination finished).
  std::pair<IMat, std::pair<std::vector<int>, std::vector<int>>> core() const {
    std::vector<int> ri, ci;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (!row_pivoted[r] && !rows[r].empty()) ri.push_back(r);
    std::set<int> cset;
    for (int r : ri)
      for (const auto& [c, v] : rows[r]) cset.insert(c);
    ci.assign(cset.begin(), cset.end());
    IMat C(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (size_t i = 0; i < ri.size(); ++i)
      for (size_t j = 0; j < ci.size(); ++j) {
        auto it = rows[ri[i]].find(ci[j]);
        if (it != rows[ri[i]].end()) C.at(static_cast<int>(i), static_cast<int>(j)) = it->second;
      }
    return {C, {ri, ci}};
  }
};

}  // namespace

IntSolve solve_integer(const SMat& M, const std::vector<Int>& z) {
  if (static_cast<int>(z.size()) != M.rows) throw std::invalid_argument("solve_integer: size mismatch");
  SparseElim E;
  E.init(M, &z);
  E.run();

  auto [core, idx] = E.core();
  const auto& core_rows = idx.first;
  const auto& core_cols = idx.second;

  IntSolve out;
  std::vector<Int> x(M.cols, Int(0));
  std::vector<std::vector<Int>> core_kernel;

  if (core.rows > 0) {
    std::vector<Int> cz(core.rows);
    for (int i = 0; i < core.rows; ++i) cz[i] = E.z[core_rows[i]];
    IntSolve cs = solve_integer_dense(core, cz);
    if (!cs.solvable) return out;
    for (int j = 0; j < core.cols; ++j) x[core_cols[j]] = cs.particular[j];
    for (auto& kv : cs.kernel) {
      std::vector<Int> full(M.cols, Int(0));
      for (int j = 0; j < core.cols; ++j) full[core_cols[j]] = kv[j];
      core_kernel.push_back(std::move(full));
    }
  }

  // empty unpivoted rows must have zero right-hand side
  for (int r = 0; r < M.rows; ++r)
    if (!E.row_pivoted[r] && E.rows[r].empty() && sgn(E.z[r]) != 0) return out;

  std::set<int> core_col_set(core_cols.begin(), core_cols.end());
  std::vector<int> free_cols;
  for (int c = 0; c < M.cols; ++c)
    if (!E.col_pivoted[c] && !core_col_set.count(c)) free_cols.push_back(c);

  auto back_substitute = [&](std::vector<Int>& vec, bool use_z) {
    for (auto it = E.pivots.rbegin(); it != E.pivots.rend(); ++it) {
      auto [pr, pc] = *it;
      Int acc = use_z ? E.z[pr] : Int(0);
      for (const auto& [c, v] : E.rows[pr]) {
        if (c == pc) continue;
        if (sgn(vec[c]) != 0) acc -= v * vec[c];
      }
      vec[pc] = acc * E.rows[pr].at(pc);  // divide by +-1
    }
  };

  back_substitute(x, true);
  out.solvable = true;
  out.particular = std::move(x);

  for (int f : free_cols) {
    std::vector<Int> k(M.cols, Int(0));
    k[f] = 1;
    back_substitute(k, false);
    out.kernel.push_back(std::move(k));
  }
  for (auto& ck : core_kernel) {
    back_substitute(ck, false);
    out.kernel.push_back(std::move(ck));
  }
  return out;
}

RankInfo sparse_rank_unimodular(const SMat& M) {
  SparseElim E;
  E.init(M, nullptr);
  E.run();
  RankInfo info;
  info.rank = static_cast<int>(E.pivots.size());
  auto [core, idx] = E.core();
  if (core.rows > 0) {
    auto factors = smith_invariant_factors(core);
    info.rank += static_cast<int>(factors.size());
    for (const auto& d : factors)
      if (d != 1) info.unit_factors = false;
  }
  return info;
}

int integer_rank(const IMat& M) {
  Mat Q(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) Q.at(i, j) = Rat(M.at(i, j));
  return mat_rank(Q);
}

namespace {

int rank_rows_mod_p(std::vector<std::vector<uint64_t>>& A, int cols, uint64_t p) {
  auto pow_mod = [&](uint64_t b, uint64_t e) {
    unsigned __int128 acc = 1, base = b % p;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<uint64_t>(acc);
  };
  int nrows = static_cast<int>(A.size());
  int rank = 0;
  for (int col = 0; col < cols && rank < nrows; ++col) {
    int piv = -1;
    for (int r = rank; r < nrows; ++r)
      if (A[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(A[piv], A[rank]);
    uint64_t inv = pow_mod(A[rank][col], p - 2);  // p prime
    for (int r = rank + 1; r < nrows; ++r) {
      if (A[r][col] == 0) continue;
      uint64_t f = static_cast<uint64_t>(static_cast<unsigned __int128>(A[r][col]) * inv % p);
      for (int j = col; j < cols; ++j) {
        unsigned __int128 t = static_cast<unsigned __int128>(f) * A[rank][j] % p;
        A[r][j] = (A[r][j] + p - static_cast<uint64_t>(t)) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int rank_mod_p(const IMat& M, uint64_t p) {
  std::vector<std::vector<uint64_t>> A(M.rows, std::vector<uint64_t>(M.cols));
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) {
      Int r;
      mpz_mod_ui(r.get_mpz_t(), M.at(i, j).get_mpz_t(), p);
      A[i][j] = r.get_ui();
    }
  return rank_rows_mod_p(A, M.cols, p);
}

int rank_mod_p(const SMat& M, uint64_t p) {
  std::vector<std::vector<uint64_t>> A(M.rows, std::vector<uint64_t>(M.cols, 0));
  for (int c = 0; c < M.cols; ++c)
    for (const auto& [r, v] : M.col[c]) {
      Int m;
      mpz_mod_ui(m.get_mpz_t(), v.get_mpz_t(), p);
      A[r][c] = (A[r][c] + m.get_ui()) % p;
    }
  return rank_rows_mod_p(A, M.cols, p);
}

}  // namespace apex
