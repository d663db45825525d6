#include "apex/contraction.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "apex/parallel.hpp"

namespace apex {

namespace {

Chain chain_sub(const Chain& a, const Chain& b) {
  Chain out;
  out.dim = a.dim;
  out.coef = a.coef;
  for (const auto& [c, v] : b.coef) out.coef[c] -= v;
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = sgn(it->second) == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

Chain chain_add(const Chain& a, const Chain& b) {
  Chain out;
  out.dim = a.dim;
  out.coef = a.coef;
  for (const auto& [c, v] : b.coef) out.coef[c] += v;
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = sgn(it->second) == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

// Precomputed cell images and orientation twists for every stabilizer element.
struct ActionTable {
  std::vector<std::vector<int>> image;   // [g][cell]
  std::vector<std::vector<int8_t>> twist;
};

ActionTable build_action_table(const CellComplex& cx, const std::vector<AffineMap>& stab) {
  ActionTable t;
  t.image.resize(stab.size());
  t.twist.resize(stab.size());
  for (size_t g = 0; g < stab.size(); ++g) {
    t.image[g].resize(cx.cells.size());
    t.twist[g].resize(cx.cells.size());
    for (size_t c = 0; c < cx.cells.size(); ++c) {
      int im = cell_image(cx, stab[g], (int)c);
      t.image[g][c] = im;
      Chain one;
      one.dim = cx.cells[c].dim;
      one.coef[(int)c] = 1;
      Chain moved = chain_image(cx, stab[g], one);
      t.twist[g][c] = (int8_t)sgn(moved.coef.begin()->second);
    }
  }
  return t;
}

Chain table_image(const ActionTable& t, size_t g, const Chain& z) {
  Chain out;
  out.dim = z.dim;
  for (const auto& [c, v] : z.coef) {
    if (c < 0) {
      out.coef[c] += v;  // the empty cell is fixed
      continue;
    }
    out.coef[t.image[g][(size_t)c]] += v * t.twist[g][(size_t)c];
  }
  for (auto it = out.coef.begin(); it != out.coef.end();)
    it = sgn(it->second) == 0 ? out.coef.erase(it) : std::next(it);
  return out;
}

// Deterministic small search over the kernel lattice for a solution with the
// least maximum absolute coefficient.
std::vector<Int> minimize_max_abs(std::vector<Int> part, const std::vector<std::vector<Int>>& ker) {
  auto score = [](const std::vector<Int>& w) {
    Int s(0);
    for (const auto& v : w) {
      Int a = int_abs(v);
      if (a > s) s = a;
    }
    return s;
  };
  size_t t = ker.size();
  if (t == 0) return part;
  auto shifted = [&](const std::vector<long>& c) {
    std::vector<Int> w = part;
    for (size_t k = 0; k < t; ++k)
      if (c[k] != 0)
        for (size_t i = 0; i < w.size(); ++i) w[i] += Int(c[k]) * ker[k][i];
    return w;
  };
  if (t <= 4) {
    std::vector<long> c(t, -2), best_c(t, 0);
    Int best = score(part);
    while (true) {
      std::vector<Int> w = shifted(c);
      Int s = score(w);
      if (s < best || (s == best && c < best_c)) {
        best = s;
        best_c = c;
      }
      size_t k = 0;
      while (k < t && c[k] == 2) c[k++] = -2;
      if (k == t) break;
      ++c[k];
    }
    return shifted(best_c);
  }
  std::vector<long> c(t, 0);
  Int best = score(part);
  for (int pass = 0; pass < 50; ++pass) {
    bool improved = false;
    for (size_t k = 0; k < t; ++k)
      for (long d : {1L, -1L}) {
        c[k] += d;
        Int s = score(shifted(c));
        if (s < best) {
          best = s;
          improved = true;
        } else {
          c[k] -= d;
        }
      }
    if (!improved) break;
  }
  return shifted(c);
}

// c applied to a chain; null when a needed value is missing.
bool apply_maps(const Contraction& c, const Chain& z, Chain* out) {
  out->dim = z.dim + 1;
  out->coef.clear();
  for (const auto& [cell, v] : z.coef) {
    if (z.dim == -1) {
      out->coef[c.base_cell] += v;
      continue;
    }
    auto it = c.maps.find(cell);
    if (it == c.maps.end()) return false;
    for (const auto& [t, e] : it->second.coef) out->coef[t] += v * e;
  }
  for (auto it = out->coef.begin(); it != out->coef.end();)
    it = sgn(it->second) == 0 ? out->coef.erase(it) : std::next(it);
  return true;
}

}  // namespace

Chain apply_contraction(const CellComplex& cx, const Contraction& c, const Chain& z) {
  (void)cx;
  Chain out;
  if (!apply_maps(c, z, &out)) throw std::runtime_error("contraction value missing for a chain term");
  return out;
}

std::vector<int> verification_region(const CellComplex& cx, long region_radius) {
  std::vector<int> region;
  if (region_radius < 0) {
    for (const auto& c : cx.cells) region.push_back(c.id);
    return region;
  }
  Polytope w = build_window(cx.sys, cx.m, cx.center, region_radius);
  for (const auto& c : cx.cells) {
    bool in = true;
    for (int v : c.verts)
      if (!w.contains(cx.cells[(size_t)v].interior)) {
        in = false;
        break;
      }
    if (in) region.push_back(c.id);
  }
  return region;
}

Contraction build_contraction(const CellComplex& cx, long region_radius) {
  Contraction con;
  con.region_radius = region_radius;
  int base = cx.cell_at(cx.center);
  if (cx.cells[(size_t)base].dim != 0)
    throw std::runtime_error("base point is not a vertex of the complex");
  con.base_cell = base;
  con.region = verification_region(cx, region_radius);
  std::set<int> in_region(con.region.begin(), con.region.end());

  std::vector<AffineMap> stab = stabilizer_of(cx, cx.center);
  ActionTable table = build_action_table(cx, stab);

  // order: dimension, then pairing distance of the barycenter, then id
  std::vector<int> order = con.region;
  std::vector<Rat> dist2(cx.cells.size());
  for (int id : order) {
    Vec d = vec_sub(cx.cells[(size_t)id].interior, cx.center);
    dist2[(size_t)id] = cx.sys.pair(d, d);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = cx.cells[(size_t)a].dim, db = cx.cells[(size_t)b].dim;
    if (da != db) return da < db;
    int c0 = cmp(dist2[(size_t)a], dist2[(size_t)b]);
    if (c0 != 0) return c0 < 0;
    return a < b;
  });

  int top = cx.top_dim();
  std::set<int> done;
  for (int sigma : order) {
    if (done.count(sigma)) continue;
    int d = cx.cells[(size_t)sigma].dim;
    // cycle to lift
    Chain self;
    self.dim = d;
    self.coef[sigma] = 1;
    Chain cb;
    if (!apply_maps(con, boundary_cell(cx, sigma), &cb))
      throw std::runtime_error("contraction build touched an unprocessed face");
    Chain z = chain_sub(self, cb);
    if (d == top) {
      if (!z.coef.empty())
        throw std::runtime_error("top-dimension cycle did not vanish; support is not acyclic");
      Chain zero;
      zero.dim = d + 1;
      con.maps[sigma] = zero;  // no higher cells: c vanishes on top dimension
      done.insert(sigma);
      continue;
    }
    Support sup = support_subcomplex(cx, sigma);
    std::vector<int> rows, cols;
    for (int c : sup.cells) {
      if (cx.cells[(size_t)c].dim == d) rows.push_back(c);
      if (cx.cells[(size_t)c].dim == d + 1) cols.push_back(c);
    }
    std::map<int, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = (int)i;
    SMat B((int)rows.size(), (int)cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
      for (int t : cx.faces[(size_t)cols[j]])
        B.add(row_of.at(t), (int)j, Int(incidence_sign(cx, cols[j], t)));
    std::vector<Int> rhs(rows.size(), Int(0));
    for (const auto& [cell, v] : z.coef) {
      auto it = row_of.find(cell);
      if (it == row_of.end())
        throw std::runtime_error("contraction cycle left its support subcomplex");
      rhs[(size_t)it->second] = v;
    }
    IntSolve sol = solve_integer(B, rhs);
    if (!sol.solvable) {
      std::ostringstream os;
      os << "contraction lift unsolvable at cell " << sigma << " (support not acyclic?)";
      throw std::runtime_error(os.str());
    }
    std::vector<Int> w = minimize_max_abs(sol.particular, sol.kernel);
    Chain cw;
    cw.dim = d + 1;
    for (size_t j = 0; j < cols.size(); ++j)
      if (sgn(w[j]) != 0) cw.coef[cols[j]] = w[j];
    con.maps[sigma] = cw;
    done.insert(sigma);
    // equivariant extension over the stabilizer orbit: g.sigma = twist * image,
    // so the image cell's value picks up the twist
    for (size_t g = 0; g < stab.size(); ++g) {
      int im = table.image[g][(size_t)sigma];
      if (!in_region.count(im))
        throw std::runtime_error("stabilizer does not preserve the verification region");
      Chain moved = table_image(table, g, cw);
      if (table.twist[g][(size_t)sigma] < 0)
        for (auto& [t, v] : moved.coef) v = -v;
      auto it = con.maps.find(im);
      if (it != con.maps.end()) {
        if (!chain_eq(it->second, moved))
          throw std::runtime_error("equivariant extension is inconsistent");
      } else {
        con.maps[im] = moved;
        done.insert(im);
      }
    }
  }
  return con;
}

ContractionReport verify_contraction(const CellComplex& cx, const Contraction& c, int jobs) {
  ContractionReport rep;
  std::vector<AffineMap> stab = stabilizer_of(cx, cx.center);
  ActionTable table = build_action_table(cx, stab);
  std::set<int> in_region(c.region.begin(), c.region.end());
  int top = cx.top_dim();
  size_t n = c.region.size();

  // failure bits: 1 identity, 2 support, 4 equivariance, 8 pointwise fixing
  std::vector<uint8_t> fail(n, 0);
  std::vector<Int> local_max(n, Int(0));

  auto check_cell = [&](size_t idx) {
    int sigma = c.region[idx];
    int d = cx.cells[(size_t)sigma].dim;
    Chain self;
    self.dim = d;
    self.coef[sigma] = 1;
    // identity
    Chain cb;
    bool have = apply_maps(c, boundary_cell(cx, sigma), &cb);
    Chain dc;
    dc.dim = d;
    if (d < top) {
      auto it = c.maps.find(sigma);
      if (it == c.maps.end()) have = false;
      else {
        dc = boundary(cx, it->second);
        for (const auto& [t, v] : it->second.coef) {
          Int a = int_abs(v);
          if (a > local_max[idx]) local_max[idx] = a;
        }
      }
    }
    if (!have || !chain_eq(chain_add(dc, cb), self)) fail[idx] |= 1;
    // support and pointwise fixing need the support subcomplex
    Support sup = support_subcomplex(cx, sigma);
    std::set<int> supset(sup.cells.begin(), sup.cells.end());
    if (d < top) {
      auto it = c.maps.find(sigma);
      if (it != c.maps.end())
        for (const auto& [t, v] : it->second.coef)
          if (!supset.count(t)) fail[idx] |= 2;
    }
    // transported-support cross-check on a deterministic subsample
    if (sigma % 7 == 0) {
      for (size_t g = 0; g < stab.size(); ++g) {
        std::set<int> moved;
        for (int t : sup.cells) moved.insert(table.image[g][(size_t)t]);
        Support sup2 = support_subcomplex(cx, table.image[g][(size_t)sigma]);
        if (std::set<int>(sup2.cells.begin(), sup2.cells.end()) != moved) fail[idx] |= 2;
      }
    }
    for (size_t g = 0; g < stab.size(); ++g) {
      int im = table.image[g][(size_t)sigma];
      if (d < top) {
        auto it = c.maps.find(sigma);
        auto jt = c.maps.find(im);
        if (it == c.maps.end() || jt == c.maps.end()) {
          fail[idx] |= 4;
        } else {
          Chain expect = table_image(table, g, it->second);
          if (table.twist[g][(size_t)sigma] < 0)
            for (auto& [t, v] : expect.coef) v = -v;
          if (!chain_eq(jt->second, expect)) fail[idx] |= 4;
        }
      }
      if (im == sigma) {
        // g fixes sigma, so it must fix the whole support pointwise
        for (int t : sup.cells) {
          if (table.image[g][(size_t)t] != t) {
            fail[idx] |= 8;
            break;
          }
          bool fixed = true;
          for (int v : cx.cells[(size_t)t].verts) {
            Vec y = stab[g].apply(cx.cells[(size_t)v].interior);
            if (vec_cmp(y, cx.cells[(size_t)v].interior) != 0) fixed = false;
          }
          if (!fixed) {
            fail[idx] |= 8;
            break;
          }
        }
      }
    }
  };

  int nj = effective_jobs(jobs);
  if (nj == 1) {
    for (size_t i = 0; i < n; ++i) check_cell(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nj)
#endif
    for (long long i = 0; i < (long long)n; ++i) check_cell((size_t)i);
  }

  rep.identity = rep.support = rep.equivariance = rep.pointwise_fix = true;
  rep.checked = (long)n;
  for (size_t i = 0; i < n; ++i) {
    if (local_max[i] > rep.max_coeff) rep.max_coeff = local_max[i];
    if (fail[i] == 0) continue;
    if (fail[i] & 1) rep.identity = false;
    if (fail[i] & 2) rep.support = false;
    if (fail[i] & 4) rep.equivariance = false;
    if (fail[i] & 8) rep.pointwise_fix = false;
    if (rep.detail.empty()) {
      std::ostringstream os;
      os << "cell " << c.region[i] << " failed:";
      if (fail[i] & 1) os << " identity";
      if (fail[i] & 2) os << " support";
      if (fail[i] & 4) os << " equivariance";
      if (fail[i] & 8) os << " pointwise-fixing";
      rep.detail = os.str();
    }
  }
  return rep;
}

std::vector<SweepRow> coefficient_bound_sweep(const std::string& type_label, long m,
                                              const std::vector<long>& radii,
                                              double budget_seconds) {
  auto start = std::chrono::steady_clock::now();
  std::vector<SweepRow> table;
  FiniteRootSystem sys = build_root_system(type_label);
  Vec origin((size_t)sys.rank, Rat(0));
  for (long r : radii) {
    if (budget_seconds > 0) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (elapsed > budget_seconds) {
        SweepRow row;
        row.radius = r;
        row.timed_out = true;
        table.push_back(row);
        break;
      }
    }
    CellComplex cx = build_complex(sys, m, origin, r);
    Contraction con = build_contraction(cx);
    SweepRow row;
    row.radius = r;
    for (const auto& [cell, ch] : con.maps)
      for (const auto& [t, v] : ch.coef) {
        Int a = int_abs(v);
        if (a > row.max_coeff) row.max_coeff = a;
      }
    table.push_back(row);
  }
  return table;
}

}  // namespace apex
