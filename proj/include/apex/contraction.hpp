#pragma once
#include <map>
#include <string>
#include <vector>

#include "apex/complex.hpp"
#include "apex/support.hpp"

namespace apex {

// Chain contraction based at the window center: maps c_i from dim-i cells to
// (i+1)-chains for i < top, with c_{-1}(1) = the base vertex.  Top-dimension
// cells carry no value; the defining identity there reads c(boundary) = cell.
struct Contraction {
  int base_cell = -1;
  long region_radius = -1;  // -1: the whole window
  std::vector<int> region;  // sorted ids, face-closed
  std::map<int, Chain> maps;
};

// Lift-based construction: per stabilizer-orbit representative solve
// boundary(w) = cell - c(boundary(cell)) over the integers with w supported
// on the (d+1)-cells of the cell's support subcomplex, then extend
// equivariantly.  region_radius < 0 covers every cell of the window.
Contraction build_contraction(const CellComplex& cx, long region_radius = -1);

// Face-closed cell set whose vertices lie in the window of the given radius
// around the center; radius < 0 selects the whole complex.
std::vector<int> verification_region(const CellComplex& cx, long region_radius);

// c applied to a chain; degree -1 maps to the base vertex chain.
Chain apply_contraction(const CellComplex& cx, const Contraction& c, const Chain& z);

struct ContractionReport {
  bool identity = false;
  bool support = false;
  bool equivariance = false;
  bool pointwise_fix = false;
  Int max_coeff = 0;
  long checked = 0;
  std::string detail;  // first failure, empty on success

  bool all_ok() const { return identity && support && equivariance && pointwise_fix; }
};

// Checks the defining identity, cone support, stabilizer equivariance and the
// pointwise-fixing property on every region cell.  jobs > 1 runs the
// per-cell checks in parallel; jobs == 1 is the serial reference.
ContractionReport verify_contraction(const CellComplex& cx, const Contraction& c, int jobs = 1);

struct SweepRow {
  long radius = 0;
  Int max_coeff = 0;
  bool timed_out = false;
};

// Max |c(sigma,tau)| per window radius; a positive budget (seconds) truncates
// the table with a timeout marker row.
std::vector<SweepRow> coefficient_bound_sweep(const std::string& type_label, long m,
                                              const std::vector<long>& radii,
                                              double budget_seconds = 0.0);

}  // namespace apex
