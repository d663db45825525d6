#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "apex/complex.hpp"

namespace apex {

// A cone hull left the window: the support would be truncated, so the caller
// must rebuild the complex with a larger window radius.
struct HullEscapeError : std::runtime_error {
  explicit HullEscapeError(const std::string& what) : std::runtime_error(what) {}
};

// Straight-line support region of a cell: convex hull of the window center
// together with the closed cell.
Polytope cone_hull(const CellComplex& cx, int cell);

// Support subcomplex of a cell: all cells whose relative interior meets the
// cone hull (core), closed under faces.  Witnesses are exact points in
// relint(cell) intersected with the hull, one per core cell.
struct Support {
  int cell = -1;
  Polytope hull;
  std::vector<int> cells;  // face closure of the core, sorted ids
  std::vector<int> core;   // cells whose relative interior meets the hull
  std::map<int, Vec> witness;
};

Support support_subcomplex(const CellComplex& cx, int cell);

// Exact test used to build the core, exposed for cross-checking.
bool relint_meets(const CellComplex& cx, int cell, const Polytope& hull, Vec* witness_out);

// Vanishing of all reduced integral homology of the full subcomplex on the
// given cells (face-closed; throws otherwise).
bool is_acyclic(const CellComplex& cx, const std::vector<int>& cells);

}  // namespace apex
