#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "apex/intmat.hpp"
#include "apex/linalg.hpp"
#include "apex/polytope.hpp"
#include "apex/root_system.hpp"

namespace apex {

// Affine hyperplane w.x + c = 0 in canonical form: (w, c) scaled to coprime
// integers with the first nonzero entry of w positive.
struct Hyperplane {
  Vec w;
  Rat c;
};

Hyperplane canonical_plane(Vec w, Rat c);
std::string plane_key(const Hyperplane& h);

// One closed cell of the windowed arrangement, identified by its sign vector
// over all hyperplanes of the window.
struct Cell {
  int id = -1;
  int dim = 0;
  std::vector<int8_t> sign;
  std::vector<int> verts;  // ids of vertex cells in the closure, sorted
  Vec interior;            // barycenter of the vertex coordinates: in the relative interior
};

// Regular cell complex tiling a chamber-aligned window around a center point.
// Cell ids are contiguous, sorted by (dim, sign vector).
struct CellComplex {
  FiniteRootSystem sys;
  long m = 1;
  Vec center;
  long radius = 1;
  Polytope window;
  std::vector<Hyperplane> planes;
  std::vector<Cell> cells;
  std::vector<int> dim_begin;  // dim d cells occupy ids [dim_begin[d], dim_begin[d+1])
  std::map<std::string, int> by_sign;
  std::vector<std::vector<int>> faces;    // codim-1 faces of each cell
  std::vector<std::vector<int>> cofaces;  // codim-1 cofaces of each cell

  int top_dim() const { return sys.rank; }
  int count_of_dim(int d) const;
  int first_of_dim(int d) const;
  std::string sign_key(const std::vector<int8_t>& s) const;
  std::vector<int8_t> sign_of(const Vec& x) const;
  int cell_at(const Vec& x) const;  // throws when x is outside the window
};

// Window: per positive root, the band |alpha(x) - alpha(center)| <= radius/m
// with both limits snapped outward to the (1/m)-grid of that root direction.
Polytope build_window(const FiniteRootSystem& sys, long m, const Vec& center, long radius);

CellComplex build_complex(const FiniteRootSystem& sys, long m, const Vec& center, long radius);

// Incidence number of a codim-1 face pair, via oriented frames from
// lex-ordered vertices; +-1 for a true face pair, 0 otherwise.
int incidence_sign(const CellComplex& cx, int sigma, int tau);

// Boundary matrix from dim-d cells to dim-(d-1) cells in local (per-dim)
// indices; d == 0 gives the 1-row augmentation map.
SMat boundary_matrix(const CellComplex& cx, int d);

struct Chain {
  int dim = 0;
  std::map<int, Int> coef;  // cell id -> coefficient, zero entries absent
};

Chain boundary_cell(const CellComplex& cx, int cell);
Chain boundary(const CellComplex& cx, const Chain& z);
bool chain_eq(const Chain& a, const Chain& b);

// Image cell under a pairing-isometry preserving the window; throws when the
// map does not send this cell to a cell of the complex.
int cell_image(const CellComplex& cx, const AffineMap& g, int cell);
Chain chain_image(const CellComplex& cx, const AffineMap& g, const Chain& z);

// Subgroup generated by reflections in the arrangement hyperplanes through
// the point; sorted by map key for determinism.
std::vector<AffineMap> stabilizer_of(const CellComplex& cx, const Vec& point);

long euler_characteristic(const CellComplex& cx);

}  // namespace apex
