#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "apex/intmat.hpp"
#include "apex/rational.hpp"

namespace apex {

// Arithmetic context for 2x2 matrices over Z/p^N, stored row-major (a b; c d).
struct ModRing {
  uint64_t p = 0;
  int level = 0;   // N
  uint64_t q = 1;  // p^N
};

using Mat2 = std::array<uint64_t, 4>;

ModRing make_ring(uint64_t p, int level);
Mat2 mat2_mul(const ModRing& ring, const Mat2& a, const Mat2& b);
Mat2 mat2_inv(const ModRing& ring, const Mat2& a);  // determinant must be 1
uint64_t mat2_key(const ModRing& ring, const Mat2& a);
uint64_t sl2_order(uint64_t p, int level);

// Filtration exponents at one apartment point: positive root, negative root, torus.
struct Thresholds {
  long tp = 0, tm = 0, t0 = 0;
};

// Strict depth-r thresholds at apartment coordinate v.
Thresholds tree_thresholds(const Rat& r, const Rat& v);

// Generating family read off the thresholds: unipotents with p^t-divisible entry
// and diagonal units congruent to 1 mod p^t0.
std::vector<Mat2> threshold_family(const ModRing& ring, const Thresholds& t);
std::vector<Mat2> subgroup_closure(const ModRing& ring, const std::vector<Mat2>& family);
// The same subgroup described by congruence conditions on the entries.
std::vector<Mat2> congruence_subgroup(const ModRing& ring, const Thresholds& t);

enum class TreeCellKind { vertex, midpoint, half_edge };

struct TreeCell {
  int id = -1;
  TreeCellKind kind = TreeCellKind::vertex;
  int dir = -1;       // direction index; -1 for the base vertex
  Rat model_pos;      // apartment coordinate (interior sample for half-edges)
  Thresholds th;
  std::vector<Mat2> group;  // element set sorted by key
  int tail = -1, head = -1;  // half-edge endpoints, tail nearer the base vertex
};

struct TreeBall {
  uint64_t p = 0;
  int radius = 0;
  Rat r;
  ModRing ring;
  uint64_t group_order = 0;
  std::vector<Mat2> dirs;       // conjugator per direction
  std::vector<TreeCell> cells;  // base vertex first
  std::vector<int> zero_cells;  // vertices and midpoints
  std::vector<int> one_cells;   // half-edges
};

// Smallest congruence level at which every cell subgroup has the same index
// pattern as one level higher.
int choose_level(uint64_t p, int radius, const Rat& r);

// level <= 0 selects the level automatically.
TreeBall build_tree_ball(uint64_t p, int radius, const Rat& r, int level = 0);

// Image of a direction index under an element fixing the base vertex.
int direction_image(const TreeBall& ball, const Mat2& g, int dir);
// Image of a cell id under an element of the base-vertex subgroup.
int cell_image(const TreeBall& ball, const Mat2& g, int cell);

// Cells on the closed geodesic from the base vertex through sigma.
std::vector<int> tree_support(const TreeBall& ball, int sigma);

// K_tau = (K_x ∩ K_tau)(K_sigma ∩ K_tau) as element sets.
bool coset_decomposition_check(const TreeBall& ball, int sigma, int tau);
// (K ∩ lower)(K ∩ torus)(K ∩ upper) = K as element sets.
bool iwahori_decomposition_check(const ModRing& ring, const std::vector<Mat2>& group);

// Left cosets g·H of the base-vertex subgroup (permutation module) or of the
// whole group (trivial module, a single coset).
struct CosetSpace {
  ModRing ring;
  long count = 0;
  std::vector<Mat2> rep;  // canonical representative per coset
  std::unordered_map<uint64_t, int32_t> elem_coset;

  int act(const Mat2& g, int coset) const;
};

CosetSpace enumerate_cosets(const TreeBall& ball, bool permutation_rep);

struct CellOrbits {
  std::vector<int32_t> orbit_of;              // coset -> orbit id
  std::vector<std::vector<int32_t>> members;  // orbit id -> ascending member list
};

CellOrbits cell_orbits(const CosetSpace& cs, const std::vector<Mat2>& group);

// Invariant bases and boundary maps of the coefficient complex projected onto
// the base-stabilizer invariants; bases are stabilizer orbits of (cell, orbit)
// pairs, the degree -1 part comes from the base cell alone.
struct ProjectedComplex {
  long dim_v = 0;
  std::array<long, 3> dims{};  // C_1, C_0, C_{-1}
  SMat d1, d0;
};

ProjectedComplex projected_complex(const TreeBall& ball, bool permutation_rep);

// Homology ranks at C_1, C_0, C_{-1}.  A zero total defect over a large prime
// field certifies zero rational homology; otherwise exact integer ranks are
// computed (and on small instances they confirm the modular ranks anyway).
std::array<long, 3> projected_homology(const ProjectedComplex& pc, bool* exact_ranks = nullptr);

struct ExactnessReport {
  int level = 0;
  uint64_t group_order = 0;
  long dim_v = 0;
  std::array<long, 3> dims{};      // projected C_1, C_0, C_{-1}
  std::array<long, 3> homology{};  // at C_1, C_0, C_{-1}
  bool coset_ok = false;
  bool iwahori_ok = false;
  bool exact_ranks = false;  // rational fallback ranks were computed
};

// Build the ball, project the coefficient complex onto the base-vertex
// invariants, and measure exactness by rank.
ExactnessReport exactness_report(uint64_t p, int radius, const Rat& r, int level,
                                 bool permutation_rep);

}  // namespace apex
