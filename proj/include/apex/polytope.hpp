#pragma once
#include <vector>

#include "apex/linalg.hpp"

namespace apex {

// Closed halfspace a.x <= b (plain coordinate dot product).
struct HalfSpace {
  Vec a;
  Rat b;
};

// Bounded convex polyhedron in rank 1 or 2, kept in both representations.
// vertices is exactly the (lex-sorted) set of extreme points; empty means the
// polyhedron is empty.
struct Polytope {
  int dim = 0;
  std::vector<HalfSpace> ineqs;
  std::vector<Vec> vertices;

  bool contains(const Vec& x) const;
  bool empty() const { return vertices.empty(); }
};

// From halfspaces; throws on an unbounded feasible region.
Polytope make_polytope(int dim, std::vector<HalfSpace> ineqs);

// Convex hull of finitely many points (exact); supplies both representations.
Polytope hull_of_points(int dim, const std::vector<Vec>& pts);

// Ordered vertex cycle of a bounded convex region; degenerate regions are a
// segment (2 points), a point, or empty.  Used for exact polygon clipping.
struct ConvexRegion {
  int dim = 0;
  std::vector<Vec> pts;  // CCW cycle when full-dimensional in rank 2

  bool empty() const { return pts.empty(); }
};

ConvexRegion region_of(const Polytope& p);
ConvexRegion clip(const ConvexRegion& r, const HalfSpace& hs);

}  // namespace apex
