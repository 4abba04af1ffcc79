// Lattice operations on piecewise-affine functions: pointwise max/min by
// triangulation overlay, and the decomposition of a nonnegative function
// into a join of tents that are concave on their supports.
#pragma once

#include "plval/complex.hpp"

#include <span>

namespace plval {

struct OverlayOptions {
  /// Snap distance for vertices, in coordinates normalized to the unit box.
  double snap_tol = kEps;
  /// Run the pairwise conformity check on the results; violations raise
  /// Error{OverlayFailure}.
  bool strict = false;
};

struct LatticePair {
  PLFunction join;  ///< max(f, g)
  PLFunction meet;  ///< min(f, g), restricted to where it is nonzero
};

/// Computes f v g and f ^ g on a common refinement: the arrangement of all
/// simplex facet hyperplanes of both inputs, cut along {f = g}.
LatticePair join_meet(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts = {});

PLFunction join(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts = {});
PLFunction meet(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts = {});

/// Envelopes of several functions computed in one overlay of all inputs.
/// Folding pairwise would feed each intermediate triangulation's diagonals
/// back into the next arrangement and grow the output without bound.
PLFunction join_all(std::span<const PLFunction> fs, const OverlayOptions& opts = {});
PLFunction meet_all(std::span<const PLFunction> fs, const OverlayOptions& opts = {});

struct TentOptions {
  double delta = 1e-2;     ///< initial relative enlargement of each simplex
  int max_halvings = 12;   ///< bound on the adaptive shrinking of delta
  int samples = 4000;      ///< sample points per verification pass
  std::uint64_t seed = 7;  ///< sampling seed
};

struct TentDecomposition {
  std::vector<PLFunction> tents;  ///< one per simplex of f, in simplex order
  double delta = 0.0;             ///< enlargement that passed verification
};

/// Writes f >= 0 as f_1 v ... v f_m, one tent per simplex: f_i equals f on
/// simplex i, is concave on its support (a polytope slightly larger than the
/// simplex) and vanishes on the support's boundary. Throws
/// Error{NotNonnegative} for negative vertex values.
TentDecomposition tent_decomposition(const PLFunction& f, const TentOptions& opts = {});

}  // namespace plval
