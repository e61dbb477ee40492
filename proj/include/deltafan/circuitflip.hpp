// Oriented circuits, the two triangulations of a circuit cone, and the flips
// that exchange them inside a Delta-maximal fan.

#ifndef DELTAFAN_CIRCUITFLIP_HPP
#define DELTAFAN_CIRCUITFLIP_HPP

#include "deltafan/fan.hpp"
#include "deltafan/polytope.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace deltafan {

/// A spanning set of d+1 points with its unique linear dependence
/// sum_i coeffs[i] * points[support[i]] = 0, coefficients primitive.
struct OrientedCircuit {
  std::vector<std::size_t> support;  // ascending
  std::vector<Integer> coeffs;       // aligned with support
  std::vector<std::size_t> plus, zero, minus;

  friend bool operator==(const OrientedCircuit&, const OrientedCircuit&) = default;
};

/// Circuit of d+1 spanning points, support 0..d in input order. Oriented so
/// that |plus| >= |minus|; on a tie, plus holds the smallest support index.
/// Throws std::invalid_argument when the points do not span.
OrientedCircuit circuit_of(std::span<const IntVector> points);

/// Same, for points[support[i]] of a shared table.
OrientedCircuit circuit_of(std::span<const IntVector> points, std::vector<std::size_t> support);

/// The opposite orientation: plus and minus swapped, coefficients negated.
OrientedCircuit reversed(OrientedCircuit c);

/// Max cones of the two triangulations of Cone(support): plus omits one point
/// of c.minus at a time, minus omits one point of c.plus.
struct LocalFans {
  std::vector<ConeIndices> plus;
  std::vector<ConeIndices> minus;
};

/// Throws std::invalid_argument when Cone(support) is not pointed, and
/// std::logic_error if either side fails the ridge matching inside the cone.
LocalFans circuit_fans(const OrientedCircuit& c, std::span<const IntVector> points);

/// Replaces the plus-side cones of a circuit Z = plus and minus by the
/// minus-side ones, simultaneously over every link simplex tau shared by all
/// the removed cones. The circuit is oriented relative to the move: removed
/// cones omit one point of circuit.minus.
struct FlipMove {
  OrientedCircuit circuit;             // support Z and the first link simplex
  std::vector<ConeIndices> removed;    // |circuit.minus| * |link| cones
  std::vector<ConeIndices> added;      // |circuit.plus| * |link| cones
  std::vector<ConeIndices> wall_cones; // Z and tau, one per link simplex

  friend bool operator==(const FlipMove&, const FlipMove&) = default;
};

class InapplicableMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every flip of the simplicial fan f that keeps its ray set, in canonical
/// order. Both circuit sides have at least two points.
std::vector<FlipMove> find_flips(const Fan& f);

/// Same, after checking that f is simplicial with rays exactly the nonzero
/// lattice points of delta (std::invalid_argument otherwise).
std::vector<FlipMove> find_flips(const Fan& f, const LatticePolytope& delta);

/// f with m.removed replaced by m.added. Throws InapplicableMoveError when
/// m does not describe a flip of f.
Fan flip(const Fan& f, const FlipMove& m);

/// The move undoing m.
FlipMove reverse(const FlipMove& m);

/// For a flip whose circuit has two points on each side: a lattice basis
/// b_1..b_d in which circuit.plus becomes {e1, e2} and circuit.minus becomes
/// {e3, e1+e2-e3}. Built from a unimodular removed cone; nothing when neither
/// candidate cone is unimodular or the coordinates do not match.
std::optional<std::vector<IntVector>> square_normal_basis(const FlipMove& m,
                                                          std::span<const IntVector> points);

namespace reference {

/// Serial scan of every (d+1)-subset of used rays.
std::vector<FlipMove> find_flips(const Fan& f);

}  // namespace reference

}  // namespace deltafan

#endif  // DELTAFAN_CIRCUITFLIP_HPP
