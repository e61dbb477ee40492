// Delta-maximal fans: regular subdivisions from height liftings, the empty
// simplicial cones of a reflexive polytope, and exhaustive fan enumeration.

#ifndef DELTAFAN_TRIANGULATE_HPP
#define DELTAFAN_TRIANGULATE_HPP

#include "deltafan/fan.hpp"
#include "deltafan/polytope.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace deltafan {

/// A d-subset of the nonzero lattice points of a polytope. Indices refer to
/// LatticePolytope::nonzero_points().
struct MaximalConeCandidate {
  ConeIndices generators;
  bool empty = true;            // no other lattice point in the closed cone
  bool in_common_face = false;  // all generators on one facet

  friend bool operator==(const MaximalConeCandidate&, const MaximalConeCandidate&) = default;
};

/// Raised when height liftings keep producing non-simplicial cells.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by enumerate_delta_maximal when more than `limit` fans exist. Carries
/// the first `limit` fans in canonical order.
class LimitExceededError : public std::runtime_error {
 public:
  LimitExceededError(const std::string& what, std::vector<Fan> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<Fan>& partial() const { return partial_; }

 private:
  std::vector<Fan> partial_;
};

/// Number of reseeded attempts before GenericityError.
inline constexpr int kHeightAttempts = 32;

/// Projective Delta-maximal refinement of face_fan(delta), using every nonzero
/// lattice point as a ray. Throws std::invalid_argument unless delta is reflexive.
Fan mpcp(const LatticePolytope& delta, std::uint64_t seed = 0);

/// Linearly independent d-subsets of nonzero lattice points whose cone holds
/// no other lattice point, in lexicographic order of index tuples.
std::vector<MaximalConeCandidate> enumerate_maximal_cones(const LatticePolytope& delta);

/// Every Delta-maximal fan, sorted by max cones, each flagged with its
/// projectivity. Throws LimitExceededError when there are more than `limit`.
std::vector<Fan> enumerate_delta_maximal(const LatticePolytope& delta, std::size_t limit = 1000);

/// Projective delta2-maximal fan refining the projective fan sigma1. Throws
/// std::invalid_argument when a ray of sigma1 is not a lattice point of delta2
/// or sigma1 is not a complete simplicial projective fan.
Fan refine_to(const Fan& sigma1, const LatticePolytope& delta2, std::uint64_t seed = 0);

/// Same, after checking delta1 inside delta2 and sigma1 Delta1-maximal.
Fan refine_to(const Fan& sigma1, const LatticePolytope& delta1, const LatticePolytope& delta2,
              std::uint64_t seed = 0);

namespace reference {

/// Serial scan of every d-subset; kept to cross-check the pruned search.
std::vector<MaximalConeCandidate> enumerate_maximal_cones(const LatticePolytope& delta);

}  // namespace reference

}  // namespace deltafan

#endif  // DELTAFAN_TRIANGULATE_HPP
