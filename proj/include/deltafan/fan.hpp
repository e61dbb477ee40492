// Cones and fans over a shared table of primitive ray generators.

#ifndef DELTAFAN_FAN_HPP
#define DELTAFAN_FAN_HPP

#include "deltafan/exactlin.hpp"
#include "deltafan/polytope.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace deltafan {

enum class Tristate { unknown, no, yes };

inline Tristate tristate(bool b) { return b ? Tristate::yes : Tristate::no; }

/// Sorted indices into a fan's point table.
using ConeIndices = std::vector<std::size_t>;

class Fan {
 public:
  Fan() = default;

  /// Canonicalizes: points sorted lexicographically (cone indices remapped), each
  /// cone sorted, cones sorted and deduplicated. Throws std::invalid_argument on
  /// zero or non-primitive points, repeated points, or out-of-range indices.
  Fan(std::size_t dim, std::vector<IntVector> points, std::vector<ConeIndices> max_cones);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& points() const { return points_; }
  const std::vector<ConeIndices>& max_cones() const { return cones_; }
  std::vector<IntVector> generators(const ConeIndices& cone) const;

  std::optional<std::size_t> index_of(const IntVector& x) const;
  bool has_cone(const ConeIndices& cone) const;

  /// Points that generate at least one max cone, ascending.
  std::vector<std::size_t> used_points() const;

  Tristate simplicial = Tristate::unknown;
  Tristate complete = Tristate::unknown;
  Tristate projective = Tristate::unknown;

  /// Equality of canonical data; flags are hints and do not take part.
  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> points_;
  std::vector<ConeIndices> cones_;
};

/// Exact membership of x in Cone(gens).
bool cone_contains(std::span<const IntVector> gens, const IntVector& x);

/// |gcd of maximal minors| == 1. Throws std::invalid_argument on dependent generators.
bool is_unimodular(std::span<const IntVector> gens);

/// Cones over the facets of p. Throws OriginNotInteriorError.
Fan face_fan(const LatticePolytope& p);

/// Facet of a full-dimensional cone: the generators on it and a primitive
/// inward normal (zero on them, positive on the remaining generators).
struct ConeFacet {
  ConeIndices rays;
  IntVector normal;
};

/// Facets of Cone(points[cone]); empty when the cone is not full-dimensional.
std::vector<ConeFacet> cone_facets(std::span<const IntVector> points, const ConeIndices& cone);

/// True when Cone(a) and Cone(b) meet in Cone(a and b), a common face of both.
/// Both cones must be full-dimensional with the given facets.
bool intersect_properly(std::span<const IntVector> points, const ConeIndices& a,
                        const std::vector<ConeFacet>& fa, const ConeIndices& b,
                        const std::vector<ConeFacet>& fb);

/// Pure full-dimensional, every ridge in exactly two max cones, and all pairwise
/// intersections are common faces.
bool is_complete(const Fan& f);

/// Ray heights h (one per point, unused points 0) of a strictly convex support
/// function, or nothing when the fan is not projective. Requires a complete fan.
std::optional<std::vector<Rational>> support_function(const Fan& f);

bool is_projective(const Fan& f);

struct Violation {
  enum class Kind { missing_ray, extra_ray, non_simplicial, overlap, incomplete, interior_point };
  Kind kind;
  std::string detail;
  std::vector<std::size_t> cones;  // indices into max_cones()
};

std::string to_string(Violation::Kind k);

struct ValidationReport {
  bool verdict = false;
  std::vector<Violation> violations;
};

/// Checks that f is a Delta-maximal fan: rays are exactly the nonzero lattice
/// points of delta, every max cone is simplicial, the cones form a complete fan,
/// and no max cone contains a lattice point other than its generators.
ValidationReport validate_delta_maximal(const Fan& f, const LatticePolytope& delta);

/// All nonzero cones of dimension <= n, as generator index sets sorted by
/// (size, indices).
std::vector<ConeIndices> skeleton(const Fan& f, std::size_t n);

/// Every max cone of `fine` lies inside some max cone of `coarse`.
bool refines(const Fan& fine, const Fan& coarse);

}  // namespace deltafan

#endif  // DELTAFAN_FAN_HPP
