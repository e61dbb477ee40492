// Lattice polytopes in N_R: facets, duality, reflexivity, lattice points and
// face queries.

#ifndef DELTAFAN_POLYTOPE_HPP
#define DELTAFAN_POLYTOPE_HPP

#include "deltafan/exactlin.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltafan {

/// {x : <normal, x> = offset} is a facet; <normal, v> <= offset on every vertex.
struct Facet {
  IntVector normal;
  Integer offset;
  std::vector<std::size_t> vertices;  // indices into LatticePolytope::vertices()
};

struct Face {
  std::vector<std::size_t> vertices;
  std::size_t dim = 0;

  friend bool operator==(const Face&, const Face&) = default;
};

class DegeneratePolytopeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OriginNotInteriorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The dual has a vertex with non-integral coordinates; the polytope is not reflexive.
class NonLatticeDualError : public std::domain_error {
 public:
  NonLatticeDualError(const std::string& what, std::vector<Rational> vertex)
      : std::domain_error(what), vertex_(std::move(vertex)) {}
  const std::vector<Rational>& vertex() const { return vertex_; }

 private:
  std::vector<Rational> vertex_;
};

class LatticePolytope {
 public:
  static constexpr std::size_t kMaxDim = 6;

  LatticePolytope() = default;

  /// Convex hull of full-dimensional input. Redundant points are dropped; vertices
  /// and facets (by normal) come out lexicographically sorted.
  static LatticePolytope hull(std::span<const IntVector> points);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  /// All lattice points, lexicographically sorted, with a boundary flag each.
  const std::vector<IntVector>& points() const { return points_; }
  const std::vector<bool>& boundary_flags() const { return boundary_; }

  /// Lattice points other than the origin, in the order of points().
  std::vector<IntVector> nonzero_points() const;

  bool contains(const IntVector& x) const;
  bool origin_interior() const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<IntVector> points_;
  std::vector<bool> boundary_;
};

/// {m : <m, x> >= -1 on p}. Throws OriginNotInteriorError or NonLatticeDualError.
LatticePolytope dual(const LatticePolytope& p);

bool is_reflexive(const LatticePolytope& p);

const std::vector<IntVector>& lattice_points(const LatticePolytope& p);

/// max over facets of <u_F, x>, clamped at 0. For reflexive p and r >= 1, x lies in r * boundary(p).
Integer boundary_multiplicity(const IntVector& x, const LatticePolytope& p);

/// Intersection of all facets containing every point, or nothing when no facet
/// contains them all. Throws std::invalid_argument for points outside p.
std::optional<Face> smallest_face_containing(std::span<const IntVector> pts,
                                             const LatticePolytope& p);

/// Indices of the facets on which every point of pts lies.
std::vector<std::size_t> common_facets(std::span<const IntVector> pts, const LatticePolytope& p);

}  // namespace deltafan

#endif  // DELTAFAN_POLYTOPE_HPP
