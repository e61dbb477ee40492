// Good maximal cones, anticanonical chart exponents, and combinatorial
// smoothness certificates for generic anticanonical hypersurfaces in the toric
// variety of a Delta-maximal fan over a reflexive 4-polytope.

#ifndef DELTAFAN_SMOOTHCERT_HPP
#define DELTAFAN_SMOOTHCERT_HPP

#include "deltafan/fan.hpp"
#include "deltafan/polytope.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltafan {

/// v_1 + ... + v_4 lies in r * boundary(delta); good iff r is 3 or 4.
struct GoodnessResult {
  ConeIndices cone;  // into delta.nonzero_points(); empty when built from raw points
  IntVector sum;
  Integer r;
  bool common_facet = false;  // implies r == 4
  bool good = false;

  friend bool operator==(const GoodnessResult&, const GoodnessResult&) = default;
};

/// Throws std::invalid_argument unless delta has dimension 4 and gens are four
/// linearly independent lattice points of delta.
GoodnessResult is_good_cone(std::span<const IntVector> gens, const LatticePolytope& delta);

struct GoodConesReport {
  bool all_good = true;
  std::vector<GoodnessResult> results;  // one per enumerate_maximal_cones entry
};

/// Goodness of every maximal cone associated to delta (dimension 4).
GoodConesReport has_good_maximal_cones(const LatticePolytope& delta);

class NegativeExponentError : public std::invalid_argument {
 public:
  NegativeExponentError(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Exponents of z^m on the affine chart of a unimodular cone, in the basis dual
/// to its generators: c_i = 1 + <m, v_i>.
struct ChartExponents {
  std::vector<IntVector> cone;
  IntVector m;
  std::vector<Integer> exponents;
};

/// Throws std::invalid_argument for a cone that is not unimodular and full,
/// NegativeExponentError (first offending generator) when some c_i < 0.
ChartExponents chart_exponents(std::span<const IntVector> cone, const IntVector& m);

enum class ConeClass {
  missed_by_generic,  // generators on a common facet: z^m is a unit at the fixed point
  linear_term,        // good and off every facet: some z^m is a coordinate
  undecided,
};

std::string to_string(ConeClass c);
std::optional<ConeClass> cone_class_from_string(const std::string& s);

struct CertificateEntry {
  ConeIndices cone;
  ConeClass cls = ConeClass::undecided;
  IntVector sum;
  Integer r;
  std::optional<IntVector> witness;  // m with a unit exponent vector, for linear_term

  friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct SmoothnessCertificate {
  std::uint64_t fan_id = 0;
  bool smooth = false;  // no entry is undecided
  std::vector<CertificateEntry> cones;  // aligned with f.max_cones()

  friend bool operator==(const SmoothnessCertificate&, const SmoothnessCertificate&) = default;
};

/// Throws std::invalid_argument when delta is not 4-dimensional or f fails
/// validate_delta_maximal against delta.
SmoothnessCertificate smoothness_certificate(const Fan& f, const LatticePolytope& delta);

/// A full-dimensional empty simplicial cone of lattice points of delta that is
/// not unimodular and whose generators share no facet.
struct RemarkWitness {
  ConeIndices cone;  // into delta.nonzero_points()
  std::vector<IntVector> generators;
  Integer det;
};

/// The lexicographically first witness, or nothing. Dimension 4 or 5.
std::optional<RemarkWitness> remark_witness(const LatticePolytope& delta);

namespace reference {

/// Serial scan in the same order, exact arithmetic throughout, no pair memo.
std::optional<RemarkWitness> remark_witness(const LatticePolytope& delta);

}  // namespace reference

}  // namespace deltafan

#endif  // DELTAFAN_SMOOTHCERT_HPP
