// Exact integer linear algebra over Z^d and Q^d.
//
// Every geometric predicate in the library bottoms out here. Nothing in this
// header touches floating point.

#ifndef DELTAFAN_EXACTLIN_HPP
#define DELTAFAN_EXACTLIN_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltafan {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// A point of N or M: an ordered tuple of arbitrary-precision integers.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t dim) : coords_(dim) {}
  explicit IntVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  IntVector(std::initializer_list<long long> coords);

  std::size_t dim() const { return coords_.size(); }
  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }

  Integer& operator[](std::size_t i) { return coords_[i]; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  auto begin() { return coords_.begin(); }
  auto end() { return coords_.end(); }

  const std::vector<Integer>& coords() const { return coords_; }

  bool is_zero() const;

  IntVector& operator+=(const IntVector& o);
  IntVector& operator-=(const IntVector& o);
  IntVector& operator*=(const Integer& s);

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& s, IntVector a) { return a *= s; }
  friend IntVector operator-(IntVector a) { return a *= Integer(-1); }

  friend bool operator==(const IntVector& a, const IntVector& b) {
    return a.coords_ == b.coords_;
  }
  // Lexicographic on the coordinate tuple; shorter vectors first.
  friend bool operator<(const IntVector& a, const IntVector& b);

  std::string to_string() const;

 private:
  std::vector<Integer> coords_;
};

IntVector unit_vector(std::size_t dim, std::size_t i);

/// The pairing <m, n> between M and N (or any two integer vectors).
Integer dot(const IntVector& a, const IntVector& b);

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
IntVector primitive(IntVector v);

bool is_primitive(const IntVector& v);

/// Row-major integer matrix; every row has the same length.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  explicit IntMatrix(std::vector<IntVector> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows() == cols(); }

  IntVector& operator[](std::size_t r) { return rows_[r]; }
  const IntVector& operator[](std::size_t r) const { return rows_[r]; }
  const std::vector<IntVector>& row_vectors() const { return rows_; }

  IntMatrix transposed() const;

 private:
  std::vector<IntVector> rows_;
  std::size_t cols_ = 0;
};

/// Raised by dual_basis when the input is not a lattice basis.
class NonUnimodularError : public std::domain_error {
 public:
  NonUnimodularError(const std::string& what, Integer det)
      : std::domain_error(what), det_(std::move(det)) {}
  const Integer& determinant() const { return det_; }

 private:
  Integer det_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws std::invalid_argument on a non-square matrix.
Integer det(const IntMatrix& m);

/// Determinant of the square matrix whose rows are the given vectors.
Integer det(std::span<const IntVector> rows);

std::size_t rank(std::span<const IntVector> vectors);

/// Basis of {x in Z^n : sum_i x_i * columns[i] = 0}. Each vector is primitive
/// with its first nonzero entry positive; the order follows the free columns
/// of the reduced row echelon form.
std::vector<IntVector> kernel_basis(std::span<const IntVector> columns);

/// Given a lattice basis v_1..v_d of N, the basis v'_1..v'_d of M with
/// <v'_i, v_j> = delta_ij. Throws NonUnimodularError when |det| != 1 and
/// std::invalid_argument when the input is not square.
std::vector<IntVector> dual_basis(std::span<const IntVector> basis);

/// gcd of all k x k minors of the k given vectors (0 if dependent).
/// Equals 1 exactly when the vectors extend to a basis of Z^d.
Integer maximal_minor_gcd(std::span<const IntVector> vectors);

/// Rational coordinates of x in the (linearly independent) family `basis`,
/// or nothing if x is not in their span.
std::optional<std::vector<Rational>> coordinates_in(std::span<const IntVector> basis,
                                                    const IntVector& x);

/// Normal vector to the hyperplane spanned by d-1 vectors in Z^d (the
/// generalized cross product, entries are signed maximal minors). Zero when
/// the vectors are dependent.
IntVector cross_normal(std::span<const IntVector> vectors);

}  // namespace deltafan

#endif  // DELTAFAN_EXACTLIN_HPP
