#include "deltafan/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace deltafan {

IntVector::IntVector(std::initializer_list<long long> coords) {
  coords_.reserve(coords.size());
  for (long long c : coords) coords_.emplace_back(c);
}

bool IntVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

IntVector& IntVector::operator+=(const IntVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("IntVector: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("IntVector: dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

IntVector& IntVector::operator*=(const Integer& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

bool operator<(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end());
}

std::string IntVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

IntVector unit_vector(std::size_t dim, std::size_t i) {
  IntVector v(dim);
  v[i] = 1;
  return v;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

IntVector primitive(IntVector v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g > 1) {
    for (auto& c : v) c /= g;
  }
  return v;
}

bool is_primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  return g == 1;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows, IntVector(cols)), cols_(cols) {}

IntMatrix::IntMatrix(std::vector<IntVector> rows) : rows_(std::move(rows)) {
  cols_ = rows_.empty() ? 0 : rows_.front().dim();
  for (const auto& r : rows_) {
    if (r.dim() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
  }
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) t[c][r] = rows_[r][c];
  return t;
}

namespace {

Integer bareiss_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Reduced row echelon form over Q, in place. Returns the pivot column of each
// nonzero row.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

IntVector clear_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i]) * (l / denominator(v[i]));
  return out;
}

}  // namespace

Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
  std::vector<std::vector<Integer>> a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a[r] = m[r].coords();
  return bareiss_det(std::move(a));
}

Integer det(std::span<const IntVector> rows) {
  return det(IntMatrix(std::vector<IntVector>(rows.begin(), rows.end())));
}

std::size_t rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  std::vector<std::vector<Rational>> a;
  a.reserve(vectors.size());
  for (const auto& v : vectors) {
    a.emplace_back(v.begin(), v.end());
  }
  return rref(a).size();
}

std::vector<IntVector> kernel_basis(std::span<const IntVector> columns) {
  const std::size_t n = columns.size();
  if (n == 0) return {};
  const std::size_t d = columns.front().dim();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (columns[c].dim() != d) throw std::invalid_argument("kernel_basis: ragged columns");
    for (std::size_t r = 0; r < d; ++r) a[r][c] = columns[c][r];
  }
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(n);
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][f];
    IntVector v = primitive(clear_denominators(x));
    auto first = std::find_if(v.begin(), v.end(), [](const Integer& c) { return c != 0; });
    if (first != v.end() && *first < 0) v = -v;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<IntVector> dual_basis(std::span<const IntVector> basis) {
  const std::size_t d = basis.size();
  for (const auto& b : basis) {
    if (b.dim() != d) throw std::invalid_argument("dual_basis: expected d vectors in Z^d");
  }
  const Integer D = det(basis);
  if (abs(D) != 1) {
    throw NonUnimodularError("dual_basis: basis has determinant " + D.str() +
                                 ", not a lattice basis",
                             D);
  }
  // Rows of the result form (B^T)^{-1} where B has the basis as rows.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(2 * d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = basis[c][r];
    a[r][d + r] = 1;
  }
  rref(a);
  // Row i of (B^T)^{-1} pairs to delta_ik with column k of B^T, i.e. basis[k].
  std::vector<IntVector> result(d, IntVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) result[i][j] = numerator(a[i][d + j]);
  return result;
}

Integer maximal_minor_gcd(std::span<const IntVector> vectors) {
  const std::size_t k = vectors.size();
  if (k == 0) return 1;
  const std::size_t d = vectors.front().dim();
  if (k > d) return 0;
  Integer g = 0;
  std::vector<std::size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) m[r][c] = vectors[r][cols[c]];
    g = gcd(g, bareiss_det(std::move(m)));
    if (g == 1) return g;
    // next combination of k columns out of d
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == d - k + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g;
}

std::optional<std::vector<Rational>> coordinates_in(std::span<const IntVector> basis,
                                                    const IntVector& x) {
  const std::size_t k = basis.size();
  const std::size_t d = x.dim();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = basis[c][r];
    a[r][k] = x[r];
  }
  const auto pivots = rref(a);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  if (pivots.size() != k) throw std::invalid_argument("coordinates_in: basis vectors are dependent");
  std::vector<Rational> out(k);
  for (std::size_t r = 0; r < k; ++r) out[r] = a[r][k];
  return out;
}

IntVector cross_normal(std::span<const IntVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("cross_normal: no vectors");
  const std::size_t d = vectors.front().dim();
  if (vectors.size() + 1 != d) throw std::invalid_argument("cross_normal: need d-1 vectors");
  IntVector n(d);
  for (std::size_t skip = 0; skip < d; ++skip) {
    std::vector<std::vector<Integer>> m(d - 1, std::vector<Integer>(d - 1));
    for (std::size_t r = 0; r + 1 < d; ++r) {
      std::size_t c2 = 0;
      for (std::size_t c = 0; c < d; ++c) {
        if (c == skip) continue;
        m[r][c2++] = vectors[r][c];
      }
    }
    Integer minor = bareiss_det(std::move(m));
    n[skip] = ((d - 1 + skip) % 2 == 0) ? minor : Integer(-minor);
  }
  return n;
}

}  // namespace deltafan
