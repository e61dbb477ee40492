// Small dense kernels used by the enumeration hot loops.
//
// Everything is templated on the scalar type. The fast instantiation uses
// __int128 and is only selected when every coordinate has absolute value at
// most kWideCoordBound in dimension at most kWideMaxDim; in that range every
// Bareiss intermediate (a product of two minors) stays below 2^112, so the
// arithmetic is exact. Anything else runs on the GMP Integer instantiation.

#ifndef DELTAFAN_KERNELS_HPP
#define DELTAFAN_KERNELS_HPP

#include "deltafan/exactlin.hpp"

#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace deltafan::kernels {

using Wide = __int128;

inline constexpr long kWideCoordBound = 255;
inline constexpr std::size_t kWideMaxDim = 6;

inline bool fits_wide(std::span<const IntVector> points) {
  for (const auto& p : points) {
    if (p.dim() > kWideMaxDim) return false;
    for (const auto& c : p) {
      if (c > kWideCoordBound || c < -kWideCoordBound) return false;
    }
  }
  return true;
}

template <class T>
T from_integer(const Integer& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v;
  } else {
    return static_cast<T>(v.convert_to<long long>());
  }
}

template <class T>
Integer to_integer(const T& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v;
  } else {
    // |v| < 2^112 always holds on the fast path; split into two 64-bit halves.
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Integer hi = static_cast<unsigned long long>(u >> 64);
    Integer lo = static_cast<unsigned long long>(u & ~0ULL);
    Integer r = (hi << 64) + lo;
    return neg ? Integer(-r) : r;
  }
}

template <class T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

/// Flat row-major copy of a list of points in the kernel's scalar type.
template <class T>
class PointTable {
 public:
  PointTable() = default;
  explicit PointTable(std::span<const IntVector> points)
      : dim_(points.empty() ? 0 : points.front().dim()), count_(points.size()) {
    data_.reserve(dim_ * count_);
    for (const auto& p : points)
      for (const auto& c : p) data_.push_back(from_integer<T>(c));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return count_; }
  const T* operator[](std::size_t i) const { return data_.data() + i * dim_; }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<T> data_;
};

/// Fraction-free Gauss-Jordan on the k x k matrix a (row-major). On success
/// returns true, writes D into det and adj with a * adj = D * I, normalized so
/// that D > 0. Returns false when a is singular.
template <class T>
bool adjugate(std::vector<T> a, std::size_t k, T& det, std::vector<T>& adj) {
  const std::size_t w = 2 * k;
  std::vector<T> m(k * w, T(0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r * w + c] = a[r * k + c];
    m[r * w + k + r] = 1;
  }
  T prev = 1;
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t piv = p;
    while (piv < k && m[piv * w + p] == 0) ++piv;
    if (piv == k) return false;
    if (piv != p)
      for (std::size_t c = 0; c < w; ++c) std::swap(m[p * w + c], m[piv * w + c]);
    const T pp = m[p * w + p];
    for (std::size_t i = 0; i < k; ++i) {
      if (i == p) continue;
      const T f = m[i * w + p];
      for (std::size_t c = 0; c < w; ++c) {
        if (c == p) continue;
        m[i * w + c] = (pp * m[i * w + c] - f * m[p * w + c]) / prev;
      }
      m[i * w + p] = 0;
    }
    prev = pp;
  }
  det = m[0];
  adj.assign(k * k, T(0));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) adj[r * k + c] = m[r * w + k + c];
  if (det < 0) {
    det = -det;
    for (auto& x : adj) x = -x;
  }
  return true;
}

template <class T>
T determinant(const T* const* rows, std::size_t k) {
  std::vector<T> a(k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) a[r * k + c] = rows[r][c];
  T prev = 1;
  T sign = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p * k + p] == 0) {
      std::size_t s = p + 1;
      while (s < k && a[s * k + p] == 0) ++s;
      if (s == k) return T(0);
      for (std::size_t c = 0; c < k; ++c) std::swap(a[p * k + c], a[s * k + c]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i)
      for (std::size_t j = p + 1; j < k; ++j)
        a[i * k + j] = (a[p * k + p] * a[i * k + j] - a[i * k + p] * a[p * k + j]) / prev;
    prev = a[p * k + p];
  }
  return sign * a[k * k - 1];
}

/// Solves x = sum_j lambda_j g_j for k <= d linearly independent generators.
/// Coefficients come back scaled by det() > 0, so that they stay integral.
template <class T>
class SimplicialSolver {
 public:
  /// Returns false when the generators are linearly dependent.
  bool reset(const PointTable<T>& table, std::span<const std::size_t> idx) {
    d_ = table.dim();
    k_ = idx.size();
    gens_.resize(k_);
    for (std::size_t j = 0; j < k_; ++j) gens_[j] = table[idx[j]];
    return factor();
  }

  bool reset(std::span<const T* const> gens, std::size_t dim) {
    d_ = dim;
    k_ = gens.size();
    gens_.assign(gens.begin(), gens.end());
    return factor();
  }

  std::size_t size() const { return k_; }
  const T& det() const { return det_; }
  const T* generator(std::size_t j) const { return gens_[j]; }

  /// Writes det() * lambda into out (k entries). Returns false if x is
  /// outside the linear span of the generators.
  bool coefficients(const T* x, T* out) const {
    for (std::size_t r = 0; r < k_; ++r) {
      T s = 0;
      for (std::size_t c = 0; c < k_; ++c) s += adj_[r * k_ + c] * x[rows_[c]];
      out[r] = s;
    }
    if (k_ == d_) return true;
    for (std::size_t i = 0; i < d_; ++i) {
      T s = 0;
      for (std::size_t j = 0; j < k_; ++j) s += out[j] * gens_[j][i];
      if (s != det_ * x[i]) return false;
    }
    return true;
  }

  /// Closed-cone membership.
  bool contains(const T* x) const {
    T buf[kWideMaxDim];
    std::vector<T> heap;
    T* out = buf;
    if constexpr (std::is_same_v<T, Integer>) {
      heap.resize(k_);
      out = heap.data();
    } else {
      if (k_ > kWideMaxDim) {
        heap.resize(k_);
        out = heap.data();
      }
    }
    if (!coefficients(x, out)) return false;
    for (std::size_t j = 0; j < k_; ++j)
      if (out[j] < 0) return false;
    return true;
  }

 private:
  bool factor() {
    // Pick the lexicographically first set of k coordinates with a nonzero minor.
    rows_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) rows_[i] = i;
    if (k_ == 0) {
      det_ = 1;
      adj_.clear();
      return true;
    }
    if (k_ > d_) return false;
    std::vector<T> a(k_ * k_);
    while (true) {
      for (std::size_t r = 0; r < k_; ++r)
        for (std::size_t c = 0; c < k_; ++c) a[r * k_ + c] = gens_[c][rows_[r]];
      if (adjugate(a, k_, det_, adj_)) return true;
      std::size_t i = k_;
      while (i > 0 && rows_[i - 1] == d_ - k_ + i - 1) --i;
      if (i == 0) return false;
      ++rows_[i - 1];
      for (std::size_t j = i; j < k_; ++j) rows_[j] = rows_[j - 1] + 1;
    }
  }

  std::size_t d_ = 0;
  std::size_t k_ = 0;
  std::vector<const T*> gens_;
  std::vector<std::size_t> rows_;
  std::vector<T> adj_;
  T det_ = 0;
};

/// Calls f(std::type_identity<T>{}) with T = Wide when the points allow it,
/// otherwise with T = Integer.
template <class F>
decltype(auto) dispatch(std::span<const IntVector> points, F&& f) {
  if (fits_wide(points)) return std::forward<F>(f)(std::type_identity<Wide>{});
  return std::forward<F>(f)(std::type_identity<Integer>{});
}

}  // namespace deltafan::kernels

#endif  // DELTAFAN_KERNELS_HPP
