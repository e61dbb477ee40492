// Independent reference computations for the tests. Deliberately naive: plain
// long long arithmetic, Laplace expansion, exhaustive scans. Nothing here calls
// into the library except for type conversions.

#ifndef DELTAFAN_TESTS_ORACLES_HPP
#define DELTAFAN_TESTS_ORACLES_HPP

#include "deltafan/exactlin.hpp"
#include "deltafan/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

inline Vec to_vec(const deltafan::IntVector& v) {
  Vec out;
  for (const auto& c : v) out.push_back(c.convert_to<long long>());
  return out;
}

inline deltafan::IntVector to_int(const Vec& v) {
  std::vector<deltafan::Integer> c(v.begin(), v.end());
  return deltafan::IntVector(c);
}

inline long long dot(const Vec& a, const Vec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline long long laplace_det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<Vec> minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const long long term = m[0][c] * laplace_det(minor);
    s += (c % 2 == 0) ? term : -term;
  }
  return s;
}

// Rank as the size of the largest nonvanishing minor.
inline std::size_t minor_rank(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t d = rows.front().size();
  for (std::size_t k = std::min(rows.size(), d); k > 0; --k) {
    std::vector<bool> rsel(rows.size(), false), csel(d, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<Vec> m;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (!rsel[r]) continue;
          Vec row;
          for (std::size_t c = 0; c < d; ++c)
            if (csel[c]) row.push_back(rows[r][c]);
          m.push_back(row);
        }
        if (laplace_det(m) != 0) return k;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

inline std::size_t affine_rank(const std::vector<Vec>& pts) {
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec d(pts[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
    diffs.push_back(d);
  }
  return minor_rank(diffs);
}

struct BoxFacet {
  Vec normal;
  long long offset;
  friend bool operator<(const BoxFacet& a, const BoxFacet& b) {
    return a.normal < b.normal;
  }
};

// Facets found by scanning every primitive integer normal in [-bound, bound]^d:
// u is a facet normal iff the maximizers of <u, .> span an affine hyperplane.
inline std::vector<BoxFacet> box_facets(const std::vector<Vec>& verts, long long bound) {
  const std::size_t d = verts.front().size();
  std::vector<BoxFacet> out;
  Vec u(d, -bound);
  while (true) {
    long long g = 0;
    for (auto c : u) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 1) {
      long long best = dot(u, verts.front());
      for (const auto& v : verts) best = std::max(best, dot(u, v));
      std::vector<Vec> tight;
      for (const auto& v : verts)
        if (dot(u, v) == best) tight.push_back(v);
      if (tight.size() >= d && affine_rank(tight) == d - 1) out.push_back({u, best});
    }
    std::size_t i = 0;
    while (i < d && u[i] == bound) u[i++] = -bound;
    if (i == d) break;
    ++u[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Lattice points by scanning [lo, hi]^d against the given facets.
inline std::vector<Vec> box_points(const std::vector<BoxFacet>& facets, std::size_t d,
                                   long long lo, long long hi) {
  std::vector<Vec> out;
  Vec x(d, lo);
  while (true) {
    bool in = true;
    for (const auto& f : facets)
      if (dot(f.normal, x) > f.offset) in = false;
    if (in) out.push_back(x);
    std::size_t i = d;
    while (i > 0 && x[i - 1] == hi) x[--i] = lo;
    if (i == 0) break;
    ++x[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cramer's rule: is x a nonnegative combination of d independent generators?
inline bool simplicial_contains(const std::vector<Vec>& gens, const Vec& x) {
  const std::size_t d = gens.size();
  std::vector<Vec> m(d, Vec(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r][c] = gens[c][r];
  const long long D = laplace_det(m);
  if (D == 0) return false;
  for (std::size_t j = 0; j < d; ++j) {
    auto mj = m;
    for (std::size_t r = 0; r < d; ++r) mj[r][j] = x[r];
    const long long Dj = laplace_det(mj);
    if ((D > 0 && Dj < 0) || (D < 0 && Dj > 0)) return false;
  }
  return true;
}

// Seeded integer directions; scaling makes them stand in for rational ones.
inline std::vector<Vec> ray_directions(std::size_t d, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vec> out;
  while (out.size() < count) {
    Vec v(d);
    for (auto& c : v) c = static_cast<long long>(gen() % 20001) - 10000;
    bool zero = std::all_of(v.begin(), v.end(), [](long long c) { return c == 0; });
    if (!zero) out.push_back(v);
  }
  return out;
}


// Facet normals of a reflexive polytope from its vertices: integral u with
// <u, v> <= 1 everywhere and equality on d independent vertices.
inline std::vector<Vec> reflexive_normals(const std::vector<Vec>& verts) {
  const std::size_t d = verts.front().size();
  std::set<Vec> out;
  std::vector<std::size_t> idx;
  auto visit = [&]() {
    std::vector<Vec> m;
    for (auto i : idx) m.push_back(verts[i]);
    const long long D = laplace_det(m);
    if (D == 0) return;
    Vec u(d);
    for (std::size_t j = 0; j < d; ++j) {
      auto mj = m;
      for (std::size_t r = 0; r < d; ++r) mj[r][j] = 1;
      const long long Dj = laplace_det(mj);
      if (Dj % D != 0) return;
      u[j] = Dj / D;
    }
    for (const auto& v : verts)
      if (dot(u, v) > 1) return;
    out.insert(u);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (idx.size() == d) {
      visit();
      return;
    }
    for (std::size_t i = from; i < verts.size(); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

// Smallest r with x in r * boundary: the largest normal pairing, at least 0.
inline long long multiplicity(const std::vector<Vec>& normals, const Vec& x) {
  long long r = 0;
  for (const auto& u : normals) r = std::max(r, dot(u, x));
  return r;
}

// Some facet contains every point.
inline bool share_facet(const std::vector<Vec>& normals, const std::vector<Vec>& pts) {
  return std::any_of(normals.begin(), normals.end(), [&](const Vec& u) {
    return std::all_of(pts.begin(), pts.end(), [&](const Vec& p) { return dot(u, p) == 1; });
  });
}

// Lattice points m with <m, v> >= -1 on every vertex, by a box scan.
inline std::vector<Vec> dual_points(const std::vector<Vec>& verts, long long bound) {
  const std::size_t d = verts.front().size();
  std::vector<Vec> out;
  Vec m(d, -bound);
  while (true) {
    if (std::all_of(verts.begin(), verts.end(), [&](const Vec& v) { return dot(m, v) >= -1; })) out.push_back(m);
    std::size_t i = d;
    while (i > 0 && m[i - 1] == bound) m[--i] = -bound;
    if (i == 0) break;
    ++m[i - 1];
  }
  return out;
}

}  // namespace oracle

#endif  // DELTAFAN_TESTS_ORACLES_HPP
