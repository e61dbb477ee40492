#include "deltafan/fan.hpp"

#include "deltafan/kernels.hpp"
#include "deltafan/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace deltafan {

Fan::Fan(std::size_t dim, std::vector<IntVector> points, std::vector<ConeIndices> max_cones)
    : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("Fan: dimension must be positive");
  for (const auto& p : points) {
    if (p.dim() != dim) throw std::invalid_argument("Fan: point " + p.to_string() + " has wrong dimension");
    if (p.is_zero()) throw std::invalid_argument("Fan: zero point in the ray table");
    if (!is_primitive(p)) throw std::invalid_argument("Fan: point " + p.to_string() + " is not primitive");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<std::size_t> remap(points.size());
  points_.reserve(points.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && points[order[k]] == points[order[k - 1]]) {
      throw std::invalid_argument("Fan: repeated point " + points[order[k]].to_string());
    }
    remap[order[k]] = k;
    points_.push_back(points[order[k]]);
  }
  for (auto& c : max_cones) {
    for (auto& i : c) {
      if (i >= points.size()) throw std::invalid_argument("Fan: cone index out of range");
      i = remap[i];
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.empty()) throw std::invalid_argument("Fan: empty max cone");
  }
  std::sort(max_cones.begin(), max_cones.end());
  max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());
  cones_ = std::move(max_cones);
}

std::vector<IntVector> Fan::generators(const ConeIndices& cone) const {
  std::vector<IntVector> out;
  out.reserve(cone.size());
  for (auto i : cone) out.push_back(points_[i]);
  return out;
}

std::optional<std::size_t> Fan::index_of(const IntVector& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  if (it == points_.end() || !(*it == x)) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool Fan::has_cone(const ConeIndices& cone) const {
  return std::binary_search(cones_.begin(), cones_.end(), cone);
}

std::vector<std::size_t> Fan::used_points() const {
  std::vector<bool> used(points_.size(), false);
  for (const auto& c : cones_)
    for (auto i : c) used[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(i);
  return out;
}

bool cone_contains(std::span<const IntVector> gens, const IntVector& x) {
  if (gens.empty()) return x.is_zero();
  const std::size_t d = x.dim();
  if (rank(gens) == gens.size()) {
    std::vector<IntVector> all(gens.begin(), gens.end());
    all.push_back(x);
    kernels::PointTable<Integer> table(all);
    std::vector<std::size_t> idx(gens.size());
    std::iota(idx.begin(), idx.end(), 0);
    kernels::SimplicialSolver<Integer> solver;
    solver.reset(table, idx);
    return solver.contains(table[gens.size()]);
  }
  lp::Problem p;
  for (std::size_t j = 0; j < gens.size(); ++j) p.add_var();
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<lp::Term> terms;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (gens[j][i] != 0) terms.push_back({j, Rational(gens[j][i])});
    }
    p.add(std::move(terms), lp::Relation::equal, Rational(x[i]));
  }
  return lp::solve(p).status == lp::Status::optimal;
}

bool is_unimodular(std::span<const IntVector> gens) {
  if (rank(gens) != gens.size()) throw std::invalid_argument("is_unimodular: dependent generators");
  return maximal_minor_gcd(gens) == 1;
}

Fan face_fan(const LatticePolytope& p) {
  if (!p.origin_interior()) throw OriginNotInteriorError("face_fan: origin is not an interior point");
  std::vector<IntVector> rays;
  for (const auto& v : p.vertices()) rays.push_back(primitive(v));
  std::vector<ConeIndices> cones;
  bool simplicial = true;
  for (const auto& f : p.facets()) {
    cones.push_back(f.vertices);
    simplicial &= f.vertices.size() == p.dim();
  }
  Fan fan(p.dim(), std::move(rays), std::move(cones));
  fan.simplicial = tristate(simplicial);
  fan.complete = Tristate::yes;
  fan.projective = Tristate::yes;
  return fan;
}

namespace {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

bool in_cone(const std::vector<ConeFacet>& facets, const IntVector& x) {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const ConeFacet& f) { return dot(f.normal, x) >= 0; });
}

ConeIndices intersection(const ConeIndices& a, const ConeIndices& b) {
  ConeIndices out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ConeIndices difference(const ConeIndices& a, const ConeIndices& b) {
  ConeIndices out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string cone_string(const ConeIndices& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

struct FanGeometry {
  std::vector<std::vector<ConeFacet>> facets;
  std::map<ConeIndices, std::vector<std::size_t>> ridges;  // facet rays -> max cones
};

FanGeometry geometry(const Fan& f) {
  FanGeometry g;
  g.facets.resize(f.max_cones().size());
  for (std::size_t i = 0; i < f.max_cones().size(); ++i) {
    g.facets[i] = cone_facets(f.points(), f.max_cones()[i]);
    for (const auto& fc : g.facets[i]) g.ridges[fc.rays].push_back(i);
  }
  return g;
}

// A facet normal in a fixed scalar type, pointing back at the facet's rays.
template <class T>
struct Normal {
  const ConeIndices* rays;
  std::vector<T> normal;
};

template <class T>
struct Accumulator {
  using type = T;
};
template <>
struct Accumulator<std::int64_t> {
  using type = __int128;
};

// Certificates for proper intersection that need no LP: a generator of one
// cone inside the other, common generators spanning no face, or one of three
// candidate separating hyperplanes. nullopt when none of them decides.
template <class T, class Point>
std::optional<bool> quick_proper(const Point& point, std::size_t d, const ConeIndices& a,
                                 const std::vector<Normal<T>>& fa, const ConeIndices& b,
                                 const std::vector<Normal<T>>& fb) {
  using Acc = typename Accumulator<T>::type;
  auto dot = [&](const std::vector<T>& h, std::size_t j) {
    const auto& x = point(j);
    Acc s = 0;
    for (std::size_t i = 0; i < d; ++i) s += Acc(h[i]) * Acc(x[i]);
    return s;
  };
  auto inside = [&](const std::vector<Normal<T>>& fs, std::size_t j) {
    return std::all_of(fs.begin(), fs.end(), [&](const Normal<T>& f) { return dot(f.normal, j) >= 0; });
  };
  const auto common = intersection(a, b);
  const auto only_a = difference(a, common);
  const auto only_b = difference(b, common);
  for (auto j : only_b)
    if (inside(fa, j)) return false;
  for (auto j : only_a)
    if (inside(fb, j)) return false;

  // Sum of the normals of the facets containing `common`: it vanishes on
  // `common` and is positive on a generator exactly when that generator is
  // off the smallest face containing `common`.
  auto face_functional = [&](const std::vector<Normal<T>>& fs) {
    std::vector<T> h(d, T(0));
    for (const auto& f : fs) {
      if (!std::includes(f.rays->begin(), f.rays->end(), common.begin(), common.end())) continue;
      for (std::size_t i = 0; i < d; ++i) h[i] += f.normal[i];
    }
    return h;
  };
  const auto ha = face_functional(fa);
  const auto hb = face_functional(fb);
  for (auto j : only_a)
    if (dot(ha, j) == 0) return false;  // common generators do not span a face of a
  for (auto j : only_b)
    if (dot(hb, j) == 0) return false;

  // h separates when it is positive on only_a and negative on only_b; `sa` and
  // `sb` scale ha and hb.
  auto separates = [&](int sa, int sb) {
    std::vector<T> h(d);
    for (std::size_t i = 0; i < d; ++i) h[i] = T(sa) * ha[i] - T(sb) * hb[i];
    for (auto j : only_a)
      if (dot(h, j) <= 0) return false;
    for (auto j : only_b)
      if (dot(h, j) >= 0) return false;
    return true;
  };
  if (separates(1, 0) || separates(0, 1) || separates(1, 1)) return true;
  return std::nullopt;
}

// Exact test: some h vanishes on the common generators, is >= 1 on the rest
// of a and <= -1 on the rest of b.
bool separable_by_lp(std::span<const IntVector> points, const ConeIndices& a, const ConeIndices& b) {
  const std::size_t d = points[a.front()].dim();
  const auto common = intersection(a, b);
  lp::Problem p;
  for (std::size_t i = 0; i < d; ++i) p.add_var(true);
  auto row = [&](const IntVector& x) {
    std::vector<lp::Term> t;
    for (std::size_t i = 0; i < d; ++i)
      if (x[i] != 0) t.push_back({i, Rational(x[i])});
    return t;
  };
  for (auto j : common) p.add(row(points[j]), lp::Relation::equal, 0);
  for (auto j : difference(a, common)) p.add(row(points[j]), lp::Relation::greater_equal, 1);
  for (auto j : difference(b, common)) p.add(row(points[j]), lp::Relation::less_equal, -1);
  return lp::solve(p).status == lp::Status::optimal;
}

// Points and facet normals as int64 when every entry is below 2^30, so that
// sums of up to 2^20 normals and their products with points cannot overflow.
struct SmallGeometry {
  std::size_t d = 0;
  std::vector<std::int64_t> points;  // row-major
  std::vector<std::vector<Normal<std::int64_t>>> facets;
};

std::optional<SmallGeometry> small_geometry(const Fan& f, const FanGeometry& g) {
  constexpr std::int64_t kBound = std::int64_t(1) << 30;
  auto small = [&](const Integer& x) { return x < kBound && x > -kBound; };
  SmallGeometry s;
  s.d = f.dim();
  for (const auto& p : f.points()) {
    for (std::size_t i = 0; i < s.d; ++i) {
      if (!small(p[i])) return std::nullopt;
      s.points.push_back(p[i].convert_to<std::int64_t>());
    }
  }
  for (const auto& fs : g.facets) {
    if (fs.size() > (std::size_t(1) << 20)) return std::nullopt;
    auto& out = s.facets.emplace_back();
    for (const auto& fc : fs) {
      std::vector<std::int64_t> n(s.d);
      for (std::size_t i = 0; i < s.d; ++i) {
        if (!small(fc.normal[i])) return std::nullopt;
        n[i] = fc.normal[i].convert_to<std::int64_t>();
      }
      out.push_back({&fc.rays, std::move(n)});
    }
  }
  return s;
}

// For a pure simplicial fan whose ridges each lie in exactly two max cones:
// true when the two cones at every ridge lie on opposite sides of it and some
// generic point lies in exactly one max cone. The covering number is then 1
// off a codimension-2 set, which forces the cones to meet face to face, so
// no pairwise test is needed. False means "undecided".
bool covers_once(const Fan& f, const FanGeometry& g) {
  const auto& cones = f.max_cones();
  const std::size_t d = f.dim();
  for (const auto& c : cones)
    if (c.size() != d) return false;
  for (const auto& [ridge, owners] : g.ridges) {
    const auto& fa = g.facets[owners[0]];
    const auto it = std::find_if(fa.begin(), fa.end(), [&](const ConeFacet& x) { return x.rays == ridge; });
    const auto beyond = difference(cones[owners[1]], ridge);
    if (dot(it->normal, f.points()[beyond.front()]) >= 0) return false;
  }
  // A point (1, k, k^2, ...) on the moment curve lies on a given hyperplane
  // for at most d-1 values of k, so this loop ends.
  for (long k = 2;; ++k) {
    IntVector p(d);
    Integer power = 1;
    for (std::size_t i = 0; i < d; ++i, power *= k) p[i] = power;
    std::size_t hits = 0;
    bool generic = true;
    for (std::size_t i = 0; i < cones.size() && generic; ++i) {
      bool inside = true;
      for (const auto& fc : g.facets[i]) {
        const int s = sign(dot(fc.normal, p));
        if (s == 0) generic = false;
        if (s < 0) inside = false;
      }
      if (inside) ++hits;
    }
    if (generic) return hits == 1;
  }
}

// Dimension, ridge and pairwise-intersection findings.
std::vector<Violation> structure_violations(const Fan& f, const FanGeometry& g) {
  std::vector<Violation> out;
  const auto& cones = f.max_cones();
  if (cones.empty()) {
    out.push_back({Violation::Kind::incomplete, "fan has no max cones", {}});
    return out;
  }
  bool full = true;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (g.facets[i].empty()) {
      full = false;
      out.push_back({Violation::Kind::incomplete,
                     "max cone " + cone_string(cones[i]) + " is not full-dimensional", {i}});
    }
  }
  if (!full) return out;
  for (const auto& [ridge, owners] : g.ridges) {
    if (owners.size() == 2) continue;
    if (owners.size() == 1) {
      out.push_back({Violation::Kind::incomplete,
                     "ridge " + cone_string(ridge) + " lies in only one max cone", owners});
    } else {
      out.push_back({Violation::Kind::overlap,
                     "ridge " + cone_string(ridge) + " lies in " + std::to_string(owners.size()) +
                         " max cones",
                     owners});
    }
  }
  if (out.empty() && covers_once(f, g)) return out;
  const auto small = small_geometry(f, g);
  auto proper = [&](std::size_t i, std::size_t j) {
    if (small) {
      auto point = [&](std::size_t k) { return small->points.data() + k * small->d; };
      const auto v = quick_proper<std::int64_t>(point, small->d, cones[i], small->facets[i], cones[j],
                                                small->facets[j]);
      return v ? *v : separable_by_lp(f.points(), cones[i], cones[j]);
    }
    return intersect_properly(f.points(), cones[i], g.facets[i], cones[j], g.facets[j]);
  };
  std::vector<std::vector<Violation>> per(cones.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      if (!proper(i, j)) {
        per[i].push_back({Violation::Kind::overlap,
                          "max cones " + cone_string(cones[i]) + " and " + cone_string(cones[j]) +
                              " do not meet in a common face",
                          {i, j}});
      }
    }
  }
  for (auto& v : per)
    for (auto& x : v) out.push_back(std::move(x));
  return out;
}

// Wall inequalities D h_b - sum_v lambda_v h_v >= delta of a complete simplicial
// fan, one per ridge, where D b = sum_v lambda_v v over the generators v of sigma.
struct Wall {
  std::vector<std::pair<std::size_t, Integer>> terms;
};

std::vector<Wall> simplicial_walls(const Fan& f, const FanGeometry& g) {
  kernels::PointTable<Integer> table(f.points());
  std::vector<Wall> walls;
  for (const auto& [ridge, owners] : g.ridges) {
    if (owners.size() != 2) continue;
    const auto& sigma = f.max_cones()[owners[0]];
    const auto& tau = f.max_cones()[owners[1]];
    const auto b = difference(tau, ridge);
    kernels::SimplicialSolver<Integer> solver;
    solver.reset(table, sigma);
    std::vector<Integer> lambda(sigma.size());
    solver.coefficients(table[b.front()], lambda.data());
    Wall w;
    w.terms.emplace_back(b.front(), solver.det());
    for (std::size_t k = 0; k < sigma.size(); ++k) w.terms.emplace_back(sigma[k], -lambda[k]);
    walls.push_back(std::move(w));
  }
  return walls;
}

std::vector<Integer> integral_heights(const std::vector<Rational>& h) {
  Integer l = 1;
  for (const auto& x : h) l = lcm(l, denominator(x));
  std::vector<Integer> out;
  for (const auto& x : h) out.push_back(numerator(x) * (l / denominator(x)));
  return out;
}

// Strict convexity of the piecewise-linear function with values h on the rays,
// checked against every ray off every max cone.
bool verify_simplicial_heights(const Fan& f, const std::vector<Rational>& h) {
  const auto H = integral_heights(h);
  const auto used = f.used_points();
  kernels::PointTable<Integer> table(f.points());
  const auto& cones = f.max_cones();
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (std::size_t c = 0; c < cones.size(); ++c) {
    kernels::SimplicialSolver<Integer> solver;
    solver.reset(table, cones[c]);
    std::vector<Integer> lambda(cones[c].size());
    for (auto w : used) {
      if (std::binary_search(cones[c].begin(), cones[c].end(), w)) continue;
      solver.coefficients(table[w], lambda.data());
      Integer s = solver.det() * H[w];
      for (std::size_t k = 0; k < lambda.size(); ++k) s -= lambda[k] * H[cones[c][k]];
      if (s <= 0) ok = false;
    }
  }
  return ok;
}

std::optional<std::vector<Rational>> simplicial_support_function(const Fan& f,
                                                                 const FanGeometry& g) {
  const auto walls = simplicial_walls(f, g);
  const std::size_t n = f.points().size();
  // Gordan alternative: min t s.t. A^T y = 0, sum y + t = 1, y, t >= 0.
  // t* = 1 iff some h has A h > 0; the row duals then give h = -pi, delta = pi_last.
  lp::Problem p;
  for (std::size_t w = 0; w < walls.size(); ++w) p.add_var();
  const auto t = p.add_var();
  p.objective.assign(p.num_vars, Rational(0));
  p.objective[t] = 1;
  std::vector<std::vector<lp::Term>> rows(n);
  for (std::size_t w = 0; w < walls.size(); ++w) {
    for (const auto& [r, c] : walls[w].terms) rows[r].push_back({w, Rational(c)});
  }
  for (std::size_t r = 0; r < n; ++r) p.add(std::move(rows[r]), lp::Relation::equal, 0);
  std::vector<lp::Term> last;
  for (std::size_t w = 0; w < walls.size(); ++w) last.push_back({w, 1});
  last.push_back({t, 1});
  p.add(std::move(last), lp::Relation::equal, 1);

  // The floating-point solve only proposes a basis; the exact solve starts
  // from it and usually needs few further pivots.
  const auto sol = lp::solve(p);
  if (sol.status != lp::Status::optimal || sol.x[t] == 0) return std::nullopt;
  std::vector<Rational> h(n);
  for (std::size_t r = 0; r < n; ++r) h[r] = -sol.duals[r];
  if (!verify_simplicial_heights(f, h)) return std::nullopt;
  return h;
}

// Non-simplicial fans: unknown linear forms m_sigma per cone, equal to -h on the
// cone's generators and strictly above -h across every wall.
std::optional<std::vector<Rational>> general_support_function(const Fan& f, const FanGeometry& g) {
  const std::size_t n = f.points().size();
  const std::size_t d = f.dim();
  const auto& cones = f.max_cones();
  lp::Problem p;
  for (std::size_t r = 0; r < n; ++r) p.add_var(true);
  const std::size_t m0 = p.num_vars;
  for (std::size_t k = 0; k < cones.size() * d; ++k) p.add_var(true);
  const auto delta = p.add_var(true);
  p.objective.assign(p.num_vars, Rational(0));
  p.objective[delta] = -1;

  auto pairing = [&](std::size_t c, const IntVector& x) {
    std::vector<lp::Term> terms;
    for (std::size_t i = 0; i < d; ++i)
      if (x[i] != 0) terms.push_back({m0 + c * d + i, Rational(x[i])});
    return terms;
  };
  for (std::size_t c = 0; c < cones.size(); ++c) {
    for (auto v : cones[c]) {
      auto terms = pairing(c, f.points()[v]);
      terms.push_back({v, 1});
      p.add(std::move(terms), lp::Relation::equal, 0);
    }
  }
  for (const auto& [ridge, owners] : g.ridges) {
    if (owners.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const std::size_t c = owners[side];
      const auto beyond = difference(cones[owners[1 - side]], cones[c]);
      for (auto b : beyond) {
        auto terms = pairing(c, f.points()[b]);
        terms.push_back({b, 1});
        terms.push_back({delta, -1});
        p.add(std::move(terms), lp::Relation::greater_equal, 0);
      }
    }
  }
  p.add({{delta, 1}}, lp::Relation::less_equal, 1);
  const auto sol = lp::solve(p);
  if (sol.status != lp::Status::optimal || sol.x[delta] <= 0) return std::nullopt;

  std::vector<Rational> h(sol.x.begin(), sol.x.begin() + static_cast<long>(n));
  const auto used = f.used_points();
  for (std::size_t c = 0; c < cones.size(); ++c) {
    for (auto w : used) {
      Rational s = h[w];
      for (std::size_t i = 0; i < d; ++i) s += sol.x[m0 + c * d + i] * Rational(f.points()[w][i]);
      const bool on = std::binary_search(cones[c].begin(), cones[c].end(), w);
      if (on ? s != 0 : s <= 0) return std::nullopt;
    }
  }
  return h;
}

}  // namespace

std::vector<ConeFacet> cone_facets(std::span<const IntVector> points, const ConeIndices& cone) {
  if (cone.empty()) return {};
  const std::size_t d = points[cone.front()].dim();
  std::vector<IntVector> gens;
  for (auto i : cone) gens.push_back(points[i]);
  if (rank(gens) != d) return {};
  std::vector<ConeFacet> out;
  if (d == 1) {
    out.push_back({{}, primitive(gens.front())});
    return out;
  }
  if (gens.size() == d) {
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<IntVector> rest;
      ConeIndices rays;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        rest.push_back(gens[j]);
        rays.push_back(cone[j]);
      }
      IntVector n = primitive(cross_normal(rest));
      if (dot(n, gens[i]) < 0) n = -n;
      out.push_back({std::move(rays), std::move(n)});
    }
  } else {
    std::set<IntVector> seen;
    for_each_subset(gens.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
      std::vector<IntVector> rest;
      for (auto j : idx) rest.push_back(gens[j]);
      IntVector n = cross_normal(rest);
      if (n.is_zero()) return;
      int side = 0;
      for (const auto& gv : gens) {
        const int s = sign(dot(n, gv));
        if (s == 0) continue;
        if (side == 0) side = s;
        if (s != side) return;
      }
      if (side < 0) n = -n;
      n = primitive(std::move(n));
      if (!seen.insert(n).second) return;
      ConeIndices rays;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (dot(n, gens[j]) == 0) rays.push_back(cone[j]);
      out.push_back({std::move(rays), std::move(n)});
    });
  }
  std::sort(out.begin(), out.end(), [](const ConeFacet& a, const ConeFacet& b) { return a.rays < b.rays; });
  return out;
}

bool intersect_properly(std::span<const IntVector> points, const ConeIndices& a,
                        const std::vector<ConeFacet>& fa, const ConeIndices& b,
                        const std::vector<ConeFacet>& fb) {
  const std::size_t d = points[a.front()].dim();
  auto normals = [](const std::vector<ConeFacet>& fs) {
    std::vector<Normal<Integer>> out;
    for (const auto& f : fs) out.push_back({&f.rays, std::vector<Integer>(f.normal.begin(), f.normal.end())});
    return out;
  };
  auto point = [&](std::size_t j) -> const IntVector& { return points[j]; };
  if (auto v = quick_proper<Integer>(point, d, a, normals(fa), b, normals(fb))) return *v;
  return separable_by_lp(points, a, b);
}

bool is_complete(const Fan& f) {
  const auto g = geometry(f);
  return structure_violations(f, g).empty();
}

std::optional<std::vector<Rational>> support_function(const Fan& f) {
  const auto g = geometry(f);
  for (const auto& fc : g.facets)
    if (fc.empty()) return std::nullopt;
  const bool simplicial = std::all_of(f.max_cones().begin(), f.max_cones().end(),
                                      [&](const ConeIndices& c) { return c.size() == f.dim(); });
  return simplicial ? simplicial_support_function(f, g) : general_support_function(f, g);
}

bool is_projective(const Fan& f) { return support_function(f).has_value(); }

std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::missing_ray: return "missing_ray";
    case Violation::Kind::extra_ray: return "extra_ray";
    case Violation::Kind::non_simplicial: return "non_simplicial";
    case Violation::Kind::overlap: return "overlap";
    case Violation::Kind::incomplete: return "incomplete";
    case Violation::Kind::interior_point: return "interior_point";
  }
  return "unknown";
}

ValidationReport validate_delta_maximal(const Fan& f, const LatticePolytope& delta) {
  ValidationReport report;
  auto& out = report.violations;
  if (f.dim() != delta.dim()) {
    out.push_back({Violation::Kind::incomplete, "fan and polytope dimensions differ", {}});
    return report;
  }
  const auto lattice = delta.nonzero_points();
  const auto used = f.used_points();
  std::vector<bool> is_used(f.points().size(), false);
  for (auto i : used) is_used[i] = true;
  for (const auto& x : lattice) {
    const auto idx = f.index_of(x);
    if (!idx || !is_used[*idx]) {
      out.push_back({Violation::Kind::missing_ray, "lattice point " + x.to_string() + " is not a ray", {}});
    }
  }
  for (auto i : used) {
    if (!std::binary_search(lattice.begin(), lattice.end(), f.points()[i])) {
      out.push_back({Violation::Kind::extra_ray,
                     "ray " + f.points()[i].to_string() + " is not a lattice point of the polytope", {}});
    }
  }
  const auto& cones = f.max_cones();
  bool simplicial = true;
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const auto gens = f.generators(cones[c]);
    if (gens.size() != f.dim() || rank(gens) != f.dim()) {
      simplicial = false;
      out.push_back({Violation::Kind::non_simplicial,
                     "max cone " + cone_string(cones[c]) + " is not a full-dimensional simplicial cone", {c}});
    }
  }
  const auto g = geometry(f);
  for (auto& v : structure_violations(f, g)) out.push_back(std::move(v));

  if (simplicial) {
    // lattice points of delta that are not generators must avoid every max cone
    kernels::dispatch(f.points(), [&](auto tag) {
      using T = typename decltype(tag)::type;
      std::vector<IntVector> all = f.points();
      all.insert(all.end(), lattice.begin(), lattice.end());
      kernels::PointTable<T> table(all);
      const std::size_t base = f.points().size();
      for (std::size_t c = 0; c < cones.size(); ++c) {
        kernels::SimplicialSolver<T> solver;
        solver.reset(table, cones[c]);
        for (std::size_t k = 0; k < lattice.size(); ++k) {
          const auto idx = f.index_of(lattice[k]);
          if (idx && std::binary_search(cones[c].begin(), cones[c].end(), *idx)) continue;
          if (solver.contains(table[base + k])) {
            out.push_back({Violation::Kind::interior_point,
                           "max cone " + cone_string(cones[c]) + " contains lattice point " +
                               lattice[k].to_string(),
                           {c}});
          }
        }
      }
    });
  }
  report.verdict = out.empty();
  return report;
}

std::vector<ConeIndices> skeleton(const Fan& f, std::size_t n) {
  std::set<ConeIndices> faces;
  for (const auto& cone : f.max_cones()) {
    const auto gens = f.generators(cone);
    if (cone.size() == f.dim() && rank(gens) == f.dim()) {
      for (std::size_t k = 1; k <= std::min(n, cone.size()); ++k) {
        for_each_subset(cone.size(), k, [&](const std::vector<std::size_t>& idx) {
          ConeIndices c;
          for (auto j : idx) c.push_back(cone[j]);
          faces.insert(std::move(c));
        });
      }
      continue;
    }
    // Faces of a general cone are the intersections of its facets.
    std::set<ConeIndices> level{cone};
    std::set<ConeIndices> all{cone};
    const auto facets = cone_facets(f.points(), cone);
    while (!level.empty()) {
      std::set<ConeIndices> next;
      for (const auto& face : level) {
        for (const auto& fc : facets) {
          auto meet = intersection(face, fc.rays);
          if (meet.empty() || meet == face) continue;
          if (all.insert(meet).second) next.insert(meet);
        }
      }
      level = std::move(next);
    }
    for (const auto& face : all) {
      if (rank(f.generators(face)) <= n) faces.insert(face);
    }
  }
  std::vector<ConeIndices> out(faces.begin(), faces.end());
  std::stable_sort(out.begin(), out.end(), [](const ConeIndices& a, const ConeIndices& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.dim() != coarse.dim()) return false;
  std::vector<std::vector<ConeFacet>> facets;
  for (const auto& c : coarse.max_cones()) facets.push_back(cone_facets(coarse.points(), c));
  for (const auto& cone : fine.max_cones()) {
    bool inside = false;
    for (const auto& fc : facets) {
      if (fc.empty()) continue;
      inside = std::all_of(cone.begin(), cone.end(),
                           [&](std::size_t i) { return in_cone(fc, fine.points()[i]); });
      if (inside) break;
    }
    if (!inside) return false;
  }
  return true;
}

}  // namespace deltafan
