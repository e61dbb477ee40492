#include "deltafan/triangulate.hpp"

#include "deltafan/kernels.hpp"
#include "empty_cones.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

namespace deltafan {

namespace {

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Scales rationals by the lcm of their denominators.
std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(numerator(x) * (l / denominator(x)));
  return out;
}

// Heights compared lexicographically: level 0 dominates level 1 dominates level 2.
using Levels = std::vector<std::vector<Integer>>;

// Sign of (D h(w) - sum_v lambda_v h(v)) compared level by level.
template <class T>
int lex_slack(const Levels& h, std::span<const std::size_t> s, std::size_t w, const T& det,
              const std::vector<T>& lambda) {
  for (const auto& level : h) {
    Integer slack = kernels::to_integer(det) * level[w];
    for (std::size_t k = 0; k < s.size(); ++k) slack -= kernels::to_integer(lambda[k]) * level[s[k]];
    if (slack != 0) return slack > 0 ? 1 : -1;
  }
  return 0;
}

// Strict convexity of the lexicographic height function on a simplicial fan:
// every ray off every max cone is lifted strictly above the cone's plane.
bool lex_convex(const Fan& f, const Levels& h) {
  return kernels::dispatch(f.points(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    kernels::PointTable<T> table(f.points());
    const auto used = f.used_points();
    const auto& cones = f.max_cones();
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (std::size_t c = 0; c < cones.size(); ++c) {
      kernels::SimplicialSolver<T> solver;
      if (!solver.reset(table, cones[c])) {
        ok = false;
        continue;
      }
      std::vector<T> lambda(cones[c].size());
      for (auto w : used) {
        if (std::binary_search(cones[c].begin(), cones[c].end(), w)) continue;
        solver.coefficients(table[w], lambda.data());
        if (lex_slack<T>(h, cones[c], w, solver.det(), lambda) <= 0) ok = false;
      }
    }
    return ok;
  });
}

// Regular subdivision of each coarse cone by lexicographic heights. Level 0 is
// linear on every coarse cone and strictly convex across them, so inside a
// cone only levels 1 and 2 decide. Level 2 is reseeded noise that breaks ties.
struct Lifting {
  std::size_t dim = 0;
  std::vector<IntVector> points;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<Integer> level0;
  std::vector<Integer> level1;
};

Fan lift(const Lifting& in, std::uint64_t seed) {
  const std::size_t n = in.points.size();
  const std::size_t d = in.dim;
  for (int attempt = 0; attempt < kHeightAttempts; ++attempt) {
    std::mt19937_64 gen(seed + static_cast<std::uint64_t>(attempt));
    std::vector<Integer> noise(n);
    for (auto& x : noise) x = static_cast<long long>(gen() >> 43) - (1LL << 20);
    const Levels inner{in.level1, noise};

    std::vector<std::vector<ConeIndices>> per_cell(in.cells.size());
    std::vector<char> tie(in.cells.size(), 0);
    kernels::dispatch(in.points, [&](auto tag) {
      using T = typename decltype(tag)::type;
      kernels::PointTable<T> table(in.points);
#pragma omp parallel for schedule(dynamic)
      for (std::size_t c = 0; c < in.cells.size(); ++c) {
        const auto& cell = in.cells[c];
        detail::EmptyConeSearch<T> search(table, cell, cell, d, nullptr);
        kernels::SimplicialSolver<T> solver;
        std::vector<T> lambda(d);
        search.run(0, cell.size(), [&](std::span<const std::size_t> s) {
          solver.reset(table, s);
          for (auto w : cell) {
            if (std::find(s.begin(), s.end(), w) != s.end()) continue;
            solver.coefficients(table[w], lambda.data());
            const int sg = lex_slack<T>(inner, s, w, solver.det(), lambda);
            if (sg < 0) return true;
            if (sg == 0) {
              tie[c] = 1;
              return false;
            }
          }
          per_cell[c].emplace_back(s.begin(), s.end());
          return true;
        });
      }
    });
    if (std::any_of(tie.begin(), tie.end(), [](char t) { return t != 0; })) continue;

    std::vector<ConeIndices> cones;
    for (auto& v : per_cell)
      for (auto& c : v) cones.push_back(std::move(c));
    Fan f(d, in.points, std::move(cones));
    // The Fan constructor sorts points; the inputs are sorted already.
    if (f.points() != in.points) throw std::logic_error("lift: unsorted point table");
    if (f.used_points().size() != n) throw std::logic_error("lift: a lattice point is not a ray");
    if (!lex_convex(f, Levels{in.level0, in.level1, noise})) {
      throw std::logic_error("lift: heights do not certify the subdivision");
    }
    f.simplicial = Tristate::yes;
    f.complete = Tristate::yes;
    f.projective = Tristate::yes;
    return f;
  }
  throw GenericityError("height lifting stayed degenerate after " + std::to_string(kHeightAttempts) +
                        " seeds");
}

Integer norm2(const IntVector& x) {
  Integer s = 0;
  for (const auto& c : x) s += c * c;
  return s;
}

std::vector<MaximalConeCandidate> candidates_from(const LatticePolytope& delta,
                                                  std::vector<ConeIndices> subsets) {
  const auto pts = delta.nonzero_points();
  std::vector<MaximalConeCandidate> out;
  out.reserve(subsets.size());
  for (auto& s : subsets) {
    std::vector<IntVector> gens;
    for (auto i : s) gens.push_back(pts[i]);
    const bool common = !common_facets(gens, delta).empty();
    out.push_back({std::move(s), true, common});
  }
  return out;
}

}  // namespace

Fan mpcp(const LatticePolytope& delta, std::uint64_t seed) {
  if (!is_reflexive(delta)) throw std::invalid_argument("mpcp: polytope is not reflexive");
  Lifting in;
  in.dim = delta.dim();
  in.points = delta.nonzero_points();
  for (const auto& facet : delta.facets()) {
    std::vector<std::size_t> cell;
    for (std::size_t i = 0; i < in.points.size(); ++i)
      if (dot(facet.normal, in.points[i]) == facet.offset) cell.push_back(i);
    in.cells.push_back(std::move(cell));
  }
  // The gauge of delta is 1 on every boundary point; |x|^2 is strictly convex
  // on each facet hyperplane.
  in.level0.assign(in.points.size(), Integer(1));
  for (const auto& x : in.points) in.level1.push_back(norm2(x));
  return lift(in, seed);
}

std::vector<MaximalConeCandidate> enumerate_maximal_cones(const LatticePolytope& delta) {
  const auto pts = delta.nonzero_points();
  const auto all = iota_indices(pts.size());
  const std::size_t d = delta.dim();
  std::vector<std::vector<ConeIndices>> per_first(pts.size());
  kernels::dispatch(pts, [&](auto tag) {
    using T = typename decltype(tag)::type;
    kernels::PointTable<T> table(pts);
    auto memo = detail::make_pair_memo(pts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t first = 0; first < pts.size(); ++first) {
      detail::EmptyConeSearch<T> search(table, all, all, d, memo.get());
      search.run(first, first + 1, [&](std::span<const std::size_t> s) {
        per_first[first].emplace_back(s.begin(), s.end());
        return true;
      });
    }
  });
  std::vector<ConeIndices> subsets;
  for (auto& v : per_first)
    for (auto& s : v) subsets.push_back(std::move(s));
  return candidates_from(delta, std::move(subsets));
}

namespace reference {

std::vector<MaximalConeCandidate> enumerate_maximal_cones(const LatticePolytope& delta) {
  const auto pts = delta.nonzero_points();
  const std::size_t d = delta.dim();
  std::vector<ConeIndices> subsets;
  if (pts.size() < d) return {};
  ConeIndices idx = iota_indices(d);
  while (true) {
    std::vector<IntVector> gens;
    for (auto i : idx) gens.push_back(pts[i]);
    if (det(gens) != 0) {
      bool empty = true;
      for (std::size_t q = 0; q < pts.size() && empty; ++q) {
        if (std::find(idx.begin(), idx.end(), q) != idx.end()) continue;
        if (cone_contains(gens, pts[q])) empty = false;
      }
      if (empty) subsets.push_back(idx);
    }
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == pts.size() - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return candidates_from(delta, std::move(subsets));
}

}  // namespace reference

namespace {

// Backtracking over ridge matchings. Ridge ids follow the lexicographic order
// of the ridge index tuples, so the smallest open ridge is the smallest id.
class FanSearch {
 public:
  FanSearch(const std::vector<IntVector>& pts, const std::vector<MaximalConeCandidate>& cands)
      : pts_(pts), d_(pts.front().dim()) {
    std::map<ConeIndices, std::size_t> ids;
    for (const auto& c : cands) cones_.push_back(c.generators);
    for (const auto& c : cones_) {
      for (std::size_t k = 0; k < d_; ++k) {
        ConeIndices r;
        for (std::size_t j = 0; j < d_; ++j)
          if (j != k) r.push_back(c[j]);
        ids.emplace(std::move(r), 0);
      }
    }
    std::size_t next = 0;
    for (auto& [r, id] : ids) {
      id = next++;
      std::vector<IntVector> gens;
      for (auto i : r) gens.push_back(pts_[i]);
      normals_.push_back(d_ == 1 ? IntVector{1} : cross_normal(gens));
    }
    by_ridge_.resize(2 * ids.size());
    for (std::size_t c = 0; c < cones_.size(); ++c) {
      std::vector<std::pair<std::size_t, int>> rs;
      for (std::size_t k = 0; k < d_; ++k) {
        ConeIndices r;
        for (std::size_t j = 0; j < d_; ++j)
          if (j != k) r.push_back(cones_[c][j]);
        const std::size_t id = ids.at(r);
        const int side = dot(normals_[id], pts_[cones_[c][k]]) > 0 ? 1 : -1;
        rs.emplace_back(id, side);
        by_ridge_[2 * id + (side > 0)].push_back(c);
      }
      ridges_.push_back(std::move(rs));
    }
    facets_.resize(cones_.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t c = 0; c < cones_.size(); ++c) facets_[c] = cone_facets(pts_, cones_[c]);
  }

  // A point off every ridge hyperplane; it lies in the interior of exactly one
  // max cone of any complete fan built from these candidates.
  std::vector<std::size_t> start_cones() const {
    IntVector p(d_);
    for (long long t = 2;; ++t) {
      Integer pw = 1;
      for (std::size_t i = 0; i < d_; ++i, pw *= t) p[i] = pw;
      bool generic = std::all_of(normals_.begin(), normals_.end(),
                                 [&](const IntVector& n) { return dot(n, p) != 0; });
      if (generic) break;
    }
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cones_.size(); ++c) {
      bool in = std::all_of(facets_[c].begin(), facets_[c].end(),
                            [&](const ConeFacet& f) { return dot(f.normal, p) > 0; });
      if (in) out.push_back(c);
    }
    return out;
  }

  // All fans whose cone containing the generic point is `start`; stops after
  // `cap` fans.
  std::vector<std::vector<std::size_t>> run(std::size_t start, std::size_t cap) {
    count_.assign(normals_.size(), 0);
    side_.assign(normals_.size(), 0);
    open_.clear();
    chosen_.clear();
    found_.clear();
    cap_ = cap;
    compat_.clear();
    add(start);
    recurse();
    return std::move(found_);
  }

  const std::vector<ConeIndices>& cones() const { return cones_; }

 private:
  bool fits(std::size_t c) const {
    for (const auto& [id, side] : ridges_[c]) {
      if (count_[id] >= 2) return false;
      if (count_[id] == 1 && side_[id] == side) return false;
    }
    return true;
  }

  bool compatible(std::size_t a, std::size_t b) {
    const auto key = std::min(a, b) * cones_.size() + std::max(a, b);
    auto it = compat_.find(key);
    if (it != compat_.end()) return it->second;
    const bool ok = intersect_properly(pts_, cones_[a], facets_[a], cones_[b], facets_[b]);
    compat_.emplace(key, ok);
    return ok;
  }

  void add(std::size_t c) {
    chosen_.push_back(c);
    for (const auto& [id, side] : ridges_[c]) {
      if (++count_[id] == 1) {
        side_[id] = side;
        open_.insert(id);
      } else {
        open_.erase(id);
      }
    }
  }

  void remove(std::size_t c) {
    chosen_.pop_back();
    for (const auto& [id, side] : ridges_[c]) {
      if (--count_[id] == 1) {
        // the other cone stays; its side is the opposite one
        side_[id] = -side;
        open_.insert(id);
      } else {
        side_[id] = 0;
        open_.erase(id);
      }
    }
  }

  void recurse() {
    if (found_.size() >= cap_) return;
    if (open_.empty()) {
      auto f = chosen_;
      std::sort(f.begin(), f.end());
      found_.push_back(std::move(f));
      return;
    }
    const std::size_t id = *open_.begin();
    const int need = -side_[id];
    for (auto c : by_ridge_[2 * id + (need > 0)]) {
      if (!fits(c)) continue;
      bool ok = true;
      for (auto o : chosen_) {
        if (!compatible(c, o)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      add(c);
      recurse();
      remove(c);
      if (found_.size() >= cap_) return;
    }
  }

  const std::vector<IntVector>& pts_;
  std::size_t d_;
  std::vector<ConeIndices> cones_;
  std::vector<IntVector> normals_;
  std::vector<std::vector<std::pair<std::size_t, int>>> ridges_;
  std::vector<std::vector<std::size_t>> by_ridge_;  // 2 * ridge + (side > 0)
  std::vector<std::vector<ConeFacet>> facets_;

  std::vector<unsigned char> count_;
  std::vector<int> side_;
  std::set<std::size_t> open_;
  std::vector<std::size_t> chosen_;
  std::vector<std::vector<std::size_t>> found_;
  std::size_t cap_ = 0;
  std::unordered_map<std::size_t, bool> compat_;
};

}  // namespace

std::vector<Fan> enumerate_delta_maximal(const LatticePolytope& delta, std::size_t limit) {
  const auto pts = delta.nonzero_points();
  const auto cands = enumerate_maximal_cones(delta);
  if (cands.empty()) return {};
  const FanSearch proto(pts, cands);
  const auto starts = proto.start_cones();

  std::vector<std::vector<std::vector<std::size_t>>> per_start(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < starts.size(); ++s) {
    FanSearch search = proto;
    per_start[s] = search.run(starts[s], limit + 1);
  }

  std::vector<Fan> fans;
  for (const auto& branch : per_start) {
    for (const auto& chosen : branch) {
      std::vector<ConeIndices> cones;
      for (auto c : chosen) cones.push_back(proto.cones()[c]);
      fans.emplace_back(delta.dim(), pts, std::move(cones));
    }
  }
  std::sort(fans.begin(), fans.end(),
            [](const Fan& a, const Fan& b) { return a.max_cones() < b.max_cones(); });
  if (fans.size() > limit) {
    fans.resize(limit);
    for (auto& f : fans) f.projective = Tristate::unknown;
    throw LimitExceededError("enumerate_delta_maximal: more than " + std::to_string(limit) + " fans",
                             std::move(fans));
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < fans.size(); ++i) {
    fans[i].simplicial = Tristate::yes;
    fans[i].complete = Tristate::yes;
    fans[i].projective = tristate(is_projective(fans[i]));
  }
  return fans;
}

Fan refine_to(const Fan& sigma1, const LatticePolytope& delta2, std::uint64_t seed) {
  const std::size_t d = sigma1.dim();
  if (delta2.dim() != d) throw std::invalid_argument("refine_to: dimensions differ");
  const auto pts = delta2.nonzero_points();
  for (auto i : sigma1.used_points()) {
    if (!std::binary_search(pts.begin(), pts.end(), sigma1.points()[i])) {
      throw std::invalid_argument("refine_to: ray " + sigma1.points()[i].to_string() +
                                  " is not a lattice point of the target polytope");
    }
  }
  for (const auto& c : sigma1.max_cones()) {
    if (c.size() != d) throw std::invalid_argument("refine_to: input fan is not simplicial");
  }
  if (!is_complete(sigma1)) throw std::invalid_argument("refine_to: input fan is not complete");
  const auto heights = support_function(sigma1);
  if (!heights) throw std::invalid_argument("refine_to: input fan is not projective");
  const auto H = clear_denominators(*heights);

  // Linear pieces of the certificate: ell_sigma agrees with H on sigma's rays.
  const auto& cones = sigma1.max_cones();
  std::vector<std::vector<Rational>> piece(cones.size());
  std::vector<Rational> centre(d);
  for (std::size_t c = 0; c < cones.size(); ++c) {
    std::vector<IntVector> cols(d, IntVector(d));
    IntVector rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& v = sigma1.points()[cones[c][i]];
      for (std::size_t j = 0; j < d; ++j) cols[j][i] = v[j];
      rhs[i] = H[cones[c][i]];
    }
    piece[c] = *coordinates_in(cols, rhs);
    for (std::size_t j = 0; j < d; ++j) centre[j] += piece[c][j];
  }
  for (auto& x : centre) x /= static_cast<long long>(cones.size());

  std::vector<std::vector<ConeFacet>> facets;
  for (const auto& c : cones) facets.push_back(cone_facets(sigma1.points(), c));

  Lifting in;
  in.dim = d;
  in.points = pts;
  in.cells.resize(cones.size());
  std::vector<Rational> f_val(pts.size()), l2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < cones.size(); ++c) {
      const bool in_c = std::all_of(facets[c].begin(), facets[c].end(),
                                    [&](const ConeFacet& f) { return dot(f.normal, pts[i]) >= 0; });
      if (!in_c) continue;
      in.cells[c].push_back(i);
      if (placed) continue;
      placed = true;
      Rational fx = 0, cx = 0;
      for (std::size_t j = 0; j < d; ++j) {
        fx += piece[c][j] * Rational(pts[i][j]);
        cx += centre[j] * Rational(pts[i][j]);
      }
      // F is the max of the pieces and centre their average, so F - centre > 0
      // away from the origin; |x|^2 / (F - centre) is then strictly convex on
      // every slice {F - centre = 1} of a coarse cone.
      const Rational ell = fx - cx;
      if (ell <= 0) throw std::logic_error("refine_to: certificate is not strictly convex");
      f_val[i] = fx;
      l2[i] = Rational(norm2(pts[i])) / ell;
    }
    if (!placed) throw std::invalid_argument("refine_to: input fan does not cover " + pts[i].to_string());
  }
  in.level0 = clear_denominators(f_val);
  in.level1 = clear_denominators(l2);
  return lift(in, seed);
}

Fan refine_to(const Fan& sigma1, const LatticePolytope& delta1, const LatticePolytope& delta2,
              std::uint64_t seed) {
  for (const auto& v : delta1.vertices()) {
    if (!delta2.contains(v)) {
      throw std::invalid_argument("refine_to: vertex " + v.to_string() + " lies outside the target polytope");
    }
  }
  const auto report = validate_delta_maximal(sigma1, delta1);
  if (!report.verdict) {
    throw std::invalid_argument("refine_to: input fan is not Delta-maximal: " + report.violations.front().detail);
  }
  return refine_to(sigma1, delta2, seed);
}

}  // namespace deltafan
