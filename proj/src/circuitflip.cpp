#include "deltafan/circuitflip.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace deltafan {

namespace {

ConeIndices without(const ConeIndices& s, std::size_t x) {
  ConeIndices out;
  for (auto i : s)
    if (i != x) out.push_back(i);
  return out;
}

ConeIndices merged(const ConeIndices& a, const ConeIndices& b) {
  ConeIndices out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void classify(OrientedCircuit& c) {
  c.plus.clear();
  c.zero.clear();
  c.minus.clear();
  for (std::size_t i = 0; i < c.support.size(); ++i) {
    const auto& b = c.coeffs[i];
    (b > 0 ? c.plus : (b < 0 ? c.minus : c.zero)).push_back(c.support[i]);
  }
}

// Circuit on `support` oriented so that `minus_point` has a negative
// coefficient; nothing when its coefficient is zero or the points do not span.
std::optional<OrientedCircuit> oriented_at(std::span<const IntVector> points, const ConeIndices& support,
                                           std::size_t minus_point) {
  std::vector<IntVector> cols;
  for (auto i : support) cols.push_back(points[i]);
  if (rank(cols) != points[support.front()].dim()) return std::nullopt;
  const auto ker = kernel_basis(cols);
  if (ker.size() != 1) return std::nullopt;
  OrientedCircuit c;
  c.support = support;
  c.coeffs.assign(ker.front().begin(), ker.front().end());
  const auto pos = std::lower_bound(support.begin(), support.end(), minus_point) - support.begin();
  if (c.coeffs[pos] == 0) return std::nullopt;
  if (c.coeffs[pos] > 0)
    for (auto& b : c.coeffs) b = -b;
  classify(c);
  return c;
}

// Max cones containing a given set, through per-point posting lists.
class ConeLookup {
 public:
  explicit ConeLookup(const Fan& f) : f_(f), postings_(f.points().size()) {
    for (std::size_t k = 0; k < f.max_cones().size(); ++k)
      for (auto i : f.max_cones()[k]) postings_[i].push_back(k);
  }

  std::vector<std::size_t> containing(const ConeIndices& s) const {
    if (s.empty()) {
      std::vector<std::size_t> all(f_.max_cones().size());
      std::iota(all.begin(), all.end(), 0);
      return all;
    }
    std::vector<std::size_t> out = postings_[s.front()];
    for (std::size_t j = 1; j < s.size() && !out.empty(); ++j) {
      std::vector<std::size_t> next;
      const auto& p = postings_[s[j]];
      std::set_intersection(out.begin(), out.end(), p.begin(), p.end(), std::back_inserter(next));
      out = std::move(next);
    }
    return out;
  }

 private:
  const Fan& f_;
  std::vector<std::vector<std::size_t>> postings_;
};

// Turns a circuit whose minus side was seen in f into the full move, or
// nothing when the cones Z - {w}, w in minus, do not share one link.
std::optional<FlipMove> complete_move(const Fan& f, const ConeLookup& lookup, const OrientedCircuit& c) {
  if (c.plus.size() < 2 || c.minus.size() < 2) return std::nullopt;
  const ConeIndices z = merged(c.plus, c.minus);
  std::optional<std::vector<ConeIndices>> link;
  for (auto w : c.minus) {
    const auto s = without(z, w);
    std::vector<ConeIndices> lw;
    for (auto k : lookup.containing(s)) {
      ConeIndices tau;
      const auto& cone = f.max_cones()[k];
      std::set_difference(cone.begin(), cone.end(), s.begin(), s.end(), std::back_inserter(tau));
      if (std::binary_search(tau.begin(), tau.end(), w)) return std::nullopt;
      lw.push_back(std::move(tau));
    }
    std::sort(lw.begin(), lw.end());
    if (lw.empty() || (link && *link != lw)) return std::nullopt;
    link = std::move(lw);
  }
  FlipMove m;
  for (const auto& tau : *link) {
    for (auto w : c.minus) m.removed.push_back(merged(without(z, w), tau));
    for (auto w : c.plus) m.added.push_back(merged(without(z, w), tau));
    m.wall_cones.push_back(merged(z, tau));
  }
  for (const auto& a : m.added)
    if (f.has_cone(a)) return std::nullopt;
  std::sort(m.removed.begin(), m.removed.end());
  std::sort(m.added.begin(), m.added.end());
  std::sort(m.wall_cones.begin(), m.wall_cones.end());
  // Canonical circuit: Z with the smallest link simplex.
  const auto support = merged(z, link->front());
  m.circuit = *oriented_at(f.points(), support, c.minus.front());
  return m;
}

void canonical_order(std::vector<FlipMove>& moves) {
  std::sort(moves.begin(), moves.end(),
            [](const FlipMove& a, const FlipMove& b) { return a.removed < b.removed; });
  moves.erase(std::unique(moves.begin(), moves.end(),
                          [](const FlipMove& a, const FlipMove& b) { return a.removed == b.removed; }),
              moves.end());
}

void require_simplicial(const Fan& f) {
  for (const auto& c : f.max_cones())
    if (c.size() != f.dim() || rank(f.generators(c)) != f.dim())
      throw std::invalid_argument("find_flips: fan is not simplicial and full-dimensional");
}

}  // namespace

OrientedCircuit circuit_of(std::span<const IntVector> points, std::vector<std::size_t> support) {
  if (support.empty()) throw std::invalid_argument("circuit_of: empty support");
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw std::invalid_argument("circuit_of: repeated support point");
  const std::size_t d = points[support.front()].dim();
  if (support.size() != d + 1) throw std::invalid_argument("circuit_of: need exactly d+1 points");
  std::vector<IntVector> cols;
  for (auto i : support) cols.push_back(points[i]);
  if (rank(cols) != d) throw std::invalid_argument("circuit_of: points do not span");
  OrientedCircuit c;
  c.support = std::move(support);
  const auto ker = kernel_basis(cols);
  c.coeffs.assign(ker.front().begin(), ker.front().end());
  classify(c);
  const bool flip_sign =
      c.minus.size() > c.plus.size() ||
      (c.minus.size() == c.plus.size() && !c.minus.empty() && c.minus.front() < c.plus.front());
  return flip_sign ? reversed(std::move(c)) : c;
}

OrientedCircuit circuit_of(std::span<const IntVector> points) {
  std::vector<std::size_t> support(points.size());
  std::iota(support.begin(), support.end(), 0);
  return circuit_of(points, std::move(support));
}

OrientedCircuit reversed(OrientedCircuit c) {
  for (auto& b : c.coeffs) b = -b;
  std::swap(c.plus, c.minus);
  return c;
}

LocalFans circuit_fans(const OrientedCircuit& c, std::span<const IntVector> points) {
  if (c.plus.empty() || c.minus.empty())
    throw std::invalid_argument("circuit_fans: the circuit cone is not pointed");
  LocalFans out;
  for (auto w : c.minus) out.plus.push_back(without(c.support, w));
  for (auto w : c.plus) out.minus.push_back(without(c.support, w));
  std::sort(out.plus.begin(), out.plus.end());
  std::sort(out.minus.begin(), out.minus.end());

  // Ridges inside Cone(support) are shared by two max cones, ridges on its
  // boundary lie in one.
  const auto hull = cone_facets(points, c.support);
  auto on_boundary = [&](const ConeIndices& r) {
    return std::any_of(hull.begin(), hull.end(), [&](const ConeFacet& fc) {
      return std::includes(fc.rays.begin(), fc.rays.end(), r.begin(), r.end());
    });
  };
  for (const auto* side : {&out.plus, &out.minus}) {
    std::map<ConeIndices, int> count;
    for (const auto& cone : *side) {
      const auto fs = cone_facets(points, cone);
      if (fs.empty()) throw std::logic_error("circuit_fans: degenerate cone");
      for (const auto& fc : fs) ++count[fc.rays];
    }
    for (const auto& [r, n] : count)
      if (n != (on_boundary(r) ? 1 : 2)) throw std::logic_error("circuit_fans: ridge mismatch");
  }
  return out;
}

std::vector<FlipMove> find_flips(const Fan& f) {
  require_simplicial(f);
  const ConeLookup lookup(f);
  // Two max cones sharing a ridge R, with outer points a and b, are the
  // plus side of any flip whose circuit has a and b in its minus part.
  struct Pair {
    ConeIndices support;
    std::size_t a;
  };
  std::map<ConeIndices, std::vector<std::size_t>> ridges;
  for (std::size_t k = 0; k < f.max_cones().size(); ++k)
    for (auto x : f.max_cones()[k]) ridges[without(f.max_cones()[k], x)].push_back(k);
  std::vector<Pair> pairs;
  for (const auto& [r, owners] : ridges) {
    if (owners.size() != 2) continue;
    const auto& c0 = f.max_cones()[owners[0]];
    const auto& c1 = f.max_cones()[owners[1]];
    ConeIndices a, b;
    std::set_difference(c0.begin(), c0.end(), r.begin(), r.end(), std::back_inserter(a));
    std::set_difference(c1.begin(), c1.end(), r.begin(), r.end(), std::back_inserter(b));
    pairs.push_back({merged(c0, c1), b.front()});
  }
  std::vector<std::optional<FlipMove>> found(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto c = oriented_at(f.points(), pairs[k].support, pairs[k].a);
    if (c) found[k] = complete_move(f, lookup, *c);
  }
  std::vector<FlipMove> moves;
  for (auto& m : found)
    if (m) moves.push_back(std::move(*m));
  canonical_order(moves);
  return moves;
}

std::vector<FlipMove> find_flips(const Fan& f, const LatticePolytope& delta) {
  const auto used = f.used_points();
  std::vector<IntVector> rays;
  for (auto i : used) rays.push_back(f.points()[i]);
  if (rays != delta.nonzero_points())
    throw std::invalid_argument("find_flips: fan rays are not the nonzero lattice points of the polytope");
  return find_flips(f);
}

Fan flip(const Fan& f, const FlipMove& m) {
  const auto& pts = f.points();
  for (auto i : m.circuit.support)
    if (i >= pts.size()) throw InapplicableMoveError("flip: circuit index out of range");
  if (m.circuit.support.size() != f.dim() + 1 || m.circuit.coeffs.size() != m.circuit.support.size())
    throw InapplicableMoveError("flip: malformed circuit");
  IntVector sum(f.dim());
  for (std::size_t i = 0; i < m.circuit.support.size(); ++i) sum += m.circuit.coeffs[i] * pts[m.circuit.support[i]];
  if (!sum.is_zero()) throw InapplicableMoveError("flip: circuit is not a dependence of the fan's points");
  for (const auto& c : f.max_cones())
    if (c.size() != f.dim()) throw InapplicableMoveError("flip: fan is not simplicial");
  // The move must be exactly the one its circuit determines on f.
  const auto expected = complete_move(f, ConeLookup(f), m.circuit);
  if (!expected || *expected != m) throw InapplicableMoveError("flip: move does not apply to this fan");
  std::vector<ConeIndices> cones;
  for (const auto& c : f.max_cones())
    if (!std::binary_search(m.removed.begin(), m.removed.end(), c)) cones.push_back(c);
  cones.insert(cones.end(), m.added.begin(), m.added.end());
  Fan out(f.dim(), pts, std::move(cones));
  out.simplicial = f.simplicial;
  out.complete = f.complete;
  return out;
}

FlipMove reverse(const FlipMove& m) {
  FlipMove r;
  r.circuit = reversed(m.circuit);
  r.removed = m.added;
  r.added = m.removed;
  r.wall_cones = m.wall_cones;
  return r;
}

std::optional<std::vector<IntVector>> square_normal_basis(const FlipMove& m,
                                                          std::span<const IntVector> points) {
  const auto& c = m.circuit;
  if (c.plus.size() != 2 || c.minus.size() != 2) return std::nullopt;
  const std::size_t d = points[c.support.front()].dim();
  for (int k = 0; k < 2; ++k) {
    // Basis plus_0, plus_1, minus_k, tau: the removed cone omitting minus_{1-k}.
    std::vector<IntVector> basis{points[c.plus[0]], points[c.plus[1]], points[c.minus[k]]};
    for (auto t : c.zero) basis.push_back(points[t]);
    std::vector<IntVector> dual;
    try {
      dual = dual_basis(basis);
    } catch (const NonUnimodularError&) {
      continue;
    }
    const auto& other = points[c.minus[1 - k]];
    IntVector coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = dot(dual[i], other);
    IntVector expected(d);
    expected[0] = 1;
    expected[1] = 1;
    expected[2] = -1;
    if (coords == expected) return basis;
  }
  return std::nullopt;
}

namespace reference {

std::vector<FlipMove> find_flips(const Fan& f) {
  require_simplicial(f);
  const ConeLookup lookup(f);
  const auto used = f.used_points();
  const std::size_t d = f.dim();
  std::vector<FlipMove> moves;
  if (used.size() < d + 1) return moves;
  std::vector<std::size_t> idx(d + 1);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    ConeIndices w;
    for (auto i : idx) w.push_back(used[i]);
    if (rank(f.generators(w)) == d) {
      const auto c = circuit_of(f.points(), w);
      for (const auto& o : {c, reversed(c)}) {
        const bool present = !o.minus.empty() && std::all_of(o.minus.begin(), o.minus.end(), [&](std::size_t x) {
          return f.has_cone(without(w, x));
        });
        if (present)
          if (auto m = complete_move(f, lookup, o)) moves.push_back(std::move(*m));
      }
    }
    std::size_t i = d + 1;
    while (i > 0 && idx[i - 1] == used.size() - (d + 1) + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d + 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  canonical_order(moves);
  return moves;
}

}  // namespace reference

}  // namespace deltafan
