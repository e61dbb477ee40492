#include "deltafan/smoothcert.hpp"

#include "deltafan/io.hpp"
#include "deltafan/kernels.hpp"
#include "deltafan/triangulate.hpp"
#include "empty_cones.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>

namespace deltafan {

namespace {

IntVector sum_of(std::span<const IntVector> gens, std::size_t d) {
  IntVector s(d);
  for (const auto& g : gens) s += g;
  return s;
}

void require_dim4(const LatticePolytope& delta, const char* who) {
  if (delta.dim() != 4) throw std::invalid_argument(std::string(who) + ": polytope must be 4-dimensional");
}

bool is_unit_vector(const std::vector<Integer>& c) {
  std::size_t ones = 0;
  for (const auto& x : c) {
    if (x == 1) ++ones;
    else if (x != 0) return false;
  }
  return ones == 1;
}

std::optional<RemarkWitness> make_witness(const std::vector<IntVector>& pts, std::span<const std::size_t> s,
                                          const LatticePolytope& delta) {
  std::vector<IntVector> gens;
  for (auto i : s) gens.push_back(pts[i]);
  Integer D = det(gens);
  if (abs(D) <= 1 || !common_facets(gens, delta).empty()) return std::nullopt;
  return RemarkWitness{ConeIndices(s.begin(), s.end()), std::move(gens), std::move(D)};
}

void require_witness_dim(const LatticePolytope& delta) {
  if (delta.dim() != 4 && delta.dim() != 5)
    throw std::invalid_argument("remark_witness: polytope must have dimension 4 or 5");
}

void classify(const Fan& f, const LatticePolytope& delta, const std::vector<IntVector>& dual_points,
              CertificateEntry& e) {
  const auto gens = f.generators(e.cone);
  e.sum = sum_of(gens, 4);
  e.r = boundary_multiplicity(e.sum, delta);
  if (!common_facets(gens, delta).empty()) {
    e.cls = ConeClass::missed_by_generic;
    return;
  }
  // Off every facet a Delta-maximal 4-cone is unimodular, so the chart is C^4.
  if ((e.r != 3 && e.r != 4) || !is_unimodular(gens)) return;
  for (const auto& m : dual_points) {
    if (is_unit_vector(chart_exponents(gens, m).exponents)) {
      e.witness = m;
      e.cls = ConeClass::linear_term;
      return;
    }
  }
}

}  // namespace

GoodnessResult is_good_cone(std::span<const IntVector> gens, const LatticePolytope& delta) {
  require_dim4(delta, "is_good_cone");
  if (gens.size() != 4) throw std::invalid_argument("is_good_cone: need four generators");
  for (const auto& g : gens)
    if (g.dim() != 4 || !delta.contains(g)) throw std::invalid_argument("is_good_cone: generator outside the polytope");
  if (rank(gens) != 4) throw std::invalid_argument("is_good_cone: generators are linearly dependent");
  GoodnessResult out;
  out.sum = sum_of(gens, 4);
  out.r = boundary_multiplicity(out.sum, delta);
  out.common_facet = !common_facets(gens, delta).empty();
  out.good = out.r == 3 || out.r == 4;
  return out;
}

GoodConesReport has_good_maximal_cones(const LatticePolytope& delta) {
  require_dim4(delta, "has_good_maximal_cones");
  const auto pts = delta.nonzero_points();
  GoodConesReport out;
  for (const auto& c : enumerate_maximal_cones(delta)) {
    std::vector<IntVector> gens;
    for (auto i : c.generators) gens.push_back(pts[i]);
    auto res = is_good_cone(gens, delta);
    res.cone = c.generators;
    out.all_good = out.all_good && res.good;
    out.results.push_back(std::move(res));
  }
  return out;
}

ChartExponents chart_exponents(std::span<const IntVector> cone, const IntVector& m) {
  const std::size_t d = m.dim();
  if (cone.size() != d || !is_unimodular(cone))
    throw std::invalid_argument("chart_exponents: cone is not full and unimodular");
  ChartExponents out{std::vector<IntVector>(cone.begin(), cone.end()), m, {}};
  for (std::size_t i = 0; i < d; ++i) {
    Integer c = 1 + dot(m, cone[i]);
    if (c < 0)
      throw NegativeExponentError("chart_exponents: negative exponent at generator " + std::to_string(i) +
                                      "; m lies outside the dual polytope",
                                  i);
    out.exponents.push_back(std::move(c));
  }
  return out;
}

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::missed_by_generic: return "MISSED_BY_GENERIC";
    case ConeClass::linear_term: return "LINEAR_TERM";
    case ConeClass::undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

std::optional<ConeClass> cone_class_from_string(const std::string& s) {
  for (auto c : {ConeClass::missed_by_generic, ConeClass::linear_term, ConeClass::undecided})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

SmoothnessCertificate smoothness_certificate(const Fan& f, const LatticePolytope& delta) {
  require_dim4(delta, "smoothness_certificate");
  if (f.dim() != 4 || !validate_delta_maximal(f, delta).verdict)
    throw std::invalid_argument("smoothness_certificate: fan is not Delta-maximal for this polytope");
  const LatticePolytope dual_delta = dual(delta);
  const auto& dual_points = dual_delta.points();

  SmoothnessCertificate out;
  out.fan_id = fan_id(f);
  out.cones.resize(f.max_cones().size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < f.max_cones().size(); ++k) {
    try {
      out.cones[k].cone = f.max_cones()[k];
      classify(f, delta, dual_points, out.cones[k]);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  out.smooth = std::none_of(out.cones.begin(), out.cones.end(),
                            [](const CertificateEntry& e) { return e.cls == ConeClass::undecided; });
  return out;
}

std::optional<RemarkWitness> remark_witness(const LatticePolytope& delta) {
  require_witness_dim(delta);
  const auto pts = delta.nonzero_points();
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  const std::size_t n = pts.size();
  std::vector<std::optional<RemarkWitness>> per_first(n);
  // Smallest first index with a witness so far; larger ones are skipped.
  std::atomic<std::size_t> best{n};
  kernels::dispatch(pts, [&](auto tag) {
    using T = typename decltype(tag)::type;
    kernels::PointTable<T> table(pts);
    auto memo = detail::make_pair_memo(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t first = 0; first < n; ++first) {
      if (first > best.load()) continue;
      detail::EmptyConeSearch<T> search(table, all, all, delta.dim(), memo.get());
      search.run(first, first + 1, [&](std::span<const std::size_t> s) {
        if (first > best.load()) return false;
        per_first[first] = make_witness(pts, s, delta);
        return !per_first[first].has_value();
      });
      if (per_first[first]) {
        std::size_t cur = best.load();
        while (first < cur && !best.compare_exchange_weak(cur, first)) {
        }
      }
    }
  });
  for (auto& w : per_first)
    if (w) return std::move(w);
  return std::nullopt;
}

namespace reference {

std::optional<RemarkWitness> remark_witness(const LatticePolytope& delta) {
  require_witness_dim(delta);
  const auto pts = delta.nonzero_points();
  std::vector<std::size_t> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  kernels::PointTable<Integer> table(pts);
  detail::EmptyConeSearch<Integer> search(table, all, all, delta.dim(), nullptr);
  std::optional<RemarkWitness> out;
  search.run(0, pts.size(), [&](std::span<const std::size_t> s) {
    out = make_witness(pts, s, delta);
    return !out.has_value();
  });
  return out;
}

}  // namespace reference

}  // namespace deltafan
