// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// Library results are checked against the brute-force oracles in oracles.hpp.

#include "deltafan/catalog.hpp"
#include "deltafan/circuitflip.hpp"
#include "deltafan/fan.hpp"
#include "deltafan/io.hpp"
#include "deltafan/polytope.hpp"
#include "deltafan/smoothcert.hpp"
#include "deltafan/triangulate.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace deltafan;
using oracle::Vec;

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
  std::string reason;
};

void require(bool ok, const std::string& reason) {
  if (!ok) throw Failure{reason};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Vec> vecs(const std::vector<IntVector>& v) {
  std::vector<Vec> out;
  for (const auto& x : v) out.push_back(oracle::to_vec(x));
  return out;
}

struct SuiteEntry {
  std::string name;
  LatticePolytope p;
  std::vector<Vec> normals;
};

const std::vector<SuiteEntry>& suite() {
  static const std::vector<SuiteEntry> s = [] {
    std::vector<SuiteEntry> out;
    auto add = [&](std::string name, LatticePolytope p) {
      auto normals = oracle::reflexive_normals(vecs(p.vertices()));
      out.push_back({std::move(name), std::move(p), std::move(normals)});
    };
    add("cube", catalog::cube(4));
    add("cross", catalog::cross_polytope(4));
    add("simplex", catalog::projective_simplex(4));
    add("blowup", catalog::blowup_example());
    add("square_sum", catalog::square_sum());
    return out;
  }();
  return s;
}

// Every fan built by any criterion, paired with its polytope, for criterion 4.
struct Produced {
  Fan fan;
  const SuiteEntry* entry;
};
std::vector<Produced> produced;

void record(const Fan& f, const SuiteEntry& e) { produced.push_back({f, &e}); }

const SuiteEntry& entry(const std::string& name) {
  for (const auto& e : suite())
    if (e.name == name) return e;
  throw Failure{"no suite polytope " + name};
}

std::vector<Fan> suite_fans(const SuiteEntry& e) {
  std::vector<Fan> out{mpcp(e.p, 0), mpcp(e.p, 1)};
  if (e.p.nonzero_points().size() < 20) {
    for (auto& f : enumerate_delta_maximal(e.p, 100)) out.push_back(std::move(f));
  }
  for (const auto& f : out) record(f, e);
  return out;
}

// gcd of the maximal minors of the k x d generator matrix is 1.
bool oracle_unimodular(const std::vector<Vec>& gens) {
  const std::size_t k = gens.size(), d = gens.front().size();
  long long g = 0;
  std::vector<std::size_t> cols;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cols.size() == k) {
      std::vector<Vec> m(k, Vec(k));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m[r][c] = gens[r][cols[c]];
      g = std::gcd(g, std::abs(oracle::laplace_det(m)));
      return;
    }
    for (std::size_t c = from; c < d; ++c) {
      cols.push_back(c);
      rec(c + 1);
      cols.pop_back();
    }
  };
  rec(0);
  return g == 1;
}

std::vector<ConeIndices> cones_of(const Fan& f, const std::vector<std::vector<IntVector>>& gens) {
  std::vector<ConeIndices> out;
  for (const auto& g : gens) {
    ConeIndices c;
    for (const auto& x : g) c.push_back(*f.index_of(x));
    std::sort(c.begin(), c.end());
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ConeIndices> minus(const std::vector<ConeIndices>& a, const std::vector<ConeIndices>& b) {
  std::vector<ConeIndices> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

const IntVector e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0}, m4{0, 0, 0, -1}, ones{1, 1, 1, 1};

std::string criterion1() {
  const auto t0 = Clock::now();
  const auto& e = entry("blowup");
  require(is_reflexive(e.p), "not reflexive");
  require(e.p.facets().size() == 12, std::to_string(e.p.facets().size()) + " facets");
  require(e.normals.size() == 12, "oracle finds " + std::to_string(e.normals.size()) + " facets");

  const auto fans = enumerate_delta_maximal(e.p, 1000);
  require(fans.size() == 2, std::to_string(fans.size()) + " fans");
  for (const auto& f : fans) record(f, e);
  const auto sigma = face_fan(e.p);
  require(fans[0] == sigma || fans[1] == sigma, "face fan not enumerated");
  const auto& bl = fans[0] == sigma ? fans[1] : fans[0];
  require(sigma.points() == bl.points(), "fans differ in rays");

  const auto c12 = cones_of(sigma, {{e1, e2, e3, m4}, {e1, e2, e3, ones}});
  const auto c567 = cones_of(sigma, {{e1, e2, ones, m4}, {e1, e3, ones, m4}, {e2, e3, ones, m4}});
  require(minus(bl.max_cones(), sigma.max_cones()) == c12, "blow-up side is not {C1, C2}");
  require(minus(sigma.max_cones(), bl.max_cones()) == c567, "face-fan side is not {C5, C6, C7}");
  require(is_projective(sigma) && is_projective(bl), "a fan is not projective");

  const auto there = find_flips(sigma, e.p);
  const auto back = find_flips(bl, e.p);
  require(there.size() == 1 && back.size() == 1, "expected one flip each way");
  require(flip(sigma, there[0]) == bl, "flip of the face fan is not the blow-up fan");
  require(flip(bl, back[0]) == sigma, "flip of the blow-up fan is not the face fan");

  const double t = seconds_since(t0);
  require(t <= 120, "took " + std::to_string(t) + " s");
  std::ostringstream msg;
  msg << "2 fans, one flip each way, " << t << " s";
  return msg.str();
}

std::string criterion2() {
  const auto& e = entry("blowup");
  const auto fans = enumerate_delta_maximal(e.p, 1000);
  const auto sigma = face_fan(e.p);
  const auto& bl = fans[0] == sigma ? fans[1] : fans[0];
  const auto dual_pts = oracle::dual_points(vecs(e.p.vertices()), 4);

  const auto cs = smoothness_certificate(sigma, e.p);
  require(cs.smooth, "face fan not smooth");
  for (const auto& c : cs.cones)
    require(c.cls == ConeClass::missed_by_generic, "face-fan cone not MISSED_BY_GENERIC");

  const auto cb = smoothness_certificate(bl, e.p);
  require(cb.smooth, "blow-up fan not smooth");
  const auto c12 = cones_of(bl, {{e1, e2, e3, m4}, {e1, e2, e3, ones}});
  std::size_t linear = 0;
  for (const auto& c : cb.cones) {
    const bool special = std::find(c12.begin(), c12.end(), c.cone) != c12.end();
    if (!special) {
      require(c.cls == ConeClass::missed_by_generic, "unexpected class on a face-fan cone");
      continue;
    }
    require(c.cls == ConeClass::linear_term, "C1 or C2 not LINEAR_TERM");
    require(c.witness.has_value(), "LINEAR_TERM without witness");
    // The witness is a dual lattice point whose chart exponents form a unit vector.
    const Vec m = oracle::to_vec(*c.witness);
    require(std::find(dual_pts.begin(), dual_pts.end(), m) != dual_pts.end(), "witness outside the dual");
    const auto g = vecs(bl.generators(c.cone));
    int ones_seen = 0;
    for (const auto& v : g) {
      const long long ex = 1 + oracle::dot(m, v);
      require(ex == 0 || ex == 1, "witness exponent not 0 or 1");
      ones_seen += ex == 1;
    }
    require(ones_seen == 1, "witness exponents not a unit vector");
    ++linear;
  }
  require(linear == 2, "found " + std::to_string(linear) + " LINEAR_TERM cones");
  return "face fan all MISSED_BY_GENERIC, C1 and C2 LINEAR_TERM with witnesses";
}

std::string criterion3() {
  const auto t0 = Clock::now();
  std::size_t cones = 0, fans = 0;
  for (const auto& e : suite()) {
    require(is_reflexive(e.p), e.name + " not reflexive");
    const auto report = has_good_maximal_cones(e.p);
    require(report.all_good, e.name + " has a bad maximal cone");
    const auto pts = e.p.nonzero_points();
    for (const auto& r : report.results) {
      std::vector<Vec> g;
      for (auto i : r.cone) g.push_back(oracle::to_vec(pts[i]));
      Vec sum(4, 0);
      for (const auto& x : g)
        for (std::size_t i = 0; i < 4; ++i) sum[i] += x[i];
      const long long mult = oracle::multiplicity(e.normals, sum);
      require(mult == 3 || mult == 4, e.name + ": oracle multiplicity " + std::to_string(mult));
    }
    cones += report.results.size();
    for (const auto& f : suite_fans(e)) {
      for (const auto& c : smoothness_certificate(f, e.p).cones)
        require(c.cls != ConeClass::undecided, e.name + " has an UNDECIDED cone");
      ++fans;
    }
  }
  const double t = seconds_since(t0);
  require(t <= 600, "took " + std::to_string(t) + " s");
  std::ostringstream msg;
  msg << suite().size() << " polytopes, " << cones << " maximal cones, " << fans << " certified fans, " << t
      << " s";
  return msg.str();
}

std::string criterion4() {
  std::size_t low = 0, thick = 0;
  for (const auto& [f, e] : produced) {
    std::set<ConeIndices> faces;
    for (const auto& c : f.max_cones()) {
      for (unsigned mask = 1; mask < (1u << c.size()); ++mask) {
        if (std::popcount(mask) > 3) continue;
        ConeIndices sub;
        for (std::size_t i = 0; i < c.size(); ++i)
          if (mask & (1u << i)) sub.push_back(c[i]);
        faces.insert(sub);
      }
      const auto g = vecs(f.generators(c));
      if (!oracle_unimodular(g)) {
        ++thick;
        require(oracle::share_facet(e->normals, g), e->name + ": non-unimodular cone off every facet");
      }
    }
    for (const auto& sub : faces)
      require(oracle_unimodular(vecs(f.generators(sub))), e->name + ": non-unimodular cone of dim <= 3");
    low += faces.size();
  }
  require(!produced.empty(), "no fans recorded");
  std::ostringstream msg;
  msg << produced.size() << " fans, " << low << " cones of dim <= 3, " << thick
      << " non-unimodular maximal cones all on a facet";
  return msg.str();
}

std::string criterion5() {
  const auto t0 = Clock::now();
  const auto p = catalog::projective_simplex_dual(5);
  const auto w = remark_witness(p);
  require(w.has_value(), "no witness in dimension 5");
  const auto g = vecs(w->generators);
  const long long det = oracle::laplace_det(g);
  require(std::abs(det) > 1, "witness is unimodular");
  require(w->det == det, "reported determinant disagrees");
  const auto normals = oracle::reflexive_normals(vecs(p.vertices()));
  require(!oracle::share_facet(normals, g), "witness lies in a facet");
  for (const auto& x : vecs(p.nonzero_points())) {
    if (std::find(g.begin(), g.end(), x) != g.end()) continue;
    require(!oracle::simplicial_contains(g, x), "witness cone is not empty");
  }
  for (const auto& e : suite()) require(!remark_witness(e.p).has_value(), e.name + " has a witness");
  const double t = seconds_since(t0);
  require(t <= 600, "took " + std::to_string(t) + " s");
  std::ostringstream msg;
  msg << "det " << det << " in dimension 5, none in dimension 4, " << t << " s";
  return msg.str();
}

std::string criterion6() {
  std::mt19937_64 gen(20240601);
  std::size_t draws = 0, faces = 0;
  for (const auto& e : suite()) {
    const auto raw = e.p.nonzero_points();
    const auto pts = vecs(raw);
    for (int draw = 0; draw < 1000; ++draw, ++draws) {
      const std::size_t k = 1 + gen() % 4;
      std::vector<Vec> chosen;
      IntVector sum(4);
      for (std::size_t i = 0; i < k; ++i) {
        const auto j = gen() % pts.size();
        chosen.push_back(pts[j]);
        sum += raw[j];
      }
      const long long r = boundary_multiplicity(sum, e.p).convert_to<long long>();
      require(r == oracle::multiplicity(e.normals, oracle::to_vec(sum)), e.name + ": multiplicity disagrees");
      require(r <= static_cast<long long>(k), e.name + ": r > k");
      const bool face = oracle::share_facet(e.normals, chosen);
      require((r == static_cast<long long>(k)) == face, e.name + ": r = k does not match the face test");
      faces += face;
    }
  }
  std::ostringstream msg;
  msg << draws << " draws, " << faces << " on a common face";
  return msg.str();
}

bool good_cones(const Fan& f, const LatticePolytope& p) {
  for (const auto& c : f.max_cones())
    if (!is_good_cone(f.generators(c), p).good) return false;
  return true;
}

std::string criterion7() {
  std::size_t flips = 0;
  for (const auto& e : suite()) {
    for (const auto& f : suite_fans(e)) {
      const bool good = good_cones(f, e.p);
      const auto text = io::to_json(f);
      for (const auto& m : find_flips(f, e.p)) {
        const auto g = flip(f, m);
        record(g, e);
        require(good_cones(g, e.p) == good, e.name + ": flip changes goodness");
        require(io::to_json(flip(g, reverse(m))) == text, e.name + ": double flip is not the identity");
        ++flips;
      }
    }
  }
  require(flips > 0, "no flips found");
  return std::to_string(flips) + " flips checked";
}

std::string criterion8() {
  const auto t0 = Clock::now();
  const auto& cube = entry("cube");
  const auto orthants = face_fan(catalog::cross_polytope(4));
  const auto f = refine_to(orthants, cube.p);
  record(f, cube);
  const auto report = validate_delta_maximal(f, cube.p);
  require(report.verdict, "refined fan fails validation");
  require(is_projective(f), "refined fan not projective");
  for (const auto& c : f.max_cones()) {
    // Some orthant holds every generator: no coordinate changes sign.
    const auto g = vecs(f.generators(c));
    for (std::size_t i = 0; i < 4; ++i) {
      bool pos = false, neg = false;
      for (const auto& x : g) {
        pos = pos || x[i] > 0;
        neg = neg || x[i] < 0;
      }
      require(!(pos && neg), "a cone crosses a coordinate hyperplane");
    }
  }
  const double t = seconds_since(t0);
  require(t <= 120, "took " + std::to_string(t) + " s");
  std::ostringstream msg;
  msg << f.max_cones().size() << " cones, each inside one orthant, " << t << " s";
  return msg.str();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::string (*run)();
  };
  // Criterion 4 runs last so it sees every fan the others produced.
  const Criterion order[] = {
      {"1 blow-up example", criterion1},        {"2 smoothness certificates", criterion2},
      {"3 good maximal cones", criterion3},    {"5 non-unimodular witness", criterion5},
      {"6 boundary multiplicity", criterion6}, {"7 flips preserve goodness", criterion7},
      {"8 orthant refinement", criterion8},    {"4 low cones unimodular", criterion4},
  };
  std::vector<std::string> lines(8);
  bool all = true;
  for (const auto& c : order) {
    std::string line;
    try {
      line = std::string("PASS ") + c.name + ": " + c.run();
    } catch (const Failure& f) {
      line = std::string("FAIL ") + c.name + ": " + f.reason;
      all = false;
    } catch (const std::exception& ex) {
      line = std::string("FAIL ") + c.name + ": exception: " + ex.what();
      all = false;
    }
    lines[static_cast<std::size_t>(c.name[0] - '1')] = line;
  }
  for (const auto& l : lines) std::cout << l << "\n";
  return all ? 0 : 1;
}
