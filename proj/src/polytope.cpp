#include "deltafan/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace deltafan {

namespace {

// d-subsets i_0 < ... < i_{d-1} of [0, n), in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t affine_rank(std::span<const IntVector> pts) {
  if (pts.empty()) return 0;
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return rank(diffs);
}

}  // namespace

LatticePolytope LatticePolytope::hull(std::span<const IntVector> input) {
  if (input.empty()) throw DegeneratePolytopeError("hull: no points");
  const std::size_t d = input.front().dim();
  if (d == 0) throw DegeneratePolytopeError("hull: zero-dimensional ambient space");
  for (const auto& p : input) {
    if (p.dim() != d) throw std::invalid_argument("hull: points of different dimensions");
  }
  std::vector<IntVector> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (affine_rank(pts) != d) {
    throw DegeneratePolytopeError("hull: points do not affinely span the ambient space");
  }

  // Supporting hyperplanes through d affinely independent input points.
  std::set<IntVector> normals;
  for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& idx) {
    std::vector<IntVector> diffs;
    diffs.reserve(d - 1);
    for (std::size_t k = 1; k < d; ++k) diffs.push_back(pts[idx[k]] - pts[idx[0]]);
    IntVector n = d == 1 ? IntVector{1} : cross_normal(diffs);
    if (n.is_zero()) return;
    const Integer c = dot(n, pts[idx[0]]);
    int side = 0;
    for (const auto& q : pts) {
      const Integer s = dot(n, q) - c;
      const int sg = s > 0 ? 1 : (s < 0 ? -1 : 0);
      if (sg == 0) continue;
      if (side == 0) side = sg;
      if (sg != side) return;
    }
    if (side > 0) n = -n;
    normals.insert(primitive(std::move(n)));
  });

  // A point is a vertex iff the normals of the facets through it have full rank.
  LatticePolytope p;
  p.dim_ = d;
  std::vector<std::pair<IntVector, Integer>> planes;
  for (const auto& n : normals) {
    Integer c = dot(n, pts.front());
    for (const auto& q : pts) c = std::max(c, dot(n, q));
    planes.emplace_back(n, c);
  }
  for (const auto& q : pts) {
    std::vector<IntVector> tight;
    for (const auto& [n, c] : planes) {
      if (dot(n, q) == c) tight.push_back(n);
    }
    if (rank(tight) == d) p.vertices_.push_back(q);
  }
  for (auto& [n, c] : planes) {
    Facet f{n, c, {}};
    for (std::size_t i = 0; i < p.vertices_.size(); ++i) {
      if (dot(n, p.vertices_[i]) == c) f.vertices.push_back(i);
    }
    p.facets_.push_back(std::move(f));
  }

  // Lattice points: scan the bounding box against the facet inequalities.
  std::vector<Integer> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = hi[i] = p.vertices_.front()[i];
    for (const auto& v : p.vertices_) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  IntVector x(lo);
  while (true) {
    bool inside = true;
    bool on_boundary = false;
    for (const auto& f : p.facets_) {
      const Integer s = dot(f.normal, x);
      if (s > f.offset) {
        inside = false;
        break;
      }
      if (s == f.offset) on_boundary = true;
    }
    if (inside) {
      p.points_.push_back(x);
      p.boundary_.push_back(on_boundary);
    }
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        for (std::size_t j = i + 1; j < d; ++j) x[j] = lo[j];
        break;
      }
      if (i == 0) return p;
    }
  }
}

std::vector<IntVector> LatticePolytope::nonzero_points() const {
  std::vector<IntVector> out;
  out.reserve(points_.size());
  for (const auto& x : points_) {
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

bool LatticePolytope::contains(const IntVector& x) const {
  if (x.dim() != dim_) return false;
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return dot(f.normal, x) <= f.offset; });
}

bool LatticePolytope::origin_interior() const {
  return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset > 0; });
}

LatticePolytope dual(const LatticePolytope& p) {
  if (!p.origin_interior()) throw OriginNotInteriorError("dual: origin is not an interior point");
  std::vector<IntVector> verts;
  for (const auto& f : p.facets()) {
    IntVector m(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (f.normal[i] % f.offset != 0) {
        std::vector<Rational> q(p.dim());
        for (std::size_t j = 0; j < p.dim(); ++j) q[j] = Rational(-f.normal[j], f.offset);
        std::string s = "(";
        for (std::size_t j = 0; j < q.size(); ++j) s += (j ? "," : "") + q[j].str();
        throw NonLatticeDualError("dual: vertex " + s + ")" + " is not a lattice point", q);
      }
      m[i] = -f.normal[i] / f.offset;
    }
    verts.push_back(std::move(m));
  }
  return LatticePolytope::hull(verts);
}

bool is_reflexive(const LatticePolytope& p) {
  if (p.facets().empty()) return false;
  return std::all_of(p.facets().begin(), p.facets().end(),
                     [](const Facet& f) { return f.offset == 1; });
}

const std::vector<IntVector>& lattice_points(const LatticePolytope& p) { return p.points(); }

Integer boundary_multiplicity(const IntVector& x, const LatticePolytope& p) {
  Integer r = 0;
  for (const auto& f : p.facets()) r = std::max(r, dot(f.normal, x));
  return r;
}

std::vector<std::size_t> common_facets(std::span<const IntVector> pts, const LatticePolytope& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.facets().size(); ++i) {
    const auto& f = p.facets()[i];
    if (std::all_of(pts.begin(), pts.end(),
                    [&](const IntVector& x) { return dot(f.normal, x) == f.offset; })) {
      out.push_back(i);
    }
  }
  return out;
}

std::optional<Face> smallest_face_containing(std::span<const IntVector> pts,
                                             const LatticePolytope& p) {
  if (pts.empty()) throw std::invalid_argument("smallest_face_containing: no points");
  for (const auto& x : pts) {
    if (!p.contains(x)) {
      throw std::invalid_argument("smallest_face_containing: " + x.to_string() +
                                  " is outside the polytope");
    }
  }
  const auto facets = common_facets(pts, p);
  if (facets.empty()) return std::nullopt;
  std::vector<std::size_t> verts = p.facets()[facets.front()].vertices;
  for (std::size_t k = 1; k < facets.size(); ++k) {
    const auto& other = p.facets()[facets[k]].vertices;
    std::vector<std::size_t> both;
    std::set_intersection(verts.begin(), verts.end(), other.begin(), other.end(),
                          std::back_inserter(both));
    verts = std::move(both);
  }
  std::vector<IntVector> vp;
  for (auto i : verts) vp.push_back(p.vertices()[i]);
  return Face{verts, affine_rank(vp)};
}

}  // namespace deltafan
