#include "deltafan/catalog.hpp"

namespace deltafan::catalog {

LatticePolytope cube(std::size_t d, long s) {
  std::vector<IntVector> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? s : -s;
    pts.push_back(std::move(v));
  }
  return LatticePolytope::hull(pts);
}

LatticePolytope cross_polytope(std::size_t d) {
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < d; ++i) {
    pts.push_back(unit_vector(d, i));
    pts.push_back(-unit_vector(d, i));
  }
  return LatticePolytope::hull(pts);
}

LatticePolytope projective_simplex(std::size_t d) {
  std::vector<IntVector> pts;
  IntVector last(d);
  for (std::size_t i = 0; i < d; ++i) {
    pts.push_back(unit_vector(d, i));
    last[i] = -1;
  }
  pts.push_back(last);
  return LatticePolytope::hull(pts);
}

LatticePolytope projective_simplex_dual(std::size_t d) {
  std::vector<IntVector> pts;
  IntVector base(d);
  for (std::size_t i = 0; i < d; ++i) base[i] = -1;
  pts.push_back(base);
  for (std::size_t i = 0; i < d; ++i) {
    IntVector v = base;
    v[i] = static_cast<long long>(d);
    pts.push_back(std::move(v));
  }
  return LatticePolytope::hull(pts);
}

LatticePolytope blowup_example() {
  const std::vector<IntVector> pts{{1, 0, 0, 0},     {0, 1, 0, 0},   {0, 0, 1, 0},
                                   {0, 0, 0, 1},     {1, 1, 1, 1},   {-1, -1, -1, -1},
                                   {0, 0, 0, -1}};
  return LatticePolytope::hull(pts);
}

LatticePolytope square_sum() {
  std::vector<IntVector> pts;
  for (long a : {-1, 1}) {
    for (long b : {-1, 1}) {
      pts.push_back(IntVector{a, b, 0, 0});
      pts.push_back(IntVector{0, 0, a, b});
    }
  }
  return LatticePolytope::hull(pts);
}

}  // namespace deltafan::catalog
