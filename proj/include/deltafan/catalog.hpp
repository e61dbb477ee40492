// Standard reflexive polytopes used by the tests, the benchmarks and the CLI
// demo data.

#ifndef DELTAFAN_CATALOG_HPP
#define DELTAFAN_CATALOG_HPP

#include "deltafan/polytope.hpp"

#include <cstddef>

namespace deltafan::catalog {

/// [-s, s]^d.
LatticePolytope cube(std::size_t d, long s = 1);

/// conv(+-e_i).
LatticePolytope cross_polytope(std::size_t d);

/// conv(e_1, ..., e_d, -(e_1 + ... + e_d)), the polytope of P^d.
LatticePolytope projective_simplex(std::size_t d);

/// conv((-1,...,-1), (d,-1,...,-1) and its permutations), the dual of projective_simplex(d).
LatticePolytope projective_simplex_dual(std::size_t d);

/// conv(e_1, e_2, e_3, e_4, (1,1,1,1), (-1,-1,-1,-1), (0,0,0,-1)). Exactly two
/// Delta-maximal fans: the face fan, and its flop (P^4 blown up at two points).
LatticePolytope blowup_example();

/// conv((+-1,+-1,0,0), (0,0,+-1,+-1)).
LatticePolytope square_sum();

}  // namespace deltafan::catalog

#endif  // DELTAFAN_CATALOG_HPP
