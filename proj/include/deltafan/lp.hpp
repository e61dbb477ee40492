// Exact rational linear programming: two-phase dense tableau simplex with
// Dantzig's entering rule and a lexicographic ratio test. Small problems only
// (a few hundred rows and columns).

#ifndef DELTAFAN_LP_HPP
#define DELTAFAN_LP_HPP

#include "deltafan/exactlin.hpp"

#include <cstddef>
#include <vector>

namespace deltafan::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Term {
  std::size_t var;
  Rational coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::equal;
  Rational rhs;
};

struct Problem {
  std::size_t num_vars = 0;
  // Empty means every variable is nonnegative.
  std::vector<bool> free_vars;
  // Minimized. Empty means the zero objective (pure feasibility).
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;

  std::size_t add_var(bool is_free = false);
  void add(std::vector<Term> terms, Relation rel, Rational rhs);
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rational objective;
  std::vector<Rational> x;
  // One multiplier per constraint; at an optimum, objective == sum duals[i] * rhs[i].
  std::vector<Rational> duals;
};

Solution solve(const Problem& problem);

}  // namespace deltafan::lp

#endif  // DELTAFAN_LP_HPP
