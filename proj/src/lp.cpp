#include "deltafan/lp.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace deltafan::lp {

std::size_t Problem::add_var(bool is_free) {
  if (free_vars.size() < num_vars) free_vars.resize(num_vars, false);
  free_vars.push_back(is_free);
  if (!objective.empty()) objective.emplace_back(0);
  return num_vars++;
}

void Problem::add(std::vector<Term> terms, Relation rel, Rational rhs) {
  constraints.push_back(Constraint{std::move(terms), rel, std::move(rhs)});
}

namespace {

bool is_zero(const Rational& x) { return x == 0; }
bool is_negative(const Rational& x) { return x < 0; }
bool is_positive(const Rational& x) { return x > 0; }

// Tableau rows hold B^-1 [A | I] followed by the right-hand side. Artificial
// columns start at art_begin; they are never allowed back into the basis once
// phase 1 is over, and they keep B^-1 available for the dual values.
class Tableau {
 public:
  using S = Rational;

  Tableau(std::vector<std::vector<S>> rows, std::size_t art_begin)
      : rows_(std::move(rows)), art_begin_(art_begin) {
    m_ = rows_.size();
    width_ = m_ == 0 ? art_begin_ + 1 : rows_.front().size();
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = art_begin_ + i;
  }

  std::size_t rhs_col() const { return width_ - 1; }

  // Reduced-cost row for the cost vector c (size width_-1).
  void price(const std::vector<S>& c) {
    obj_.assign(width_, S(0));
    for (std::size_t j = 0; j + 1 < width_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const S& cb = c[basis_[i]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!is_zero(rows_[i][j])) obj_[j] -= cb * rows_[i][j];
      }
    }
  }

  // Dantzig's rule (most negative reduced cost). Ties in the ratio test are
  // broken lexicographically on the rows of B^-1, which rules out cycling.
  // Returns false when unbounded.
  bool optimize(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? width_ - 1 : art_begin_;
    while (true) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_negative(obj_[j]) && (enter == width_ || obj_[j] < obj_[enter])) enter = j;
      }
      if (enter == width_) return true;
      std::size_t leave = m_;
      S best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!is_positive(rows_[i][enter])) continue;
        S ratio = rows_[i][rhs_col()] / rows_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && lex_less(i, leave, enter))) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  // Row a before row b in the lexicographic order of B^-1 rows scaled by the
  // entering column.
  bool lex_less(std::size_t a, std::size_t b, std::size_t enter) const {
    for (std::size_t k = 0; k < m_; ++k) {
      const S x = rows_[a][art_begin_ + k] / rows_[a][enter];
      const S y = rows_[b][art_begin_ + k] / rows_[b][enter];
      if (x != y) return x < y;
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = rows_[r];
    const S inv = S(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j) {
      if (!is_zero(prow[j])) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<S>& row) {
      if (is_zero(row[c])) {
        row[c] = S(0);
        return;
      }
      const S f = row[c];
      for (std::size_t j : nz) row[j] -= f * prow[j];
      row[c] = S(0);
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    if (!obj_.empty()) eliminate(obj_);
    basis_[r] = c;
  }

  // Pivots zero-level artificials out of the basis where some real column allows it.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (!is_zero(rows_[i][j])) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  const std::vector<std::vector<S>>& rows() const { return rows_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<S>& obj() const { return obj_; }
  std::size_t art_begin() const { return art_begin_; }
  std::size_t size() const { return m_; }

 private:
  std::vector<std::vector<S>> rows_;
  std::vector<S> obj_;
  std::vector<std::size_t> basis_;
  std::size_t art_begin_;
  std::size_t m_ = 0;
  std::size_t width_ = 0;
};

}  // namespace

Solution solve(const Problem& problem) {
  using S = Rational;
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  auto is_free = [&](std::size_t v) { return v < problem.free_vars.size() && problem.free_vars[v]; };

  // Column layout: [original (split when free) | slacks | artificials | rhs].
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    pos_col[v] = cols++;
    if (is_free(v)) neg_col[v] = cols++;
  }
  const std::size_t orig_cols = cols;
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (problem.constraints[i].relation != Relation::equal) slack_col[i] = cols++;
  }
  const std::size_t art_begin = cols;
  const std::size_t width = art_begin + m + 1;

  std::vector<int> row_sign(m, 1);
  std::vector<std::vector<S>> rows(m, std::vector<S>(width));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = problem.constraints[i];
    auto& row = rows[i];
    for (const auto& t : con.terms) {
      if (t.var >= n) throw std::out_of_range("lp: variable index out of range");
      row[pos_col[t.var]] += t.coeff;
      if (neg_col[t.var] != SIZE_MAX) row[neg_col[t.var]] -= t.coeff;
    }
    if (con.relation == Relation::less_equal) row[slack_col[i]] = 1;
    if (con.relation == Relation::greater_equal) row[slack_col[i]] = -1;
    row[width - 1] = con.rhs;
    if (con.rhs < 0) {
      row_sign[i] = -1;
      for (auto& x : row) x = -x;
    }
    row[art_begin + i] = 1;
  }

  Tableau tab(std::move(rows), art_begin);

  std::vector<S> phase1(width - 1, S(0));
  for (std::size_t i = 0; i < m; ++i) phase1[art_begin + i] = 1;
  tab.price(phase1);
  tab.optimize(true);
  Solution sol;
  if (!is_zero(tab.obj()[width - 1])) {
    sol.status = Status::infeasible;
    return sol;
  }
  tab.drive_out_artificials();

  std::vector<S> cost(width - 1, S(0));
  for (std::size_t v = 0; v < n && v < problem.objective.size(); ++v) {
    cost[pos_col[v]] = problem.objective[v];
    if (neg_col[v] != SIZE_MAX) cost[neg_col[v]] = -problem.objective[v];
  }
  tab.price(cost);
  if (!tab.optimize(false)) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  std::vector<S> col_value(orig_cols, S(0));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis()[i];
    if (b < orig_cols) col_value[b] = tab.rows()[i][width - 1];
  }
  sol.x.assign(n, S(0));
  for (std::size_t v = 0; v < n; ++v) {
    sol.x[v] = col_value[pos_col[v]];
    if (neg_col[v] != SIZE_MAX) sol.x[v] -= col_value[neg_col[v]];
  }
  sol.objective = 0;
  for (std::size_t v = 0; v < n && v < problem.objective.size(); ++v)
    sol.objective += problem.objective[v] * sol.x[v];
  // y = c_B B^-1, read off the artificial block; undo the row sign flips.
  sol.duals.assign(m, S(0));
  for (std::size_t r = 0; r < m; ++r) {
    const S& cb = cost[tab.basis()[r]];
    if (is_zero(cb)) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const S& e = tab.rows()[r][art_begin + i];
      if (!is_zero(e)) sol.duals[i] += cb * e;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (row_sign[i] < 0) sol.duals[i] = -sol.duals[i];
  }
  return sol;
}

}  // namespace deltafan::lp
