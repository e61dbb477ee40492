// Depth-first search for empty simplicial cones, shared by the maximal-cone
// enumeration, the regular subdivisions and the witness search.

#ifndef DELTAFAN_SRC_EMPTY_CONES_HPP
#define DELTAFAN_SRC_EMPTY_CONES_HPP

#include "deltafan/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace deltafan::detail {

/// Enumerates, in lexicographic order of positions in `cand`, the `depth`-subsets
/// S of `cand` that are linearly independent and whose closed cone contains no
/// point of `probe` outside S. Only subsets whose first position lies in
/// [first_begin, first_end) are visited. visit(S) returns false to stop.
///
/// Emptiness is monotone, so a failing prefix cuts its whole subtree. Pair
/// verdicts are memoized in `pair_memo` (size n*n over table indices, 0 =
/// unknown, 1 = empty, 2 = not empty), which may be shared between threads.
template <class T>
class EmptyConeSearch {
 public:
  EmptyConeSearch(const kernels::PointTable<T>& table, std::span<const std::size_t> cand,
                  std::span<const std::size_t> probe, std::size_t depth,
                  std::atomic<std::uint8_t>* pair_memo)
      : table_(table), cand_(cand), probe_(probe), depth_(depth), memo_(pair_memo) {}

  template <class Visit>
  void run(std::size_t first_begin, std::size_t first_end, Visit&& visit) {
    prefix_.clear();
    stop_ = false;
    for (std::size_t p = first_begin; p < first_end && p < cand_.size() && !stop_; ++p) {
      extend(p, visit);
    }
  }

  /// Is Cone(S) free of probe points other than S (and S independent)?
  bool empty(std::span<const std::size_t> s) {
    kernels::SimplicialSolver<T> solver;
    if (!solver.reset(table_, s)) return false;
    for (auto q : probe_) {
      if (std::find(s.begin(), s.end(), q) != s.end()) continue;
      if (solver.contains(table_[q])) return false;
    }
    return true;
  }

 private:
  bool pair_empty(std::size_t a, std::size_t b) {
    if (!memo_) return true;
    const std::size_t n = table_.size();
    auto& slot = memo_[std::min(a, b) * n + std::max(a, b)];
    std::uint8_t v = slot.load(std::memory_order_relaxed);
    if (v == 0) {
      const std::size_t pair[2] = {std::min(a, b), std::max(a, b)};
      v = empty(pair) ? 1 : 2;
      slot.store(v, std::memory_order_relaxed);
    }
    return v == 1;
  }

  template <class Visit>
  void extend(std::size_t pos, Visit& visit) {
    const std::size_t c = cand_[pos];
    for (auto s : prefix_)
      if (!pair_empty(s, c)) return;
    prefix_.push_back(c);
    const bool certified = memo_ && prefix_.size() == 2;  // by the pair memo
    if (!certified && !empty(prefix_)) {
      prefix_.pop_back();
      return;
    }
    if (prefix_.size() == depth_) {
      if (!visit(std::span<const std::size_t>(prefix_))) stop_ = true;
    } else {
      for (std::size_t q = pos + 1; q < cand_.size() && !stop_; ++q) extend(q, visit);
    }
    prefix_.pop_back();
  }

  const kernels::PointTable<T>& table_;
  std::span<const std::size_t> cand_;
  std::span<const std::size_t> probe_;
  std::size_t depth_;
  std::atomic<std::uint8_t>* memo_;
  std::vector<std::size_t> prefix_;
  bool stop_ = false;
};

/// Pair memo sized for a table of n points.
inline std::unique_ptr<std::atomic<std::uint8_t>[]> make_pair_memo(std::size_t n) {
  auto memo = std::make_unique<std::atomic<std::uint8_t>[]>(n * n);
  for (std::size_t i = 0; i < n * n; ++i) memo[i].store(0, std::memory_order_relaxed);
  return memo;
}

}  // namespace deltafan::detail

#endif  // DELTAFAN_SRC_EMPTY_CONES_HPP
