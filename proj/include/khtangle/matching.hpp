#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace khtangle {

/// A non-crossing perfect matching of the points 1..2n (numbered bottom to
/// top). Pairs are stored with i < j, sorted by first coordinate.
class CrossinglessMatching {
 public:
  CrossinglessMatching() = default;

  /// Validates the pair list; throws std::invalid_argument if it is not a
  /// non-crossing perfect matching of {1..2n}.
  CrossinglessMatching(int n, std::vector<std::pair<int, int>> pairs);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  /// Partner of point p (1-based).
  int partner(int p) const { return partner_.at(static_cast<std::size_t>(p - 1)); }

  /// Pairs ordered outermost first (a linear extension of nesting).
  std::vector<std::pair<int, int>> outermost_first() const;
  std::vector<std::pair<int, int>> innermost_first() const;

  /// "{(1,2),(3,4)}"
  std::string to_string() const;

  friend bool operator==(const CrossinglessMatching&, const CrossinglessMatching&) = default;
  friend bool operator<(const CrossinglessMatching& a, const CrossinglessMatching& b) {
    return a.pairs_ < b.pairs_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> partner_;
};

/// All crossingless matchings of 2n points, in lexicographic order of their
/// sorted pair lists. The count is the Catalan number C_n.
std::vector<CrossinglessMatching> enumerate_matchings(int n);

/// Index of `m` in enumerate_matchings(m.n()); throws if absent.
std::size_t matching_index(const std::vector<CrossinglessMatching>& list,
                           const CrossinglessMatching& m);

std::size_t catalan(int n);

}  // namespace khtangle
