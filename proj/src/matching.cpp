#include "khtangle/matching.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace khtangle {

CrossinglessMatching::CrossinglessMatching(int n, std::vector<std::pair<int, int>> pairs)
    : n_(n), pairs_(std::move(pairs)) {
  if (n < 0) throw std::invalid_argument("matching: negative n");
  if (pairs_.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("matching: expected " + std::to_string(n) + " pairs");
  partner_.assign(static_cast<std::size_t>(2 * n), 0);
  for (auto& [i, j] : pairs_) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > 2 * n || i == j) throw std::invalid_argument("matching: point out of range");
    auto& pi = partner_[static_cast<std::size_t>(i - 1)];
    auto& pj = partner_[static_cast<std::size_t>(j - 1)];
    if (pi != 0 || pj != 0) throw std::invalid_argument("matching: point used twice");
    pi = j;
    pj = i;
  }
  std::sort(pairs_.begin(), pairs_.end());
  for (const auto& [i, j] : pairs_)
    for (const auto& [k, l] : pairs_)
      if (i < k && k < j && j < l)
        throw std::invalid_argument("matching: pairs (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") and (" + std::to_string(k) + "," +
                                    std::to_string(l) + ") cross");
}

std::vector<std::pair<int, int>> CrossinglessMatching::outermost_first() const {
  auto out = pairs_;
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return (x.second - x.first) > (y.second - y.first);
  });
  return out;
}

std::vector<std::pair<int, int>> CrossinglessMatching::innermost_first() const {
  auto out = pairs_;
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return (x.second - x.first) < (y.second - y.first);
  });
  return out;
}

std::string CrossinglessMatching::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    if (k) os << ',';
    os << '(' << pairs_[k].first << ',' << pairs_[k].second << ')';
  }
  os << '}';
  return os.str();
}

std::vector<CrossinglessMatching> enumerate_matchings(int n) {
  if (n < 0) throw std::invalid_argument("enumerate_matchings: negative n");
  // Point `lo` pairs with some point leaving an even count strictly inside.
  std::function<std::vector<std::vector<std::pair<int, int>>>(int, int)> rec =
      [&](int lo, int hi) -> std::vector<std::vector<std::pair<int, int>>> {
    if (lo > hi) return {{}};
    std::vector<std::vector<std::pair<int, int>>> out;
    for (int j = lo + 1; j <= hi; j += 2)
      for (const auto& inner : rec(lo + 1, j - 1))
        for (const auto& outer : rec(j + 1, hi)) {
          std::vector<std::pair<int, int>> p{{lo, j}};
          p.insert(p.end(), inner.begin(), inner.end());
          p.insert(p.end(), outer.begin(), outer.end());
          out.push_back(std::move(p));
        }
    return out;
  };
  std::vector<CrossinglessMatching> result;
  for (auto& p : rec(1, 2 * n)) result.emplace_back(n, std::move(p));
  std::sort(result.begin(), result.end());
  return result;
}

std::size_t matching_index(const std::vector<CrossinglessMatching>& list,
                           const CrossinglessMatching& m) {
  auto it = std::lower_bound(list.begin(), list.end(), m);
  if (it == list.end() || !(*it == m))
    throw std::invalid_argument("matching " + m.to_string() + " not in list");
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t catalan(int n) {
  std::size_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * static_cast<std::size_t>(k) + 1) / (static_cast<std::size_t>(k) + 2);
  return c;
}

}  // namespace khtangle
