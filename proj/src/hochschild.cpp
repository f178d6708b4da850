#include "khtangle/hochschild.hpp"

#include <cstring>
#include <map>
#include <sstream>
#include <unordered_map>

#include "khtangle/parallel.hpp"

namespace khtangle {

namespace {

std::string key_of(std::size_t m, const std::vector<std::uint32_t>& bar) {
  std::string k(sizeof(std::uint64_t) + 4 * bar.size(), '\0');
  const std::uint64_t mm = m;
  std::memcpy(k.data(), &mm, sizeof mm);
  if (!bar.empty()) std::memcpy(k.data() + sizeof mm, bar.data(), 4 * bar.size());
  return k;
}

}  // namespace

HochschildComplex::HochschildComplex(const KhComplex& M, int max_bar, int jobs) : max_bar_(max_bar) {
  if (M.m() != M.n())
    throw std::invalid_argument("Hochschild homology needs a (2n,2n)-tangle, got (" + std::to_string(2 * M.m()) + "," +
                                std::to_string(2 * M.n()) + ")");
  if (max_bar < 0) throw std::invalid_argument("Hochschild homology: negative bar degree");
  const ArcAlgebra& H = M.right_algebra();
  const int nm = H.num_matchings();

  // Non-idempotent basis elements by source block row a (elements of (a, b)).
  std::vector<std::vector<std::uint32_t>> from(static_cast<std::size_t>(nm));
  for (std::size_t i = 0; i < H.rank(); ++i) {
    const auto& e = H.basis()[i];
    if (e.a == e.b && e.x == 0) continue;
    from[static_cast<std::size_t>(e.a)].push_back(static_cast<std::uint32_t>(i));
  }

  // Enumerate m (x) h_1 (x) ... (x) h_k with m in M(a, b), h_1 in (b, c_1), ..., h_k in (c_{k-1}, a).
  std::unordered_map<std::string, std::size_t> index;
  for (int k = 0; k <= max_bar; ++k)
    for (std::size_t m = 0; m < M.size(); ++m) {
      const auto& g = M.generator(m);
      std::vector<std::uint32_t> bar;
      auto rec = [&](auto&& self, int at, int q) -> void {
        if (static_cast<int>(bar.size()) == k) {
          if (at != g.a) return;
          index.emplace(key_of(m, bar), gens_.size());
          gens_.push_back({m, bar, k + g.h, q});
          return;
        }
        for (std::uint32_t e : from[static_cast<std::size_t>(at)]) {
          bar.push_back(e);
          self(self, H.basis()[e].b, q + H.basis()[e].q);
          bar.pop_back();
        }
      };
      rec(rec, g.b, g.q);
    }

  // Products of non-idempotents never meet the idempotents (q > 0), so the
  // normalized complex needs no projection.
  std::vector<Element> products(H.rank() * H.rank());
  parallel_for(H.rank(), jobs, [&](std::size_t x) {
    for (std::size_t y = 0; y < H.rank(); ++y)
      if (H.basis()[x].b == H.basis()[y].a) products[x * H.rank() + y] = H.multiply(x, y);
  });

  total_.grading.reserve(gens_.size());
  for (const auto& g : gens_) total_.grading.emplace_back(g.t, g.q);
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>> parts(gens_.size());
  parallel_for(gens_.size(), jobs, [&](std::size_t s) {
    const Generator& g = gens_[s];
    const int k = static_cast<int>(g.bar.size());
    std::map<std::size_t, std::int64_t> acc;
    auto add = [&](std::size_t m, const std::vector<std::uint32_t>& bar, std::int64_t c) {
      for (auto e : bar)
        if (H.basis()[e].q == 0) return;  // idempotent: zero in the normalized complex
      acc[index.at(key_of(m, bar))] += c;
    };
    if (k > 0) {
      // b_0: m h_1 (x) h_2 ...
      std::vector<std::uint32_t> rest(g.bar.begin() + 1, g.bar.end());
      for (const auto& [m2, c] : M.right_act(g.m, g.bar[0])) add(m2, rest, c);
      // b_i: ... (x) h_i h_{i+1} (x) ...
      for (int i = 1; i < k; ++i) {
        const std::int64_t sign = i % 2 ? -1 : 1;
        const auto& prod = products[g.bar[static_cast<std::size_t>(i - 1)] * H.rank() + g.bar[static_cast<std::size_t>(i)]];
        for (const auto& [e, c] : prod) {
          std::vector<std::uint32_t> bar(g.bar.begin(), g.bar.begin() + (i - 1));
          bar.push_back(static_cast<std::uint32_t>(e));
          bar.insert(bar.end(), g.bar.begin() + (i + 1), g.bar.end());
          add(g.m, bar, sign * c);
        }
      }
      // b_k: h_k m (x) h_1 ... h_{k-1}
      std::vector<std::uint32_t> front(g.bar.begin(), g.bar.end() - 1);
      const std::int64_t sign = k % 2 ? -1 : 1;
      for (const auto& [m2, c] : M.left_act(g.bar.back(), g.m)) add(m2, front, sign * c);
    }
    const std::int64_t sd = k % 2 ? -1 : 1;
    for (const auto& [m2, c] : M.apply_differential(g.m)) add(m2, g.bar, sd * c);
    for (const auto& [t, c] : acc)
      if (c != 0) parts[s].emplace_back(t, s, c);
  });
  for (auto& p : parts) total_.differential.insert(total_.differential.end(), p.begin(), p.end());
}

HochschildHomology hochschild_homology(const KhComplex& M, int k, int extra, int jobs) {
  if (k < 0) throw std::invalid_argument("Hochschild homology: negative degree");
  const HochschildComplex C(M, k + 1 + extra, jobs);
  HochschildHomology out;
  out.h_min = -M.n_plus();
  out.k = k;
  out.groups.resize(static_cast<std::size_t>(k + 1));
  for (const auto& [tq, grp] : homology(C.total(), jobs)) {
    const int i = tq.first - out.h_min;
    if (i >= 0 && i <= k) out.groups[static_cast<std::size_t>(i)][tq.second] = grp;
  }
  return out;
}

HochschildHomology hochschild_homology(const KhComplex& M, int k, int jobs) { return hochschild_homology(M, k, 0, jobs); }

std::string format_hochschild(const HochschildHomology& H) {
  std::ostringstream os;
  for (std::size_t i = 0; i < H.groups.size(); ++i)
    for (const auto& [q, g] : H.groups[i]) os << i << ' ' << q << ' ' << format_group(g) << '\n';
  return os.str();
}

bool operator==(const HochschildHomology& a, const HochschildHomology& b) {
  return a.h_min == b.h_min && a.k == b.k && a.groups == b.groups;
}

}  // namespace khtangle
