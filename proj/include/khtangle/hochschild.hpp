#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khtangle/tangle_complex.hpp"

namespace khtangle {

/// Normalized Hochschild complex of a complex of (H^n, H^n)-bimodules,
/// relative to the idempotents: C_k = M (x)_E Hbar^{(x)_E k} with Hbar the
/// span of the non-idempotent basis elements, cut off at bar degree
/// `max_bar`. A generator m (x) h_1 (x) ... (x) h_k sits in total degree
/// k + h(m) and quantum degree q(m) + sum q(h_i); D = b + (-1)^k d_M.
class HochschildComplex {
 public:
  struct Generator {
    std::size_t m = 0;
    std::vector<std::uint32_t> bar;  // algebra basis indices
    int t = 0, q = 0;
  };

  HochschildComplex(const KhComplex& M, int max_bar, int jobs = 1);

  int max_bar() const { return max_bar_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  const GradedComplex& total() const { return total_; }

 private:
  int max_bar_;
  std::vector<Generator> gens_;
  GradedComplex total_;
};

/// HH_i for i = 0..k, where HH_i collects total degree t = h_min + i and
/// h_min = -N+ is the lowest homological degree of M. Bar degrees up to k + 1
/// are used, which makes every reported group exact.
struct HochschildHomology {
  int h_min = 0;
  int k = 0;
  std::vector<std::map<int, HomologyGroup>> groups;  // [i][q]
};
HochschildHomology hochschild_homology(const KhComplex& M, int k, int jobs = 1);
/// Same, computed with `extra` further bar degrees.
HochschildHomology hochschild_homology(const KhComplex& M, int k, int extra, int jobs);

/// "i q group" lines.
std::string format_hochschild(const HochschildHomology& H);
bool operator==(const HochschildHomology& a, const HochschildHomology& b);

}  // namespace khtangle
