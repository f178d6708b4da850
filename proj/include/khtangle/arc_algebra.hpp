#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "khtangle/burnside.hpp"
#include "khtangle/cobordism.hpp"

namespace khtangle {

using Term = std::pair<std::size_t, std::int64_t>;
using Element = std::vector<Term>;  // sorted by basis index, no zero coefficients

/// Khovanov's arc algebra H^n with basis the labelings of the closures a b-bar.
/// Basis order: blocks (a, b) in lexicographic order of matching indices,
/// labelings within a block by mask.
class ArcAlgebra {
 public:
  struct BasisElement {
    int a = 0, b = 0;
    Mask x = 0;
    int circles = 0;
    int q = 0;
  };

  explicit ArcAlgebra(int n, SurgeryOrder order = SurgeryOrder::OutermostFirst);

  int n() const { return n_; }
  SurgeryOrder order() const { return order_; }
  const std::vector<CrossinglessMatching>& matchings() const { return matchings_; }
  int num_matchings() const { return static_cast<int>(matchings_.size()); }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }

  const ClosedConfig& closure(int a, int b) const;
  std::size_t block_offset(int a, int b) const;
  std::size_t block_size(int a, int b) const;
  std::size_t index(int a, int b, Mask x) const { return block_offset(a, b) + x; }
  /// The idempotent of matching a: every circle of a a-bar labeled 1.
  std::size_t idempotent(int a) const { return index(a, a, 0); }

  /// The merge cobordism V(a b-bar) (x) V(b c-bar) -> V(a c-bar).
  const SaddleChain& chain(int a, int b, int c) const;

  Element multiply(std::size_t x, std::size_t y) const;
  Element multiply(const Element& x, const Element& y) const;

  /// Burnside lift of the product on block (a, b, c): source generator
  /// x + (y << circles(a b-bar)), target generator a mask of a c-bar.
  Correspondence product_correspondence(int a, int b, int c) const;

 private:
  int n_;
  SurgeryOrder order_;
  std::vector<CrossinglessMatching> matchings_;
  TangleDiagram id_;
  std::vector<ClosedConfig> closures_;  // [a * M + b]
  std::vector<std::size_t> offsets_;
  std::vector<BasisElement> basis_;
  std::vector<SaddleChain> chains_;  // [(a * M + b) * M + c]
  std::unordered_map<std::uint64_t, Element> table_;
};

struct AlgebraReport {
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  bool associative = true;
  bool unital = true;
  bool idempotents = true;
  bool orthogonal_blocks = true;
  bool grading = true;
  bool minimal_grading = true;
  bool order_independent = true;
  bool burnside_lift = true;
  std::vector<std::string> problems;
  bool ok() const {
    return rank == expected_rank && associative && unital && idempotents && orthogonal_blocks && grading &&
           minimal_grading && order_independent && burnside_lift;
  }
};

AlgebraReport verify_algebra(const ArcAlgebra& A, int jobs = 1);

}  // namespace khtangle
