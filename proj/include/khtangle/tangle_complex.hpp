#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "khtangle/arc_algebra.hpp"
#include "khtangle/burnside.hpp"
#include "khtangle/linalg.hpp"

namespace khtangle {

/// (-1)^{#{j < i : v_j = 1}}; v is a bitmask with bit j the smoothing of crossing j.
int standard_sign(std::uint32_t v, int i);

using Chain = std::vector<std::pair<std::size_t, std::int64_t>>;  // sorted by generator index

/// The Khovanov complex of (H^m, H^n)-bimodules of an oriented tangle diagram.
///
/// Generators are ordered by block (a, b) (matching indices, lexicographic),
/// then by cube vertex v (bit c is the smoothing of crossing c), then by
/// labeling mask of the circles of a T_v b-bar.
class KhComplex {
 public:
  struct Generator {
    int a = 0, b = 0;
    std::uint32_t v = 0;
    Mask x = 0;
    int h = 0, q = 0;
  };

  KhComplex(const TangleDiagram& t, int jobs = 1, LadybugConvention ladybug = {});

  const TangleDiagram& diagram() const { return t_; }
  int m() const { return t_.m(); }
  int n() const { return t_.n(); }
  int num_crossings() const { return t_.num_crossings(); }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }

  const ArcAlgebra& left_algebra() const { return *left_; }
  const ArcAlgebra& right_algebra() const { return *right_; }
  const std::vector<CrossinglessMatching>& left_matchings() const { return left_->matchings(); }
  const std::vector<CrossinglessMatching>& right_matchings() const { return right_->matchings(); }

  std::size_t size() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  std::size_t index(int a, int b, std::uint32_t v, Mask x) const;
  std::size_t block_begin(int a, int b) const;
  std::size_t block_end(int a, int b) const;
  const ClosedConfig& config(int a, int b, std::uint32_t v) const { return cube(a, b).config(v); }
  /// The Burnside-valued cube of block (a, b) (unshifted stable functor data).
  const BurnsideCube& cube(int a, int b) const;

  /// Differential entries (target, source, value), sorted by source.
  const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& differential() const { return d_; }
  Chain apply_differential(std::size_t g) const;

  /// alpha in H^m (basis index) acting on generator g from the left.
  Chain left_act(std::size_t alpha, std::size_t g) const;
  /// beta in H^n acting on g from the right.
  Chain right_act(std::size_t g, std::size_t beta) const;

  GradedComplex graded() const;
  GradedComplex graded_block(int a, int b) const;

 private:
  int index_of_block(int a, int b) const { return a * static_cast<int>(right_matchings().size()) + b; }
  const SaddleChain& left_chain(int a2, int a, int b, std::uint32_t v) const;
  const SaddleChain& right_chain(int a, int b, int b2, std::uint32_t v) const;

  TangleDiagram t_;
  int n_plus_ = 0, n_minus_ = 0;
  std::shared_ptr<const ArcAlgebra> left_, right_;
  std::vector<BurnsideCube> cubes_;
  std::vector<std::size_t> block_offsets_;
  std::vector<std::vector<std::size_t>> vertex_offsets_;  // per block, per v
  std::vector<Generator> gens_;
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> d_;
  std::vector<std::size_t> d_begin_;  // per source generator, into d_

  mutable std::mutex cache_mutex_;
  mutable std::map<std::array<std::uint32_t, 4>, std::unique_ptr<SaddleChain>> left_cache_, right_cache_;
};

/// The Burnside-level cube of block (a, b) together with the shift S = N+.
struct StableFunctorData {
  const BurnsideCube* cube = nullptr;
  int shift = 0;
};
StableFunctorData stable_functor_data(const KhComplex& K, int a, int b);

struct ComplexReport {
  bool d_squared_zero = true;
  bool gradings = true;
  bool actions_chain_maps = true;
  bool unital = true;
  bool associative = true;
  bool actions_commute = true;
  bool action_gradings = true;
  std::vector<std::string> problems;
  bool ok() const {
    return d_squared_zero && gradings && actions_chain_maps && unital && associative && actions_commute &&
           action_gradings;
  }
};

/// Exhaustive check of d^2 = 0, gradings, and the bimodule axioms.
ComplexReport verify_complex(const KhComplex& K, int jobs = 1);

/// Homology of the whole complex, or of block (a, b).
BigradedHomology complex_homology(const KhComplex& K, int jobs = 1);
BigradedHomology block_homology(const KhComplex& K, int a, int b, int jobs = 1);

/// Complex of the diagram with crossings reordered (crossing k of the new
/// diagram is crossing perm[k] of the old one), with the signed isomorphism
/// old generator -> (new generator, sign).
struct ReorderedComplex {
  std::unique_ptr<KhComplex> complex;
  std::vector<std::pair<std::size_t, int>> iso;
  bool chain_iso_verified = false;
};
ReorderedComplex reorder_crossings(const KhComplex& K, const std::vector<int>& perm, int jobs = 1);

}  // namespace khtangle
