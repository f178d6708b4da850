#pragma once

#include <array>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "khtangle/tangle_complex.hpp"

namespace khtangle {

/// M (x)_{H^n} N for M = C(T1), N = C(T2), presented as the cokernel of the
/// relations (m alpha) (x) n - m (x) (alpha n) on the free group spanned by
/// pairs of generators with matching middle idempotent.
///
/// The raw group splits into blocks by (a, c, v, w, q); each block is
/// reduced by a Smith normal form U R V = D of its relation matrix R. Rows of
/// U past the rank project onto the quotient basis; the matching columns of
/// U^-1 lift quotient basis vectors back.
class TensorProduct {
 public:
  struct Block {
    int a = 0, c = 0;
    std::uint32_t v = 0, w = 0;
    int h = 0, q = 0;
    std::vector<std::pair<std::size_t, std::size_t>> raw;  // (generator of M, generator of N)
    std::vector<Chain> relations;                          // over local raw indices
    std::vector<mpz_class> factors;                        // invariant factors of the relations
    std::size_t rank = 0;
    DenseMatrix U, U_inv;
    std::size_t first_quotient = 0;  // global index of the first quotient generator
    std::size_t quotient_size() const { return raw.size() - rank; }
  };

  TensorProduct(const KhComplex& M, const KhComplex& N, int jobs = 1);

  const KhComplex& left() const { return *M_; }
  const KhComplex& right() const { return *N_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// False if some relation block has an invariant factor other than 1.
  bool quotient_is_free() const { return free_; }
  std::size_t quotient_size() const { return quotient_grading_.size(); }

  /// Block and local index of a raw pair, if the pair is composable.
  std::pair<std::size_t, std::size_t> locate(std::size_t g, std::size_t g2) const;

  /// d(g (x) g2) = dg (x) g2 + (-1)^{h(g)} g (x) dg2, over raw pairs as
  /// (block, local) -> coefficient.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> raw_differential(std::size_t g,
                                                                                             std::size_t g2) const;
  /// Lift of quotient generator k as local raw coefficients of its block.
  std::vector<mpz_class> lift(std::size_t k) const;
  std::size_t block_of_quotient(std::size_t k) const;

  /// The quotient as a bigraded chain complex.
  const GradedComplex& quotient_complex() const { return quotient_; }

 private:
  const KhComplex* M_;
  const KhComplex* N_;
  std::vector<Block> blocks_;
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> where_;
  std::vector<std::pair<int, int>> quotient_grading_;
  std::vector<std::size_t> quotient_block_;
  GradedComplex quotient_;
  bool free_ = true;
};

struct GluingReport {
  bool quotient_free = true;
  bool descends = true;        // G kills the relations
  bool chain_map = true;
  bool homogeneous = true;
  bool bimodule_linear = true;
  bool isomorphism = true;     // each block of the induced map is unimodular
  bool order_independent = true;  // innermost-first surgery gives the same map
  std::size_t tensor_rank = 0, composite_rank = 0;
  std::vector<std::string> problems;
  bool ok() const { return quotient_free && descends && chain_map && homogeneous && bimodule_linear && isomorphism &&
                     order_independent; }
};

/// The multi-saddle map C(T1) (x) C(T2) -> C(T1 T2) on raw pairs, with the
/// sign (-1)^{N1- |w|}; returns composite generator coefficients.
Chain gluing_image(const KhComplex& M, const KhComplex& N, const KhComplex& composite, const ComposedTangle& comp,
                   std::size_t g, std::size_t g2);

GluingReport verify_gluing(const TensorProduct& P, const KhComplex& composite, const ComposedTangle& comp,
                           int jobs = 1);

/// Everything needed to glue two diagrams and check the result.
struct GluingResult {
  std::unique_ptr<KhComplex> first, second, composite;
  std::unique_ptr<TensorProduct> tensor;
  ComposedTangle composed;
  GluingReport report;
};
GluingResult glue(const TangleDiagram& t1, const TangleDiagram& t2, int jobs = 1);

}  // namespace khtangle
