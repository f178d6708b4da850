#include "khtangle/gluing.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "khtangle/cobordism.hpp"
#include "khtangle/parallel.hpp"

namespace khtangle {

namespace {

std::uint64_t pair_key(std::size_t g, std::size_t g2, std::size_t n2) { return static_cast<std::uint64_t>(g) * n2 + g2; }

using Accum = std::map<std::size_t, std::int64_t>;

Chain finish(Accum&& acc) {
  Chain c;
  for (const auto& [k, v] : acc)
    if (v != 0) c.emplace_back(k, v);
  return c;
}

// Global index in the composite of raw pair (g, g2): vertex bits of the
// second factor sit above those of the first.
struct GluingChains {
  const KhComplex& M;
  const KhComplex& N;
  const KhComplex& K;
  const ComposedTangle& comp;
  SurgeryOrder order;
  std::mutex mutex;
  std::map<std::array<std::uint32_t, 5>, std::unique_ptr<SaddleChain>> cache;

  const SaddleChain& get(int a, int b, int c, std::uint32_t v, std::uint32_t w) {
    std::lock_guard lock(mutex);
    auto& slot = cache[{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c), v, w}];
    if (!slot) {
      const std::uint32_t vw = v | (w << M.num_crossings());
      const ClosedConfig& target = K.config(a, c, vw);
      auto circle = [&](int copy, int edge) {
        const auto& map = copy == 0 ? comp.first_edge_map : comp.second_edge_map;
        return target.system.circle_of_node[static_cast<std::size_t>(2 * map[static_cast<std::size_t>(edge)])];
      };
      slot = std::make_unique<SaddleChain>(multi_saddle(M.diagram(), M.config(a, b, v), N.diagram(), N.config(b, c, w),
                                                        M.right_matchings()[static_cast<std::size_t>(b)], order, circle,
                                                        target.num_circles()));
    }
    return *slot;
  }

  Chain image(std::size_t g, std::size_t g2) {
    const auto& x = M.generator(g);
    const auto& y = N.generator(g2);
    if (x.b != y.a) return {};
    const SaddleChain& ch = get(x.a, x.b, y.b, x.v, y.v);
    const int k1 = M.config(x.a, x.b, x.v).num_circles();
    const std::int64_t eps = (M.n_minus() * std::popcount(y.v)) % 2 ? -1 : 1;
    const std::uint32_t vw = x.v | (y.v << M.num_crossings());
    Accum acc;
    for (const auto& [mask, coef] : apply_chain(ch, x.x | (y.x << k1))) acc[K.index(x.a, y.b, vw, mask)] += eps * coef;
    return finish(std::move(acc));
  }
};

}  // namespace

TensorProduct::TensorProduct(const KhComplex& M, const KhComplex& N, int jobs) : M_(&M), N_(&N) {
  if (M.n() != N.m())
    throw std::invalid_argument("tensor product: right boundary of the first factor (" + std::to_string(2 * M.n()) +
                                ") differs from left boundary of the second (" + std::to_string(2 * N.m()) + ")");
  const std::size_t n2 = N.size();

  // Raw generators, grouped by (a, c, v, w, q).
  std::map<std::tuple<int, int, std::uint32_t, std::uint32_t, int>, std::size_t> block_index;
  for (std::size_t g = 0; g < M.size(); ++g) {
    const auto& x = M.generator(g);
    for (int c = 0; c < static_cast<int>(N.right_matchings().size()); ++c)
      for (std::size_t g2 = N.block_begin(x.b, c); g2 < N.block_end(x.b, c); ++g2) {
        const auto& y = N.generator(g2);
        const auto key = std::make_tuple(x.a, y.b, x.v, y.v, x.q + y.q);
        auto [it, fresh] = block_index.emplace(key, blocks_.size());
        if (fresh) {
          Block B;
          B.a = x.a;
          B.c = y.b;
          B.v = x.v;
          B.w = y.v;
          B.h = x.h + y.h;
          B.q = x.q + y.q;
          blocks_.push_back(std::move(B));
        }
        Block& B = blocks_[it->second];
        where_[pair_key(g, g2, n2)] = {it->second, B.raw.size()};
        B.raw.emplace_back(g, g2);
      }
  }

  // Relations (g alpha) (x) g2 - g (x) (alpha g2) for non-idempotent alpha.
  const ArcAlgebra& H = M.right_algebra();
  std::vector<std::set<Chain>> rel_sets(blocks_.size());
  std::vector<std::mutex> rel_mutex(blocks_.size());
  parallel_for(H.rank(), jobs, [&](std::size_t alpha) {
    const auto& e = H.basis()[alpha];
    if (e.a == e.b && e.x == 0) return;
    std::vector<std::pair<std::size_t, Chain>> acted;  // (g2, alpha g2)
    for (int c = 0; c < static_cast<int>(N.right_matchings().size()); ++c)
      for (std::size_t g2 = N.block_begin(e.b, c); g2 < N.block_end(e.b, c); ++g2)
        acted.emplace_back(g2, N.left_act(alpha, g2));
    for (int a = 0; a < static_cast<int>(M.left_matchings().size()); ++a)
      for (std::size_t g = M.block_begin(a, e.a); g < M.block_end(a, e.a); ++g) {
        const Chain ga = M.right_act(g, alpha);
        for (const auto& [g2, ag2] : acted) {
          std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
          for (const auto& [k, cf] : ga) acc[where_.at(pair_key(k, g2, n2))] += cf;
          for (const auto& [l, cf] : ag2) acc[where_.at(pair_key(g, l, n2))] -= cf;
          Chain rel;
          std::size_t blk = 0;
          for (const auto& [loc, cf] : acc)
            if (cf != 0) {
              blk = loc.first;
              rel.emplace_back(loc.second, cf);
            }
          if (rel.empty()) continue;
          std::lock_guard lock(rel_mutex[blk]);
          rel_sets[blk].insert(std::move(rel));
        }
      }
  });

  parallel_for(blocks_.size(), jobs, [&](std::size_t b) {
    Block& B = blocks_[b];
    B.relations.assign(rel_sets[b].begin(), rel_sets[b].end());
    DenseMatrix R(B.raw.size(), B.relations.size());
    for (std::size_t j = 0; j < B.relations.size(); ++j)
      for (const auto& [i, cf] : B.relations[j]) R(i, j) = static_cast<long>(cf);
    SNFResult s = smith_normal_form(R);
    B.factors = s.invariant_factors;
    B.rank = s.rank;
    B.U = std::move(s.U);
    B.U_inv = std::move(s.U_inv);
  });

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Block& B = blocks_[b];
    for (const auto& f : B.factors)
      if (abs(f) != 1) free_ = false;
    B.first_quotient = quotient_grading_.size();
    for (std::size_t k = 0; k < B.quotient_size(); ++k) {
      quotient_grading_.emplace_back(B.h, B.q);
      quotient_block_.push_back(b);
    }
  }

  // Induced differential: project d of each lift.
  quotient_.grading = quotient_grading_;
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>> parts(quotient_grading_.size());
  parallel_for(quotient_grading_.size(), jobs, [&](std::size_t k) {
    const std::vector<mpz_class> s = lift(k);
    const Block& B = blocks_[quotient_block_[k]];
    std::map<std::size_t, std::map<std::size_t, mpz_class>> image;  // block -> local -> coefficient
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 0) continue;
      for (const auto& [loc, cf] : raw_differential(B.raw[i].first, B.raw[i].second))
        image[loc.first][loc.second] += s[i] * cf;
    }
    for (const auto& [tb, vec] : image) {
      const Block& T = blocks_[tb];
      for (std::size_t j = 0; j < T.quotient_size(); ++j) {
        mpz_class y = 0;
        for (const auto& [i, cf] : vec) y += T.U(T.rank + j, i) * cf;
        if (y == 0) continue;
        if (!y.fits_slong_p()) throw std::overflow_error("tensor product: differential entry overflow");
        parts[k].emplace_back(T.first_quotient + j, k, y.get_si());
      }
    }
  });
  for (auto& p : parts) quotient_.differential.insert(quotient_.differential.end(), p.begin(), p.end());
}

std::pair<std::size_t, std::size_t> TensorProduct::locate(std::size_t g, std::size_t g2) const {
  auto it = where_.find(pair_key(g, g2, N_->size()));
  if (it == where_.end()) throw std::out_of_range("tensor product: pair is not composable");
  return it->second;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> TensorProduct::raw_differential(
    std::size_t g, std::size_t g2) const {
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
  for (const auto& [k, cf] : M_->apply_differential(g)) acc[locate(k, g2)] += cf;
  const std::int64_t s = M_->generator(g).h % 2 ? -1 : 1;
  for (const auto& [l, cf] : N_->apply_differential(g2)) acc[locate(g, l)] += s * cf;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::int64_t>> out;
  for (const auto& [loc, cf] : acc)
    if (cf != 0) out.emplace_back(loc, cf);
  return out;
}

std::size_t TensorProduct::block_of_quotient(std::size_t k) const { return quotient_block_.at(k); }

std::vector<mpz_class> TensorProduct::lift(std::size_t k) const {
  const Block& B = blocks_[quotient_block_.at(k)];
  const std::size_t col = B.rank + (k - B.first_quotient);
  std::vector<mpz_class> s(B.raw.size());
  for (std::size_t i = 0; i < B.raw.size(); ++i) s[i] = B.U_inv(i, col);
  return s;
}

Chain gluing_image(const KhComplex& M, const KhComplex& N, const KhComplex& composite, const ComposedTangle& comp,
                   std::size_t g, std::size_t g2) {
  GluingChains chains{M, N, composite, comp, SurgeryOrder::OutermostFirst, {}, {}};
  return chains.image(g, g2);
}

GluingReport verify_gluing(const TensorProduct& P, const KhComplex& K, const ComposedTangle& comp, int jobs) {
  const KhComplex& M = P.left();
  const KhComplex& N = P.right();
  GluingChains chains{M, N, K, comp, SurgeryOrder::OutermostFirst, {}, {}};
  GluingChains inner{M, N, K, comp, SurgeryOrder::InnermostFirst, {}, {}};
  GluingReport r;
  r.quotient_free = P.quotient_is_free();
  r.tensor_rank = P.quotient_size();
  r.composite_rank = K.size();
  std::mutex mutex;
  auto problem = [&](bool GluingReport::*flag, const std::string& what) {
    std::lock_guard lock(mutex);
    r.*flag = false;
    if (r.problems.size() < 20) r.problems.push_back(what);
  };
  if (!r.quotient_free) {
    r.problems.push_back("tensor product has torsion in its relation cokernel");
  }

  const auto& blocks = P.blocks();
  // Composite generators claimed by the blocks, to make sure they are covered once.
  std::vector<int> claimed(K.size(), 0);
  std::mutex claim_mutex;

  parallel_for(blocks.size(), jobs, [&](std::size_t b) {
    const auto& B = blocks[b];
    std::vector<Chain> img(B.raw.size());
    for (std::size_t i = 0; i < B.raw.size(); ++i) img[i] = chains.image(B.raw[i].first, B.raw[i].second);
    for (std::size_t i = 0; i < B.raw.size(); ++i)
      if (inner.image(B.raw[i].first, B.raw[i].second) != img[i]) {
        problem(&GluingReport::order_independent, "surgery order changes the gluing map");
        break;
      }

    // Homogeneity, and the target generators of this block.
    std::map<std::size_t, std::size_t> targets;
    const std::uint32_t vw = B.v | (B.w << M.num_crossings());
    for (std::size_t t = K.block_begin(B.a, B.c); t < K.block_end(B.a, B.c); ++t) {
      const auto& z = K.generator(t);
      if (z.v == vw && z.q == B.q) targets.emplace(t, targets.size());
    }
    for (std::size_t i = 0; i < B.raw.size(); ++i)
      for (const auto& [t, cf] : img[i]) {
        const auto& z = K.generator(t);
        if (z.h != B.h || z.q != B.q || !targets.contains(t)) {
          std::ostringstream os;
          os << "map not homogeneous at block (h=" << B.h << ", q=" << B.q << "): image in (" << z.h << ", " << z.q
             << ")";
          problem(&GluingReport::homogeneous, os.str());
        }
      }
    {
      std::lock_guard lock(claim_mutex);
      for (const auto& [t, _] : targets) ++claimed[t];
    }

    // Descends to the quotient.
    for (const auto& rel : B.relations) {
      Accum acc;
      for (const auto& [i, cf] : rel)
        for (const auto& [t, v] : img[i]) acc[t] += cf * v;
      if (!finish(std::move(acc)).empty()) {
        problem(&GluingReport::descends, "a relation has nonzero image");
        break;
      }
    }

    // Chain map: G(d x) = d G(x) on raw generators.
    for (std::size_t i = 0; i < B.raw.size(); ++i) {
      Accum lhs, rhs;
      for (const auto& [loc, cf] : P.raw_differential(B.raw[i].first, B.raw[i].second)) {
        const auto& [g, g2] = blocks[loc.first].raw[loc.second];
        for (const auto& [t, v] : chains.image(g, g2)) lhs[t] += cf * v;
      }
      for (const auto& [t, v] : img[i])
        for (const auto& [u, w] : K.apply_differential(t)) rhs[u] += v * w;
      if (finish(std::move(lhs)) != finish(std::move(rhs))) {
        problem(&GluingReport::chain_map, "d G differs from G d");
        break;
      }
    }

    // Bimodule linearity.
    bool linear = true;
    for (std::size_t i = 0; i < B.raw.size() && linear; ++i) {
      const auto& [g, g2] = B.raw[i];
      for (std::size_t alpha = 0; alpha < M.left_algebra().rank(); ++alpha) {
        if (M.left_algebra().basis()[alpha].b != B.a) continue;
        Accum lhs, rhs;
        for (const auto& [k, cf] : M.left_act(alpha, g))
          for (const auto& [t, v] : chains.image(k, g2)) lhs[t] += cf * v;
        for (const auto& [t, v] : img[i])
          for (const auto& [u, w] : K.left_act(alpha, t)) rhs[u] += v * w;
        if (finish(std::move(lhs)) != finish(std::move(rhs))) {
          problem(&GluingReport::bimodule_linear, "left action not preserved");
          linear = false;
          break;
        }
      }
      for (std::size_t beta = 0; beta < N.right_algebra().rank(); ++beta) {
        if (N.right_algebra().basis()[beta].a != B.c) continue;
        Accum lhs, rhs;
        for (const auto& [k, cf] : N.right_act(g2, beta))
          for (const auto& [t, v] : chains.image(g, k)) lhs[t] += cf * v;
        for (const auto& [t, v] : img[i])
          for (const auto& [u, w] : K.right_act(t, beta)) rhs[u] += v * w;
        if (finish(std::move(lhs)) != finish(std::move(rhs))) {
          problem(&GluingReport::bimodule_linear, "right action not preserved");
          linear = false;
          break;
        }
      }
    }

    // The induced map on the quotient block must be unimodular.
    const std::size_t qs = B.quotient_size();
    if (qs != targets.size()) {
      std::ostringstream os;
      os << "block (h=" << B.h << ", q=" << B.q << ") has quotient rank " << qs << " but " << targets.size()
         << " composite generators";
      problem(&GluingReport::isomorphism, os.str());
      return;
    }
    if (qs == 0) return;
    DenseMatrix G(qs, qs);
    for (std::size_t k = 0; k < qs; ++k) {
      const std::size_t col = B.rank + k;
      for (std::size_t i = 0; i < B.raw.size(); ++i) {
        const mpz_class& s = B.U_inv(i, col);
        if (s == 0) continue;
        for (const auto& [t, v] : img[i]) G(targets.at(t), k) += s * v;
      }
    }
    const SNFResult s = smith_normal_form(G);
    bool unimodular = s.rank == qs;
    for (const auto& f : s.invariant_factors) unimodular = unimodular && abs(f) == 1;
    if (!unimodular) problem(&GluingReport::isomorphism, "induced map is not invertible over Z");
  });

  for (std::size_t t = 0; t < K.size(); ++t)
    if (claimed[t] != 1) {
      problem(&GluingReport::isomorphism, "composite generator " + std::to_string(t) + " is claimed " +
                                              std::to_string(claimed[t]) + " times");
      break;
    }
  return r;
}

GluingResult glue(const TangleDiagram& t1, const TangleDiagram& t2, int jobs) {
  GluingResult out;
  out.composed = compose_with_maps(t1, t2);
  out.first = std::make_unique<KhComplex>(t1, jobs);
  out.second = std::make_unique<KhComplex>(t2, jobs);
  out.composite = std::make_unique<KhComplex>(out.composed.diagram, jobs);
  out.tensor = std::make_unique<TensorProduct>(*out.first, *out.second, jobs);
  out.report = verify_gluing(*out.tensor, *out.composite, out.composed, jobs);
  return out;
}

}  // namespace khtangle
