#include "khtangle/tangle_complex.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "khtangle/parallel.hpp"

namespace khtangle {

namespace {

std::shared_ptr<const ArcAlgebra> shared_arc_algebra(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ArcAlgebra>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const ArcAlgebra>(n);
  return slot;
}

Chain to_chain(std::map<std::size_t, std::int64_t>&& acc) {
  Chain out;
  for (auto [k, v] : acc)
    if (v != 0) out.emplace_back(k, v);
  return out;
}

}  // namespace

int standard_sign(std::uint32_t v, int i) {
  const std::uint32_t below = v & ((1u << i) - 1u);
  return std::popcount(below) % 2 ? -1 : 1;
}

KhComplex::KhComplex(const TangleDiagram& t, int jobs, LadybugConvention ladybug) : t_(t) {
  std::tie(n_plus_, n_minus_) = t_.writhe_counts();
  left_ = shared_arc_algebra(t_.m());
  right_ = shared_arc_algebra(t_.n());
  const int N = t_.num_crossings();
  if (N > 20) throw std::invalid_argument("too many crossings for a full cube");
  const int Ma = static_cast<int>(left_matchings().size()), Mb = static_cast<int>(right_matchings().size());
  std::vector<std::unique_ptr<BurnsideCube>> built(static_cast<std::size_t>(Ma * Mb));
  parallel_for(built.size(), jobs, [&](std::size_t k) {
    const int a = static_cast<int>(k) / Mb, b = static_cast<int>(k) % Mb;
    built[k] = std::make_unique<BurnsideCube>(t_, left_matchings()[static_cast<std::size_t>(a)],
                                              right_matchings()[static_cast<std::size_t>(b)], ladybug);
  });
  for (auto& c : built) cubes_.push_back(std::move(*c));

  const std::uint32_t V = 1u << N;
  for (int a = 0; a < Ma; ++a)
    for (int b = 0; b < Mb; ++b) {
      block_offsets_.push_back(gens_.size());
      std::vector<std::size_t> offs;
      const BurnsideCube& cb = cube(a, b);
      for (std::uint32_t v = 0; v < V; ++v) {
        offs.push_back(gens_.size());
        const int k = cb.config(v).num_circles();
        const int weight = std::popcount(v);
        for (Mask x = 0; x < (Mask{1} << k); ++x) {
          const Labeling lab{k, x};
          gens_.push_back({a, b, v, x, n_minus_ - weight,
                           q_grade_tangle(lab, t_.n(), weight) - n_plus_ + 2 * n_minus_});
        }
      }
      offs.push_back(gens_.size());
      vertex_offsets_.push_back(std::move(offs));
    }
  block_offsets_.push_back(gens_.size());

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out(gens_.size());
  for (int a = 0; a < Ma; ++a)
    for (int b = 0; b < Mb; ++b) {
      const BurnsideCube& cb = cube(a, b);
      for (std::uint32_t v = 0; v < V; ++v)
        for (int i = 0; i < N; ++i) {
          if ((v >> i) & 1) continue;
          const int sign = standard_sign(v, i);
          const Correspondence corr = cb.edge_correspondence(v, i);
          for (const auto& [key, tokens] : corr.fibers())
            out[index(a, b, v, key.second)].emplace_back(index(a, b, v | (1u << i), key.first),
                                                          sign * static_cast<std::int64_t>(tokens.size()));
        }
    }
  d_begin_.push_back(0);
  for (std::size_t s = 0; s < out.size(); ++s) {
    std::sort(out[s].begin(), out[s].end());
    for (auto [tgt, val] : out[s]) d_.emplace_back(tgt, s, val);
    d_begin_.push_back(d_.size());
  }
}

const BurnsideCube& KhComplex::cube(int a, int b) const { return cubes_.at(static_cast<std::size_t>(index_of_block(a, b))); }

std::size_t KhComplex::block_begin(int a, int b) const { return block_offsets_.at(static_cast<std::size_t>(index_of_block(a, b))); }
std::size_t KhComplex::block_end(int a, int b) const { return block_offsets_.at(static_cast<std::size_t>(index_of_block(a, b)) + 1); }

std::size_t KhComplex::index(int a, int b, std::uint32_t v, Mask x) const {
  const auto& offs = vertex_offsets_.at(static_cast<std::size_t>(index_of_block(a, b)));
  const std::size_t i = offs.at(v) + x;
  if (i >= offs.at(v + 1)) throw std::out_of_range("generator index out of range");
  return i;
}

Chain KhComplex::apply_differential(std::size_t g) const {
  Chain c;
  for (std::size_t k = d_begin_.at(g); k < d_begin_.at(g + 1); ++k) c.emplace_back(std::get<0>(d_[k]), std::get<2>(d_[k]));
  return c;
}

const SaddleChain& KhComplex::left_chain(int a2, int a, int b, std::uint32_t v) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = left_cache_[{static_cast<std::uint32_t>(a2), static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), v}];
  if (!slot) {
    const ArcAlgebra& H = left_algebra();
    const ClosedConfig& target = config(a2, b, v);
    const TangleDiagram id = TangleDiagram::identity(m());
    auto circle = [&](int copy, int edge) {
      const int node = copy == 0 ? t_.left_node(edge) : 2 * edge;
      return target.system.circle_of_node[static_cast<std::size_t>(node)];
    };
    slot = std::make_unique<SaddleChain>(multi_saddle(id, H.closure(a2, a), t_, config(a, b, v),
                                                      left_matchings()[static_cast<std::size_t>(a)], H.order(), circle,
                                                      target.num_circles()));
  }
  return *slot;
}

const SaddleChain& KhComplex::right_chain(int a, int b, int b2, std::uint32_t v) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = right_cache_[{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b2), v}];
  if (!slot) {
    const ArcAlgebra& H = right_algebra();
    const ClosedConfig& target = config(a, b2, v);
    const TangleDiagram id = TangleDiagram::identity(n());
    auto circle = [&](int copy, int edge) {
      const int node = copy == 0 ? 2 * edge : t_.right_node(edge);
      return target.system.circle_of_node[static_cast<std::size_t>(node)];
    };
    slot = std::make_unique<SaddleChain>(multi_saddle(t_, config(a, b, v), id, H.closure(b, b2),
                                                      right_matchings()[static_cast<std::size_t>(b)], H.order(), circle,
                                                      target.num_circles()));
  }
  return *slot;
}

Chain KhComplex::left_act(std::size_t alpha, std::size_t g) const {
  const auto& e = left_algebra().basis().at(alpha);
  const Generator& x = generator(g);
  if (e.b != x.a) return {};
  const SaddleChain& ch = left_chain(e.a, x.a, x.b, x.v);
  std::map<std::size_t, std::int64_t> acc;
  for (const auto& [mask, coef] : apply_chain(ch, e.x | (x.x << e.circles))) acc[index(e.a, x.b, x.v, mask)] += coef;
  return to_chain(std::move(acc));
}

Chain KhComplex::right_act(std::size_t g, std::size_t beta) const {
  const auto& e = right_algebra().basis().at(beta);
  const Generator& x = generator(g);
  if (e.a != x.b) return {};
  const SaddleChain& ch = right_chain(x.a, x.b, e.b, x.v);
  const int k1 = config(x.a, x.b, x.v).num_circles();
  std::map<std::size_t, std::int64_t> acc;
  for (const auto& [mask, coef] : apply_chain(ch, x.x | (e.x << k1))) acc[index(x.a, e.b, x.v, mask)] += coef;
  return to_chain(std::move(acc));
}

GradedComplex KhComplex::graded() const {
  GradedComplex C;
  for (const auto& g : gens_) C.grading.emplace_back(g.h, g.q);
  C.differential = d_;
  return C;
}

GradedComplex KhComplex::graded_block(int a, int b) const {
  GradedComplex C;
  const std::size_t lo = block_begin(a, b), hi = block_end(a, b);
  for (std::size_t g = lo; g < hi; ++g) C.grading.emplace_back(gens_[g].h, gens_[g].q);
  for (std::size_t k = d_begin_[lo]; k < d_begin_[hi]; ++k) {
    const auto& [t, s, v] = d_[k];
    C.differential.emplace_back(t - lo, s - lo, v);
  }
  return C;
}

StableFunctorData stable_functor_data(const KhComplex& K, int a, int b) { return {&K.cube(a, b), K.n_plus()}; }

// ---------------------------------------------------------------------------

namespace {

Chain apply_linear(const Chain& c, const std::function<Chain(std::size_t)>& f) {
  std::map<std::size_t, std::int64_t> acc;
  for (auto [g, coef] : c)
    for (auto [h, v] : f(g)) acc[h] += coef * v;
  return to_chain(std::move(acc));
}

}  // namespace

ComplexReport verify_complex(const KhComplex& K, int jobs) {
  ComplexReport r;
  std::mutex mu;
  auto problem = [&](bool ComplexReport::*flag, const std::string& what) {
    std::lock_guard lock(mu);
    r.*flag = false;
    if (r.problems.size() < 50) r.problems.push_back(what);
  };
  if (auto err = check_graded_complex(K.graded())) {
    const bool grading = err->find("d^2") == std::string::npos;
    problem(grading ? &ComplexReport::gradings : &ComplexReport::d_squared_zero, *err);
  }
  const ArcAlgebra& L = K.left_algebra();
  const ArcAlgebra& R = K.right_algebra();
  auto d = [&](std::size_t g) { return K.apply_differential(g); };
  parallel_for(K.size(), jobs, [&](std::size_t g) {
    const auto& x = K.generator(g);
    const std::string tag = "generator " + std::to_string(g);
    // unit
    {
      Chain sum_l, sum_r;
      for (int a = 0; a < L.num_matchings(); ++a)
        for (auto t : K.left_act(L.idempotent(a), g)) sum_l.push_back(t);
      for (int b = 0; b < R.num_matchings(); ++b)
        for (auto t : K.right_act(g, R.idempotent(b))) sum_r.push_back(t);
      const Chain want{{g, 1}};
      if (sum_l != want || sum_r != want) problem(&ComplexReport::unital, tag + ": idempotents do not act as the unit");
    }
    const Chain dg = d(g);
    for (std::size_t alpha = 0; alpha < L.rank(); ++alpha) {
      if (L.basis()[alpha].b != x.a) continue;
      const Chain ag = K.left_act(alpha, g);
      for (auto [h, c] : ag)
        if (K.generator(h).q != x.q + L.basis()[alpha].q || K.generator(h).h != x.h)
          problem(&ComplexReport::action_gradings, tag + ": left action is not homogeneous");
      // chain map: d(alpha g) = alpha d(g)
      if (apply_linear(ag, d) != apply_linear(dg, [&](std::size_t k) { return K.left_act(alpha, k); }))
        problem(&ComplexReport::actions_chain_maps, tag + ": left action of " + std::to_string(alpha) + " does not commute with d");
      // associativity: (beta alpha) g = beta (alpha g)
      for (std::size_t beta = 0; beta < L.rank(); ++beta) {
        if (L.basis()[beta].b != L.basis()[alpha].a) continue;
        const Element prod = L.multiply(beta, alpha);
        const Chain lhs = apply_linear(Chain(prod.begin(), prod.end()),
                                       [&](std::size_t k) { return K.left_act(k, g); });
        const Chain rhs = apply_linear(ag, [&](std::size_t k) { return K.left_act(beta, k); });
        if (lhs != rhs) problem(&ComplexReport::associative, tag + ": left action is not associative");
      }
      // (alpha g) gamma = alpha (g gamma)
      for (std::size_t gamma = 0; gamma < R.rank(); ++gamma) {
        if (R.basis()[gamma].a != x.b) continue;
        const Chain lhs = apply_linear(ag, [&](std::size_t k) { return K.right_act(k, gamma); });
        const Chain rhs = apply_linear(K.right_act(g, gamma), [&](std::size_t k) { return K.left_act(alpha, k); });
        if (lhs != rhs) problem(&ComplexReport::actions_commute, tag + ": left and right actions do not commute");
      }
    }
    for (std::size_t gamma = 0; gamma < R.rank(); ++gamma) {
      if (R.basis()[gamma].a != x.b) continue;
      const Chain gg = K.right_act(g, gamma);
      for (auto [h, c] : gg)
        if (K.generator(h).q != x.q + R.basis()[gamma].q || K.generator(h).h != x.h)
          problem(&ComplexReport::action_gradings, tag + ": right action is not homogeneous");
      if (apply_linear(gg, d) != apply_linear(dg, [&](std::size_t k) { return K.right_act(k, gamma); }))
        problem(&ComplexReport::actions_chain_maps, tag + ": right action does not commute with d");
      for (std::size_t delta = 0; delta < R.rank(); ++delta) {
        if (R.basis()[delta].a != R.basis()[gamma].b) continue;
        const Element prod = R.multiply(gamma, delta);
        const Chain lhs = apply_linear(Chain(prod.begin(), prod.end()),
                                       [&](std::size_t k) { return K.right_act(g, k); });
        const Chain rhs = apply_linear(gg, [&](std::size_t k) { return K.right_act(k, delta); });
        if (lhs != rhs) problem(&ComplexReport::associative, tag + ": right action is not associative");
      }
    }
  });
  return r;
}

BigradedHomology complex_homology(const KhComplex& K, int jobs) { return homology(K.graded(), jobs); }

BigradedHomology block_homology(const KhComplex& K, int a, int b, int jobs) {
  return homology(K.graded_block(a, b), jobs);
}

ReorderedComplex reorder_crossings(const KhComplex& K, const std::vector<int>& perm, int jobs) {
  ReorderedComplex out;
  out.complex = std::make_unique<KhComplex>(K.diagram().with_crossing_order(perm), jobs);
  const KhComplex& K2 = *out.complex;
  const int N = K.num_crossings();
  auto map_vertex = [&](std::uint32_t v) {
    std::uint32_t w = 0;
    for (int k = 0; k < N; ++k)
      if ((v >> perm[static_cast<std::size_t>(k)]) & 1) w |= 1u << k;
    return w;
  };
  std::vector<int> new_pos(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) new_pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k;
  // vertex signs by breadth-first propagation along cube edges
  const std::uint32_t V = 1u << N;
  std::vector<int> eps(V, 0);
  eps[0] = 1;
  for (std::uint32_t v = 0; v < V; ++v)  // numeric order visits v before v + e_i
    for (int i = 0; i < N; ++i)
      if (!((v >> i) & 1) && eps[v | (1u << i)] == 0)
        eps[v | (1u << i)] = eps[v] * standard_sign(v, i) * standard_sign(map_vertex(v), new_pos[static_cast<std::size_t>(i)]);
  out.iso.resize(K.size());
  for (std::size_t g = 0; g < K.size(); ++g) {
    const auto& x = K.generator(g);
    out.iso[g] = {K2.index(x.a, x.b, map_vertex(x.v), x.x), eps[x.v]};
  }
  // chain map check: Phi(d g) = d'(Phi g)
  bool ok = true;
  for (std::size_t g = 0; g < K.size() && ok; ++g) {
    std::map<std::size_t, std::int64_t> lhs, rhs;
    for (auto [h, c] : K.apply_differential(g)) lhs[out.iso[h].first] += c * out.iso[h].second;
    for (auto [h, c] : K2.apply_differential(out.iso[g].first)) rhs[h] += c * out.iso[g].second;
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    ok = lhs == rhs && K.generator(g).h == K2.generator(out.iso[g].first).h &&
         K.generator(g).q == K2.generator(out.iso[g].first).q;
  }
  out.chain_iso_verified = ok;
  return out;
}

}  // namespace khtangle
