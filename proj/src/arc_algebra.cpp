#include "khtangle/arc_algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "khtangle/parallel.hpp"

namespace khtangle {

namespace {

Element normalize(std::map<std::size_t, std::int64_t> m) {
  Element out;
  for (auto [k, v] : m)
    if (v != 0) out.emplace_back(k, v);
  return out;
}

}  // namespace

ArcAlgebra::ArcAlgebra(int n, SurgeryOrder order)
    : n_(n), order_(order), matchings_(enumerate_matchings(n)), id_(TangleDiagram::identity(n)) {
  const int M = num_matchings();
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      closures_.push_back(closed_config(id_, matchings_[static_cast<std::size_t>(a)], {}, matchings_[static_cast<std::size_t>(b)]));
      offsets_.push_back(basis_.size());
      const int k = closures_.back().num_circles();
      for (Mask x = 0; x < (Mask{1} << k); ++x) {
        const Labeling lab{k, x};
        basis_.push_back({a, b, x, k, q_grade_algebra(lab, n)});
      }
    }
  offsets_.push_back(basis_.size());
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int c = 0; c < M; ++c) {
        const ClosedConfig& target = closure(a, c);
        auto circle = [&](int, int edge) { return target.system.circle_of_node[static_cast<std::size_t>(2 * edge)]; };
        chains_.push_back(multi_saddle(id_, closure(a, b), id_, closure(b, c), matchings_[static_cast<std::size_t>(b)],
                                       order_, circle, target.num_circles()));
      }
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int c = 0; c < M; ++c) {
        const SaddleChain& ch = chain(a, b, c);
        const int k1 = closure(a, b).num_circles();
        for (Mask x = 0; x < block_size(a, b); ++x)
          for (Mask y = 0; y < block_size(b, c); ++y) {
            std::map<std::size_t, std::int64_t> acc;
            for (const auto& [mask, coef] : apply_chain(ch, x | (y << k1))) acc[index(a, c, mask)] += coef;
            table_[index(a, b, x) * rank() + index(b, c, y)] = normalize(std::move(acc));
          }
      }
}

const ClosedConfig& ArcAlgebra::closure(int a, int b) const {
  return closures_.at(static_cast<std::size_t>(a * num_matchings() + b));
}

std::size_t ArcAlgebra::block_offset(int a, int b) const {
  return offsets_.at(static_cast<std::size_t>(a * num_matchings() + b));
}

std::size_t ArcAlgebra::block_size(int a, int b) const {
  const auto k = static_cast<std::size_t>(a * num_matchings() + b);
  return offsets_.at(k + 1) - offsets_.at(k);
}

const SaddleChain& ArcAlgebra::chain(int a, int b, int c) const {
  const auto M = static_cast<std::size_t>(num_matchings());
  return chains_.at((static_cast<std::size_t>(a) * M + static_cast<std::size_t>(b)) * M + static_cast<std::size_t>(c));
}

Element ArcAlgebra::multiply(std::size_t x, std::size_t y) const {
  if (basis_.at(x).b != basis_.at(y).a) return {};
  return table_.at(x * rank() + y);
}

Element ArcAlgebra::multiply(const Element& x, const Element& y) const {
  std::map<std::size_t, std::int64_t> acc;
  for (auto [i, ci] : x)
    for (auto [j, cj] : y)
      for (auto [k, ck] : multiply(i, j)) acc[k] += ci * cj * ck;
  return normalize(std::move(acc));
}

Correspondence ArcAlgebra::product_correspondence(int a, int b, int c) const {
  const SaddleChain& ch = chain(a, b, c);
  Correspondence acc = Correspondence::identity(std::size_t{1} << ch.source_circles);
  for (const auto& s : ch.steps) acc = compose(saddle_correspondence(s), acc);
  const int last = ch.steps.empty() ? ch.source_circles : ch.steps.back().target_circles;
  Correspondence relabel(std::size_t{1} << last, std::size_t{1} << ch.target_circles);
  for (Mask x = 0; x < (Mask{1} << last); ++x) {
    Mask y = 0;
    for (int c2 = 0; c2 < last; ++c2)
      if ((x >> c2) & 1) y |= Mask{1} << ch.final_map[static_cast<std::size_t>(c2)];
    relabel.add(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x), {});
  }
  return compose(relabel, acc);
}

AlgebraReport verify_algebra(const ArcAlgebra& A, int jobs) {
  AlgebraReport r;
  std::mutex mu;
  auto problem = [&](bool AlgebraReport::*flag, const std::string& what) {
    std::lock_guard lock(mu);
    r.*flag = false;
    if (r.problems.size() < 50) r.problems.push_back(what);
  };
  const int M = A.num_matchings();
  r.rank = A.rank();
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) r.expected_rank += std::size_t{1} << A.closure(a, b).num_circles();

  // idempotents and unit
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) {
      const Element prod = A.multiply(A.idempotent(a), A.idempotent(b));
      const Element want = a == b ? Element{{A.idempotent(a), 1}} : Element{};
      if (prod != want)
        problem(&AlgebraReport::idempotents, "idempotent product e" + std::to_string(a) + " e" + std::to_string(b));
    }
  Element one;
  for (int a = 0; a < M; ++a) one.emplace_back(A.idempotent(a), 1);
  for (std::size_t x = 0; x < A.rank(); ++x) {
    const Element ex{{x, 1}};
    if (A.multiply(one, ex) != ex || A.multiply(ex, one) != ex)
      problem(&AlgebraReport::unital, "unit fails on basis element " + std::to_string(x));
  }
  // block orthogonality, grading, minimal grading
  for (std::size_t x = 0; x < A.rank(); ++x) {
    const auto& bx = A.basis()[x];
    const bool is_idem = bx.a == bx.b && bx.x == 0;
    if (is_idem != (bx.q == 0) || bx.q < 0)
      problem(&AlgebraReport::minimal_grading, "basis element " + std::to_string(x) + " has grading " + std::to_string(bx.q));
    for (std::size_t y = 0; y < A.rank(); ++y) {
      const auto& by = A.basis()[y];
      const Element p = A.multiply(x, y);
      if (bx.b != by.a && !p.empty())
        problem(&AlgebraReport::orthogonal_blocks, "nonzero product across blocks " + std::to_string(x) + "*" + std::to_string(y));
      for (auto [k, c] : p)
        if (A.basis()[k].q != bx.q + by.q)
          problem(&AlgebraReport::grading, "grading not additive on " + std::to_string(x) + "*" + std::to_string(y));
    }
  }
  // associativity over composable triples
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      for (int c = 0; c < M; ++c) triples.push_back({a, b, c});
  parallel_for(triples.size(), jobs, [&](std::size_t t) {
    const auto [a, b, c] = triples[t];
    for (int d = 0; d < M; ++d)
      for (std::size_t i = 0; i < A.block_size(a, b); ++i)
        for (std::size_t j = 0; j < A.block_size(b, c); ++j) {
          const Element xy = A.multiply(A.block_offset(a, b) + i, A.block_offset(b, c) + j);
          for (std::size_t k = 0; k < A.block_size(c, d); ++k) {
            const Element z{{A.block_offset(c, d) + k, 1}};
            const Element x{{A.block_offset(a, b) + i, 1}};
            const Element lhs = A.multiply(xy, z);
            const Element rhs = A.multiply(x, A.multiply(Element{{A.block_offset(b, c) + j, 1}}, z));
            if (lhs != rhs) problem(&AlgebraReport::associative, "associativity fails on blocks (" + std::to_string(a) + "," +
                                                                   std::to_string(b) + "," + std::to_string(c) + "," +
                                                                   std::to_string(d) + ")");
          }
        }
  });
  // surgery order independence
  const ArcAlgebra other(A.n(), A.order() == SurgeryOrder::OutermostFirst ? SurgeryOrder::InnermostFirst
                                                                           : SurgeryOrder::OutermostFirst);
  for (std::size_t x = 0; x < A.rank(); ++x)
    for (std::size_t y = 0; y < A.rank(); ++y)
      if (A.multiply(x, y) != other.multiply(x, y))
        problem(&AlgebraReport::order_independent, "surgery order changes " + std::to_string(x) + "*" + std::to_string(y));
  // Burnside lift abelianizes to the table
  for (auto [a, b, c] : triples) {
    const auto m = abelianize(A.product_correspondence(a, b, c));
    const int k1 = A.closure(a, b).num_circles();
    for (Mask x = 0; x < A.block_size(a, b); ++x)
      for (Mask y = 0; y < A.block_size(b, c); ++y) {
        std::map<std::size_t, std::int64_t> want;
        for (auto [k, v] : A.multiply(A.index(a, b, x), A.index(b, c, y))) want[k] = v;
        for (Mask z = 0; z < A.block_size(a, c); ++z) {
          const auto it = want.find(A.index(a, c, z));
          const std::int64_t w = it == want.end() ? 0 : it->second;
          if (m[z][x | (y << k1)] != w)
            problem(&AlgebraReport::burnside_lift, "Burnside lift disagrees on block (" + std::to_string(a) + "," +
                                                       std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
  }
  return r;
}

}  // namespace khtangle
