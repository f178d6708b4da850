#include "khtangle/frobenius.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>

namespace khtangle {

int Labeling::n() const { return std::popcount(x_mask); }

namespace frobenius {

namespace {
std::atomic<std::uint64_t> g_counit_calls{0};
}

int multiply(int a, int b) {
  if (a == 1 && b == 1) return -1;
  return a | b;
}

std::vector<std::pair<int, int>> comultiply(int a) {
  if (a == 0) return {{0, 1}, {1, 0}};
  return {{1, 1}};
}

int counit(int a) {
  g_counit_calls.fetch_add(1, std::memory_order_relaxed);
  return a == 1 ? 1 : 0;
}

std::uint64_t counit_invocations() { return g_counit_calls.load(); }

bool check_axioms() {
  // Work with coefficient vectors over the basis {1, X}.
  using Vec2 = std::array<long, 2>;
  using Vec4 = std::array<long, 4>;  // index 2*left + right
  auto mult_vec = [](const Vec4& t) {
    Vec2 out{0, 0};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int r = multiply(a, b);
        if (r >= 0) out[static_cast<std::size_t>(r)] += t[static_cast<std::size_t>(2 * a + b)];
      }
    return out;
  };
  auto comult_vec = [](int a) {
    Vec4 out{0, 0, 0, 0};
    for (auto [l, r] : comultiply(a)) out[static_cast<std::size_t>(2 * l + r)] += 1;
    return out;
  };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      // commutativity
      if (multiply(a, b) != multiply(b, a)) return false;
      for (int c = 0; c < 2; ++c) {
        // associativity
        const int ab = multiply(a, b), bc = multiply(b, c);
        const int lhs = ab < 0 ? -1 : multiply(ab, c);
        const int rhs = bc < 0 ? -1 : multiply(a, bc);
        if (lhs != rhs) return false;
      }
      // unit
      if (multiply(unit(), a) != a) return false;
      // Frobenius identity: Delta(a b) = (a (x) 1) Delta(b)
      Vec4 left{0, 0, 0, 0};
      const int ab = multiply(a, b);
      if (ab >= 0) left = comult_vec(ab);
      Vec4 right{0, 0, 0, 0};
      for (auto [l, r] : comultiply(b)) {
        const int al = multiply(a, l);
        if (al >= 0) right[static_cast<std::size_t>(2 * al + r)] += 1;
      }
      if (left != right) return false;
    }
  // counit: (eps (x) id) Delta = id, and the pairing eps(ab) is nondegenerate
  for (int a = 0; a < 2; ++a) {
    Vec2 v{0, 0};
    for (auto [l, r] : comultiply(a)) v[static_cast<std::size_t>(r)] += counit(l);
    Vec2 e{0, 0};
    e[static_cast<std::size_t>(a)] = 1;
    if (v != e) return false;
  }
  Vec4 unit_tensor{0, 0, 0, 0};
  unit_tensor[0] = 1;
  if (mult_vec(unit_tensor) != Vec2{1, 0}) return false;
  return true;
}

}  // namespace frobenius

namespace {
Mask carry_mask(const Saddle& s, Mask x) {
  Mask out = 0;
  for (int c = 0; c < s.source_circles; ++c) {
    const int t = s.carry[static_cast<std::size_t>(c)];
    if (t >= 0 && ((x >> c) & 1)) out |= Mask{1} << t;
  }
  return out;
}
int bit(Mask x, int c) { return static_cast<int>((x >> c) & 1); }
}  // namespace

std::vector<Mask> apply_saddle(const Saddle& s, Mask x) {
  const Mask base = carry_mask(s, x);
  std::vector<Mask> out;
  if (s.kind == Saddle::Kind::Merge) {
    const int r = frobenius::multiply(bit(x, s.in[0]), bit(x, s.in[1]));
    if (r >= 0) out.push_back(base | (Mask(r) << s.out[0]));
  } else {
    for (auto [l, r] : frobenius::comultiply(bit(x, s.in[0])))
      out.push_back(base | (Mask(l) << s.out[0]) | (Mask(r) << s.out[1]));
  }
  return out;
}

LinComb apply_surgery(const Saddle& s, const LinComb& x) {
  LinComb out;
  for (const auto& [mask, coef] : x)
    for (Mask y : apply_saddle(s, mask)) out[y] += coef;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

LinComb apply_chain(const SaddleChain& chain, Mask x) {
  LinComb cur{{x, 1}};
  for (const auto& s : chain.steps) cur = apply_surgery(s, cur);
  LinComb out;
  for (const auto& [mask, coef] : cur) {
    Mask y = 0;
    for (std::size_t c = 0; c < chain.final_map.size(); ++c)
      if ((mask >> c) & 1) y |= Mask{1} << chain.final_map[c];
    out[y] += coef;
  }
  return out;
}

Labeling birth(const Labeling& x, const std::vector<int>& old_to_new, int new_circles) {
  if (static_cast<int>(old_to_new.size()) != x.circles) throw std::invalid_argument("birth: circle map size mismatch");
  Labeling y{new_circles, 0};
  for (int c = 0; c < x.circles; ++c)
    if ((x.x_mask >> c) & 1) y.x_mask |= Mask{1} << old_to_new[static_cast<std::size_t>(c)];
  return y;
}

int q_grade_algebra(const Labeling& x, int m) { return x.n() - x.p() + m; }
int q_grade_tangle(const Labeling& x, int n, int weight) { return x.n() - x.p() + n - weight; }

}  // namespace khtangle
