#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "khtangle/resolution.hpp"

namespace khtangle {

/// A labeling of circles 0..k-1 by 1 or X; bit c of `x_mask` set means
/// circle c is labeled X. Generators of V(Z) are indexed by their mask.
using Mask = std::uint64_t;

struct Labeling {
  int circles = 0;
  Mask x_mask = 0;
  int n() const;  // circles labeled X
  int p() const { return circles - n(); }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Formal integer combination of labelings of a fixed configuration.
using LinComb = std::map<Mask, std::int64_t>;

/// V = Z[X]/(X^2) on the basis {1, X} (index 0 is 1, index 1 is X).
namespace frobenius {
/// Product of basis elements, or -1 when it vanishes.
int multiply(int a, int b);
/// Coproduct as a list of basis tensors (left, right), all coefficients 1.
std::vector<std::pair<int, int>> comultiply(int a);
constexpr int unit() { return 0; }
/// epsilon(1) = 0, epsilon(X) = 1. Each call bumps counit_invocations().
int counit(int a);
std::uint64_t counit_invocations();
/// Exhaustive check of the Frobenius algebra axioms on the rank-2 basis.
bool check_axioms();
}  // namespace frobenius

/// Images of a labeling under one saddle; every coefficient is 1.
std::vector<Mask> apply_saddle(const Saddle& s, Mask x);
LinComb apply_surgery(const Saddle& s, const LinComb& x);
/// Image under a chain of saddles, relabeled into the target's circles.
LinComb apply_chain(const SaddleChain& chain, Mask x);

/// New circles are labeled 1; old circle c becomes circle old_to_new[c].
Labeling birth(const Labeling& x, const std::vector<int>& old_to_new, int new_circles);

/// n(x) - p(x) + m, the grading on the arc algebra H^m.
int q_grade_algebra(const Labeling& x, int m);
/// n(x) - p(x) + n - |v|, before the writhe shift.
int q_grade_tangle(const Labeling& x, int n, int weight);

}  // namespace khtangle
