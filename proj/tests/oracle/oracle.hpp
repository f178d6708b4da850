#pragma once
// Brute-force reference computations used to check the library. They work
// from the parsed file description only and share no code with the library
// beyond DiagramSpec itself.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khtangle/tangle.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<mpz_class>>;

/// Nonzero invariant factors (absolute values), by plain gcd elimination.
std::vector<mpz_class> naive_snf(Matrix A);

struct Group {
  long free_rank = 0;
  std::vector<mpz_class> torsion;
};
using Homology = std::map<std::pair<int, int>, Group>;

/// Non-crossing perfect matchings of 1..2n, found by filtering all perfect matchings.
std::vector<std::vector<std::pair<int, int>>> brute_matchings(int n);

/// Homology of the closure a T b-bar, with gradings shifted as for block (a, b)
/// of the tangle complex.
Homology block_homology(const khtangle::DiagramSpec& spec, const std::vector<std::pair<int, int>>& a,
                        const std::vector<std::pair<int, int>>& b);
/// Sum over all blocks.
Homology total_homology(const khtangle::DiagramSpec& spec);

/// sum_s A^{#0-smoothings - #1-smoothings} (-A^2 - A^-2)^{circles - 1}, then the
/// writhe normalization (-A^3)^{-w}; exponent of A -> coefficient.
std::map<int, long> jones_in_A(const khtangle::DiagramSpec& spec);

/// Rank of H^n as sum over pairs of matchings of 2^{#circles of a b-bar}.
long arc_algebra_rank(int n);

/// (N+, N-) read off the orientation walks.
std::pair<int, int> writhe(const khtangle::DiagramSpec& spec);

std::string format(const Homology& H);

}  // namespace oracle
