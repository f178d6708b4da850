#include <doctest.h>

#include "khtangle/hochschild.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace khtangle;

namespace {
// H / [H, H] per quantum degree, straight from the multiplication table.
std::map<int, HomologyGroup> commutator_quotient(const ArcAlgebra& A) {
  std::map<int, std::vector<std::size_t>> by_q;
  for (std::size_t i = 0; i < A.rank(); ++i) by_q[A.basis()[i].q].push_back(i);
  std::map<int, HomologyGroup> out;
  for (const auto& [q, idx] : by_q) {
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = k;
    oracle::Matrix rows;
    for (std::size_t x = 0; x < A.rank(); ++x)
      for (std::size_t y = 0; y < A.rank(); ++y) {
        if (A.basis()[x].q + A.basis()[y].q != q) continue;
        std::vector<mpz_class> r(idx.size(), 0);
        for (const auto& [z, c] : A.multiply(x, y)) r[pos.at(z)] += c;
        for (const auto& [z, c] : A.multiply(y, x)) r[pos.at(z)] -= c;
        rows.push_back(r);
      }
    HomologyGroup g;
    const auto f = rows.empty() ? std::vector<mpz_class>{} : oracle::naive_snf(rows);
    g.free_rank = idx.size() - f.size();
    for (const auto& d : f)
      if (d != 1) g.torsion.push_back(d);
    if (!g.zero()) out[q] = g;
  }
  return out;
}

std::size_t total_rank(const std::map<int, HomologyGroup>& m) {
  std::size_t r = 0;
  for (const auto& [q, g] : m) r += g.free_rank;
  return r;
}
}  // namespace

TEST_SUITE("hochschild") {
  TEST_CASE("HH_0 of the identity on two points has rank 2") {
    const KhComplex K(TangleDiagram::identity(1));
    const auto H = hochschild_homology(K, 0);
    CHECK(H.h_min == 0);
    REQUIRE(H.groups.size() == 1);
    CHECK(total_rank(H.groups[0]) == 2);
    CHECK(H.groups[0] == commutator_quotient(K.left_algebra()));
  }

  TEST_CASE("HH_0 of the identity is the commutator quotient") {
    const KhComplex K(TangleDiagram::identity(2));
    CHECK(hochschild_homology(K, 0).groups[0] == commutator_quotient(K.left_algebra()));
  }

  TEST_CASE("frozen low degrees for the identity on two points") {
    const KhComplex K(TangleDiagram::identity(1));
    CHECK(format_hochschild(hochschild_homology(K, 2)) == "0 0 Z\n0 2 Z\n1 2 Z\n1 4 (Z/2)\n2 6 Z\n");
  }

  TEST_CASE("truncation is stable") {
    for (std::string name : {"twist_22_pos", "tangle_22_a"}) {
      CAPTURE(name);
      const KhComplex K(fixture(name));
      CHECK(hochschild_homology(K, 2, 1, 1) == hochschild_homology(K, 2));
    }
  }

  TEST_CASE("rotation invariance") {
    const std::pair<std::string, std::string> pairs[] = {
        {"twist_22_pos", "twist_22_pos"}, {"twist_22_pos", "twist_22_neg"}, {"tangle_24_c", "tangle_42_b"}, {"tangle_22_a", "twist_22_neg"}};
    for (const auto& [f, s] : pairs) {
      CAPTURE(f);
      CAPTURE(s);
      const TangleDiagram t1 = fixture(f);
      const TangleDiagram t2 = orient_to_match(t1, fixture(s));
      const KhComplex K12(compose_tangles(t1, t2), 2);
      const KhComplex K21(compose_tangles(t2, t1), 2);
      CHECK(hochschild_homology(K12, 1, 2) == hochschild_homology(K21, 1, 2));
    }
  }
}
