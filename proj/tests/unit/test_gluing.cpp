#include <doctest.h>

#include "khtangle/gluing.hpp"
#include "support.hpp"

using namespace khtangle;

namespace {
void check_pair(const TangleDiagram& t1, const TangleDiagram& t2_raw) {
  const TangleDiagram t2 = orient_to_match(t1, t2_raw);
  const GluingResult g = glue(t1, t2, 2);
  CHECK(g.report.quotient_free);
  CHECK(g.report.descends);
  CHECK(g.report.chain_map);
  CHECK(g.report.homogeneous);
  CHECK(g.report.bimodule_linear);
  CHECK(g.report.isomorphism);
  CHECK(g.report.order_independent);
  CHECK(g.report.tensor_rank == g.report.composite_rank);
  CHECK(compare_homology(homology(g.tensor->quotient_complex()), complex_homology(*g.composite)) == std::nullopt);
}
}  // namespace

TEST_SUITE("gluing") {
  TEST_CASE("identity with identity") { check_pair(TangleDiagram::identity(1), TangleDiagram::identity(1)); }
  TEST_CASE("twist with twist") { check_pair(fixture("twist_22_pos"), fixture("twist_22_pos")); }
  TEST_CASE("twist with inverse twist") { check_pair(fixture("twist_22_pos"), fixture("twist_22_neg")); }
  TEST_CASE("tangle with identity") {
    check_pair(fixture("tangle_22_a"), TangleDiagram::identity(1));
    check_pair(fixture("tangle_44_a"), TangleDiagram::identity(2));
  }
  TEST_CASE("crossing closed off by a crossing cap") {
    check_pair(fixture("one_crossing_04"), fixture("cap_crossing_40"));
  }
  TEST_CASE("cups into a (4,4)-tangle") { check_pair(fixture("cups2"), fixture("tangle_44_a")); }
  TEST_CASE("(2,4) then (4,2)") {
    check_pair(fixture("tangle_24_c"), fixture("tangle_42_a"));
    check_pair(fixture("tangle_24_c"), fixture("tangle_42_b"));
  }

  TEST_CASE("cup then cap is the unknot") {
    const GluingResult g = glue(fixture("cup"), orient_to_match(fixture("cup"), fixture("cap")));
    CHECK(g.report.ok());
    CHECK(format_homology(homology(g.tensor->quotient_complex())) == "0 -1 Z\n0 1 Z\n");
    CHECK(format_homology(complex_homology(*g.composite)) == "0 -1 Z\n0 1 Z\n");
  }

  TEST_CASE("T composed with the identity has the homology of T") {
    const TangleDiagram t = fixture("tangle_22_b");
    const GluingResult g = glue(t, orient_to_match(t, TangleDiagram::identity(1)));
    CHECK(g.report.ok());
    CHECK(compare_homology(homology(g.tensor->quotient_complex()), complex_homology(KhComplex(t))) == std::nullopt);
  }

  TEST_CASE("gluing images are homogeneous") {
    const TangleDiagram t1 = fixture("twist_22_pos");
    const TangleDiagram t2 = fixture("twist_22_neg");
    const GluingResult g = glue(t1, orient_to_match(t1, t2));
    const KhComplex& M = *g.first;
    const KhComplex& N = *g.second;
    for (std::size_t x = 0; x < M.size(); ++x)
      for (std::size_t y = 0; y < N.size(); ++y) {
        if (M.generator(x).b != N.generator(y).a) continue;
        for (const auto& [z, c] : gluing_image(M, N, *g.composite, g.composed, x, y)) {
          CHECK(c != 0);
          CHECK(g.composite->generator(z).h == M.generator(x).h + N.generator(y).h);
        }
      }
  }
}
