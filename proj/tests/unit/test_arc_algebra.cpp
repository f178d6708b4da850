#include <doctest.h>

#include "khtangle/arc_algebra.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace khtangle;

TEST_SUITE("arc_algebra") {
  TEST_CASE("ranks") {
    CHECK(ArcAlgebra(0).rank() == 1);
    CHECK(ArcAlgebra(1).rank() == 2);
    CHECK(ArcAlgebra(2).rank() == 12);
    CHECK(ArcAlgebra(3).rank() == 104);
    for (int n = 0; n <= 4; ++n) CHECK(static_cast<long>(ArcAlgebra(n).rank()) == oracle::arc_algebra_rank(n));
  }

  TEST_CASE("matchings agree with brute force") {
    for (int n = 0; n <= 5; ++n) {
      const auto lib = enumerate_matchings(n);
      const auto brute = oracle::brute_matchings(n);
      REQUIRE(lib.size() == brute.size());
      for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i].pairs() == brute[i]);
    }
  }

  TEST_CASE("H^1 is Z[X]/X^2") {
    const ArcAlgebra A(1);
    CHECK(A.multiply(0, 0) == Element{{0, 1}});
    CHECK(A.multiply(0, 1) == Element{{1, 1}});
    CHECK(A.multiply(1, 1).empty());
    CHECK(A.basis()[0].q == 0);
    CHECK(A.basis()[1].q == 2);
  }

  TEST_CASE("products across different middle matchings vanish") {
    const ArcAlgebra A(2);
    for (std::size_t x = 0; x < A.rank(); ++x)
      for (std::size_t y = 0; y < A.rank(); ++y)
        if (A.basis()[x].b != A.basis()[y].a) CHECK(A.multiply(x, y).empty());
    // 1_a (a b-bar) = a b-bar
    const std::size_t ab = A.index(0, 1, 1);
    CHECK(A.multiply(A.idempotent(0), ab) == Element{{ab, 1}});
    CHECK(A.multiply(ab, A.idempotent(1)) == Element{{ab, 1}});
    CHECK(A.multiply(A.idempotent(1), ab).empty());
  }

  TEST_CASE("axioms for n up to 3") {
    for (int n = 0; n <= 3; ++n) {
      CAPTURE(n);
      const auto r = verify_algebra(ArcAlgebra(n), 2);
      CHECK(r.rank == r.expected_rank);
      CHECK(r.associative);
      CHECK(r.unital);
      CHECK(r.idempotents);
      CHECK(r.grading);
      CHECK(r.order_independent);
      CHECK(r.burnside_lift);
      CHECK(r.ok());
    }
  }

  TEST_CASE("surgery order does not change products") {
    const ArcAlgebra A(3), B(3, SurgeryOrder::InnermostFirst);
    for (std::size_t x = 0; x < A.rank(); x += 3)
      for (std::size_t y = 0; y < A.rank(); ++y) CHECK(A.multiply(x, y) == B.multiply(x, y));
  }
}
