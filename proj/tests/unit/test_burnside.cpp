#include <doctest.h>

#include "khtangle/burnside.hpp"
#include "khtangle/frobenius.hpp"
#include "support.hpp"

using namespace khtangle;

TEST_SUITE("burnside") {
  TEST_CASE("single saddle correspondences") {
    const BurnsideCube B(fixture("hopf"), empty_matching(), empty_matching());
    const Correspondence merge = saddle_correspondence(B.edge(0, 0));
    CHECK(merge.fiber(0, 0).size() == 1);
    CHECK(merge.fiber(1, 3).empty());
    CHECK(merge.fiber(0, 3).empty());
    const Correspondence split = saddle_correspondence(B.edge(1, 1));
    int nonempty = 0;
    for (std::uint32_t y = 0; y < 4; ++y) {
      const auto& f = split.fiber(y, 0);
      CHECK(f.size() <= 1);
      nonempty += static_cast<int>(f.size());
    }
    CHECK(nonempty == 2);
    const auto M = abelianize(split);
    CHECK(M[1][0] == 1);
    CHECK(M[2][0] == 1);
    CHECK(M[0][0] == 0);
    CHECK(M[3][0] == 0);
  }

  TEST_CASE("composition") {
    const BurnsideCube B(fixture("hopf"), empty_matching(), empty_matching());
    const Correspondence split = saddle_correspondence(B.edge(1, 1));
    const Correspondence merge = saddle_correspondence(B.edge(0, 0));
    const Correspondence id1 = Correspondence::identity(2);
    const Correspondence id2 = Correspondence::identity(4);
    CHECK(abelianize(compose(split, id1)) == abelianize(split));
    CHECK(abelianize(compose(id2, split)) == abelianize(split));
    const Correspondence sm = compose(merge, split);
    CHECK(sm.fiber(1, 0).size() == 2);  // 1 -> X twice, through 1(x)X and X(x)1
    CHECK(sm.fiber(0, 0).empty());
    CHECK(sm.fiber(0, 1).empty());
    CHECK(sm.fiber(1, 1).empty());
    CHECK(abelianize(sm)[1][0] == 2);
    // associativity at token level
    const Correspondence a = compose(compose(id1, merge), split);
    const Correspondence b = compose(id1, compose(merge, split));
    CHECK(a == b);
  }

  TEST_CASE("abelianization matches the TQFT on every corpus edge") {
    for (const char* name : {"figure_eight", "tangle_44_a", "tangle_24_b", "borromean"}) {
      const TangleDiagram t = fixture(name);
      for (const auto& a : enumerate_matchings(t.m()))
        for (const auto& b : enumerate_matchings(t.n())) {
          const BurnsideCube B(t, a, b);
          for (std::uint32_t v = 0; v < (1u << t.num_crossings()); ++v)
            for (int i = 0; i < t.num_crossings(); ++i) {
              if (v >> i & 1) continue;
              const auto M = abelianize(B.edge_correspondence(v, i));
              const Saddle& s = B.edge(v, i);
              for (Mask x = 0; x < (Mask{1} << s.source_circles); ++x) {
                std::vector<std::int64_t> col(std::size_t{1} << s.target_circles, 0);
                for (Mask y : apply_saddle(s, x)) col[y] += 1;
                for (std::size_t y = 0; y < col.size(); ++y) CHECK(M[y][x] == col[y]);
              }
            }
        }
    }
  }

  TEST_CASE("faces of the Hopf cube") {
    const BurnsideCube B(fixture("hopf"), empty_matching(), empty_matching());
    const FaceSquare f = B.face(0, 0, 1);
    CHECK_FALSE(f.ladybug);
    CHECK(check_face(f).ok);
    CHECK(B.check_all().ok());
  }

  TEST_CASE("frozen ladybug face") {
    // The two-crossing closure of the one-crossing (0,4)-tangle.
    const BurnsideCube B(fixture("unknot_twisted"), empty_matching(), empty_matching());
    const auto rep = B.check_all();
    CHECK(rep.ok());
    CHECK(rep.ladybug_faces == 1);
    const FaceSquare f = B.face(0, 0, 1);
    REQUIRE(f.ladybug);
    CHECK(check_face(f).ok);
    CHECK(f.via_i.fiber(1, 0).size() == 2);
    const auto& pairs = f.bijection.at({1, 0});
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::make_pair(Token{1}, Token{2}));
    CHECK(pairs[1] == std::make_pair(Token{2}, Token{1}));
    CHECK(B.face_map(0, 0, 1, 0, 1, 1) == 2);
    CHECK(B.face_map(0, 1, 0, 0, 1, 2) == 1);
  }

  TEST_CASE("alternative conventions are coherent too") {
    const TangleDiagram t = fixture("trefoil_pos_r2");
    LadybugConvention left;
    left.rule = LadybugRule::Left;
    LadybugConvention second;
    second.from_second_site = true;
    const BurnsideCube R(t, empty_matching(), empty_matching());
    const BurnsideCube L(t, empty_matching(), empty_matching(), left);
    const BurnsideCube S(t, empty_matching(), empty_matching(), second);
    CHECK(R.check_all().ok());
    CHECK(L.check_all().ok());
    CHECK(S.check_all().ok());
    // reading the matching off either site gives the same bijection
    for (std::uint32_t v = 0; v < 32; ++v)
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
          if ((v >> i & 1) || (v >> j & 1)) continue;
          CHECK(R.face(v, i, j).bijection == S.face(v, i, j).bijection);
        }
  }

  TEST_CASE("coherence over the corpus, six crossings or fewer") {
    for (std::string name : {"hopf", "trefoil_pos", "figure_eight", "braid_r3_b", "trefoil_pos_r2", "borromean",
                             "tangle_44_a", "tangle_24_b", "tangle_44_c", "ladybug_extension"}) {
      CAPTURE(name);
      const TangleDiagram t = fixture(name);
      for (const auto& a : enumerate_matchings(t.m()))
        for (const auto& b : enumerate_matchings(t.n())) CHECK(BurnsideCube(t, a, b).check_all(2).ok());
    }
  }
}
