#include <doctest.h>

#include <filesystem>

#include "support.hpp"

using namespace khtangle;

TEST_SUITE("tgl") {
  TEST_CASE("parse a small file") {
    const std::string text =
        "# one positive twist\n"
        "left: 2\n"
        "right: 2\n"
        "crossings:\n"
        "  1 2 3 4   # under-strand 1 -> 3\n"
        "left_boundary: 1 4\n"
        "right_boundary: 2 3\n"
        "orientations:\n"
        "  L1 1 3\n"
        "  L2 4 2\n";
    const DiagramSpec s = parse_tgl(text);
    CHECK(s.left == 2);
    CHECK(s.right == 2);
    REQUIRE(s.crossings.size() == 1);
    CHECK(s.crossings[0] == std::array<int, 4>{1, 2, 3, 4});
    CHECK(s.left_boundary == std::vector<int>{1, 4});
    REQUIRE(s.orientations.size() == 2);
    CHECK(s.orientations[0].start_side == 'L');
    CHECK(s.orientations[0].edges == std::vector<int>{1, 3});
    const TangleDiagram t(s);
    CHECK(t.num_crossings() == 1);
  }

  TEST_CASE("syntax errors carry line numbers") {
    auto message = [](const std::string& text) {
      try {
        parse_tgl(text);
      } catch (const DiagramError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("left: 0\nright: x\n") == "line 2: expected an integer, got 'x'");
    CHECK(message("left: 0\nright: 0\ncrossings:\n  1 2 3\n").rfind("line 4:", 0) == 0);
    CHECK(message("left: 0\nleft: 0\n").rfind("line 2: duplicate key", 0) == 0);
    CHECK(message("left: 0\nright: 0\ncolour: red\n").rfind("line 3: unknown key", 0) == 0);
    CHECK(message("right: 0\n") == "missing key 'left'");
    CHECK(message("left: 0\nright: 0\norientations:\n  X1 3\n").rfind("line 4:", 0) == 0);
  }

  TEST_CASE("semantic errors") {
    CHECK_THROWS_AS(tangle_from_tgl("left: 1\nright: 1\nleft_boundary: 1\nright_boundary: 1\n"), DiagramError);
    CHECK_THROWS_AS(tangle_from_tgl("left: 0\nright: 2\nright_boundary: 1\n"), DiagramError);
    CHECK_THROWS_AS(tangle_from_tgl("left: 0\nright: 0\ncrossings:\n  1 2 3 4\n"), DiagramError);
    CHECK_THROWS_AS(read_tangle_file("/nonexistent/diagram.tgl"), DiagramError);
  }

  TEST_CASE("round trip over the corpus") {
    for (const auto& ent : std::filesystem::directory_iterator(KHTANGLE_FIXTURES_DIR)) {
      if (ent.path().extension() != ".tgl") continue;
      CAPTURE(ent.path().string());
      const TangleDiagram t = read_tangle_file(ent.path().string());
      const std::string text = write_tgl(t.spec());
      const TangleDiagram u = tangle_from_tgl(text);
      CHECK(write_tgl(u.spec()) == text);
      CHECK(writhe_counts(u) == writhe_counts(t));
    }
  }
}
