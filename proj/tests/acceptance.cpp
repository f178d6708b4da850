// Acceptance run: one PASS/FAIL line per criterion, each against a time budget.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "khtangle/arc_algebra.hpp"
#include "khtangle/gluing.hpp"
#include "khtangle/hochschild.hpp"
#include "khtangle/tangle_complex.hpp"
#include "khtangle/tgl.hpp"
#include "oracle.hpp"

using namespace khtangle;

namespace {

int jobs() { return static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))); }

std::string path_of(const std::string& name) { return std::string(KHTANGLE_FIXTURES_DIR) + "/" + name + ".tgl"; }
TangleDiagram load(const std::string& name) { return read_tangle_file(path_of(name)); }
DiagramSpec load_spec(const std::string& name) {
  std::ifstream f(path_of(name));
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_tgl(ss.str());
}

std::vector<std::string> corpus() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(KHTANGLE_FIXTURES_DIR))
    if (e.path().extension() == ".tgl") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

// --- 1
Outcome catalan_counts() {
  Outcome r;
  const std::size_t want[] = {1, 1, 2, 5, 14, 42};
  for (int n = 0; n <= 5; ++n) {
    const auto lib = enumerate_matchings(n);
    if (lib.size() != want[n]) r.fail("n=" + std::to_string(n) + " gives " + std::to_string(lib.size()));
    if (lib.size() != oracle::brute_matchings(n).size()) r.fail("brute force disagrees at n=" + std::to_string(n));
  }
  if (r.ok) r.note = "1 1 2 5 14 42";
  return r;
}

// --- 2
Outcome arc_algebras() {
  Outcome r;
  for (int n = 0; n <= 3; ++n) {
    const ArcAlgebra A(n);
    const auto rep = verify_algebra(A, jobs());
    if (!rep.ok()) r.fail("n=" + std::to_string(n) + ": " + (rep.problems.empty() ? "" : rep.problems.front()));
    if (static_cast<long>(A.rank()) != oracle::arc_algebra_rank(n)) r.fail("rank differs from oracle at n=" + std::to_string(n));
  }
  if (ArcAlgebra(2).rank() != 12) r.fail("rank of H^2 is not 12");
  if (r.ok) r.note = "ranks 1 2 12 104";
  return r;
}

// --- 3
Outcome complexes() {
  Outcome r;
  const auto names = corpus();
  for (const char* need : {"unknot", "unknot_kink_pos", "hopf", "trefoil_pos", "trefoil_neg", "figure_eight",
                           "one_crossing_04", "random_22_1", "random_24_1"})
    if (std::find(names.begin(), names.end(), need) == names.end()) r.fail(std::string("corpus lacks ") + need);
  if (names.size() < 12) r.fail("corpus too small");
  int max_n = 0;
  for (const auto& name : names) {
    const KhComplex K(load(name), jobs());
    max_n = std::max(max_n, K.num_crossings());
    const auto rep = verify_complex(K, jobs());
    if (!rep.ok()) r.fail(name + ": " + (rep.problems.empty() ? "" : rep.problems.front()));
    if (auto e = check_graded_complex(K.graded())) r.fail(name + ": " + *e);
  }
  if (max_n > 8) r.fail("corpus has a diagram with more than 8 crossings");
  if (r.ok) r.note = std::to_string(names.size()) + " diagrams, up to " + std::to_string(max_n) + " crossings";
  return r;
}

// --- 4
Outcome coherence() {
  Outcome r;
  std::size_t cubes = 0, faces = 0, ladybugs = 0, hexagons = 0;
  for (const auto& name : corpus()) {
    const TangleDiagram t = load(name);
    if (t.num_crossings() > 6) continue;
    for (const auto& a : enumerate_matchings(t.m()))
      for (const auto& b : enumerate_matchings(t.n())) {
        const auto rep = BurnsideCube(t, a, b).check_all(jobs());
        ++cubes;
        faces += rep.faces;
        ladybugs += rep.ladybug_faces;
        hexagons += rep.hexagons;
        if (!rep.ok()) r.fail(name + ": " + rep.failures.front());
      }
  }
  LadybugConvention swapped;
  swapped.swapped_face = std::array<std::uint32_t, 3>{0, 0, 1};
  const auto neg = BurnsideCube(load("ladybug_extension"), CrossinglessMatching(0, {}), CrossinglessMatching(0, {}),
                                swapped)
                       .check_all(1);
  const bool caught = std::any_of(neg.failures.begin(), neg.failures.end(),
                                  [](const std::string& f) { return f.find("hexagon") != std::string::npos; });
  if (!caught) r.fail("swapped ladybug matching was not caught by a hexagon");
  if (r.ok)
    r.note = std::to_string(cubes) + " cubes, " + std::to_string(faces) + " faces (" + std::to_string(ladybugs) +
             " ladybug), " + std::to_string(hexagons) + " hexagons; swapped control fails";
  return r;
}

// --- 5
Outcome homology_sanity() {
  Outcome r;
  if (format_homology(complex_homology(KhComplex(load("unknot")))) != "0 -1 Z\n0 1 Z\n") r.fail("unknot");
  const auto names = corpus();
  for (const auto& name : names) {
    const DiagramSpec s = load_spec(name);
    const KhComplex K(TangleDiagram(s), jobs());
    if (format_homology(complex_homology(K, jobs())) != oracle::format(oracle::total_homology(s)))
      r.fail(name + " differs from the oracle");
  }
  bool two = false;
  for (const auto& [hq, g] : oracle::total_homology(load_spec("trefoil_pos")))
    for (const auto& t : g.torsion) two = two || t == 2;
  bool lib_two = false;
  for (const auto& [hq, g] : complex_homology(KhComplex(load("trefoil_pos"))))
    for (const auto& t : g.torsion) lib_two = lib_two || t == 2;
  if (!two || !lib_two) r.fail("no Z/2 in the trefoil");
  if (r.ok) r.note = std::to_string(names.size()) + " diagrams match the oracle; trefoil has Z/2";
  return r;
}

// --- 6
Outcome reidemeister() {
  Outcome r;
  struct Pair {
    std::string label;
    TangleDiagram x, y;
  };
  const TangleDiagram tp = load("twist_22_pos");
  std::vector<Pair> pairs = {
      {"RI+ unknot", load("unknot"), load("unknot_kink_pos")},
      {"RI- unknot", load("unknot"), load("unknot_kink_neg")},
      {"RII unknot", load("unknot"), load("unknot_r2")},
      {"RII trefoil", load("trefoil_pos"), load("trefoil_pos_r2")},
      {"RIII braid", load("braid_r3_a"), load("braid_r3_b")},
      {"reorder trefoil", load("trefoil_pos"), load("trefoil_pos_reordered")},
      {"reorder hopf", load("hopf"), load("hopf_reordered")},
      {"RII (2,2)-tangle", TangleDiagram::identity(1), compose_tangles(tp, orient_to_match(tp, load("twist_22_neg")))},
  };
  for (const auto& p : pairs) {
    const KhComplex A(p.x, jobs()), B(p.y, jobs());
    for (int a = 0; a < static_cast<int>(A.left_matchings().size()); ++a)
      for (int b = 0; b < static_cast<int>(A.right_matchings().size()); ++b)
        if (auto d = compare_homology(block_homology(A, a, b, jobs()), block_homology(B, a, b, jobs())))
          r.fail(p.label + ": " + *d);
  }
  if (r.ok) r.note = std::to_string(pairs.size()) + " pairs equal blockwise";
  return r;
}

// --- 7
Outcome gluing() {
  Outcome r;
  const std::pair<std::string, std::string> pairs[] = {
      {"twist_22_pos", "twist_22_pos"}, {"twist_22_pos", "twist_22_neg"}, {"tangle_22_a", "random_22_2"},
      {"one_crossing_04", "cap_crossing_40"}, {"cups2", "tangle_44_a"}, {"tangle_24_c", "tangle_42_b"},
      {"tangle_44_a", "tangle_44_b"}, {"cup", "cap"}};
  std::size_t gens = 0;
  for (const auto& [f, s] : pairs) {
    const TangleDiagram t1 = load(f);
    const TangleDiagram t2 = orient_to_match(t1, load(s));
    if (t1.num_crossings() > 4 || t2.num_crossings() > 4) r.fail(f + "/" + s + " too large");
    const GluingResult g = glue(t1, t2, jobs());
    gens += g.report.composite_rank;
    if (!g.report.ok()) r.fail(f + "/" + s + ": " + (g.report.problems.empty() ? "" : g.report.problems.front()));
    if (compare_homology(homology(g.tensor->quotient_complex(), jobs()), complex_homology(*g.composite, jobs())))
      r.fail(f + "/" + s + ": tensor homology differs");
    if (f == "cup" && format_homology(complex_homology(*g.composite)) != "0 -1 Z\n0 1 Z\n")
      r.fail("cup then cap is not the unknot");
  }
  if (r.ok) r.note = std::to_string(std::size(pairs)) + " pairs, " + std::to_string(gens) + " composite generators";
  return r;
}

// --- 8
Outcome hochschild() {
  Outcome r;
  {
    const KhComplex id(TangleDiagram::identity(1));
    const auto H = hochschild_homology(id, 0);
    std::size_t rank = 0;
    bool torsion = false;
    for (const auto& [q, g] : H.groups.at(0)) {
      rank += g.free_rank;
      torsion = torsion || !g.torsion.empty();
    }
    if (rank != 2 || torsion) r.fail("HH_0 of the identity is not Z^2");
  }
  const std::pair<std::string, std::string> pairs[] = {
      {"twist_22_pos", "twist_22_pos"}, {"twist_22_pos", "twist_22_neg"}, {"tangle_24_c", "tangle_42_b"},
      {"tangle_22_a", "twist_22_neg"}};
  for (const auto& [f, s] : pairs) {
    const TangleDiagram t1 = load(f);
    const TangleDiagram t2 = orient_to_match(t1, load(s));
    const KhComplex K12(compose_tangles(t1, t2), jobs());
    const KhComplex K21(compose_tangles(t2, t1), jobs());
    const auto H12 = hochschild_homology(K12, 2, jobs());
    const auto H21 = hochschild_homology(K21, 2, jobs());
    if (!(H12 == H21)) r.fail(f + "/" + s + ": rotation changes HH");
    if (!(hochschild_homology(K12, 2, 1, jobs()) == H12)) r.fail(f + "/" + s + ": truncation not stable");
  }
  if (r.ok) r.note = "HH_0(id) = Z^2; " + std::to_string(std::size(pairs)) + " rotations agree for i <= 2";
  return r;
}

// --- 9
Outcome one_crossing_example() {
  Outcome r;
  const KhComplex K(load("one_crossing_04"));
  const auto& R = K.right_matchings();
  const CrossinglessMatching ma(2, {{1, 4}, {2, 3}}), mb(2, {{1, 2}, {3, 4}});
  const int a = static_cast<int>(matching_index(R, ma)), b = static_cast<int>(matching_index(R, mb));
  // frozen from the oracle
  const std::string want_a = "0 1 Z\n0 3 Z\n", want_b = "-1 -2 Z\n-1 0 Z\n";
  if (format_homology(block_homology(K, 0, a)) != want_a) r.fail("block a");
  if (format_homology(block_homology(K, 0, b)) != want_b) r.fail("block b");
  const DiagramSpec s = load_spec("one_crossing_04");
  if (oracle::format(oracle::block_homology(s, {}, ma.pairs())) != want_a) r.fail("oracle block a moved");
  if (oracle::format(oracle::block_homology(s, {}, mb.pairs())) != want_b) r.fail("oracle block b moved");
  if (r.ok) r.note = "a: Z(0,1)+Z(0,3); b: Z(-1,-2)+Z(-1,0)";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {"Catalan counts", 1, catalan_counts},
      {"arc algebras n <= 3", 60, arc_algebras},
      {"corpus complexes", 300, complexes},
      {"Burnside coherence", 300, coherence},
      {"homology sanity", 600, homology_sanity},
      {"Reidemeister invariance", 600, reidemeister},
      {"gluing isomorphism", 600, gluing},
      {"Hochschild homology", 600, hochschild},
      {"one-crossing (0,4)-tangle", 60, one_crossing_example},
  };
  int failed = 0, k = 0;
  for (const auto& c : all) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) o.fail("over time");
    failed += !o.ok;
    std::printf("[%d] %s  %-26s %8.2fs / %gs  %s\n", k, o.ok ? "PASS" : "FAIL", c.name, secs, c.limit,
                o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", k - failed, k);
  return failed ? 1 : 0;
}
