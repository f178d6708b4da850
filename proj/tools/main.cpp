// Command-line front end. Reports are built as ordered JSON and printed
// either as JSON or as indented "key: value" text.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "khtangle/arc_algebra.hpp"
#include "khtangle/burnside.hpp"
#include "khtangle/gluing.hpp"
#include "khtangle/hochschild.hpp"
#include "khtangle/tangle_complex.hpp"
#include "khtangle/tgl.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace khtangle;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VerifyLevel { None, Basic, Full };

struct Common {
  int jobs = 1;
  std::string fixtures;
  std::string output;
  std::string verify = "basic";
  bool json_out = false;
  VerifyLevel level() const {
    return verify == "none" ? VerifyLevel::None : verify == "full" ? VerifyLevel::Full : VerifyLevel::Basic;
  }
};

std::string resolve_path(const Common& c, const std::string& p) {
  if (fs::exists(p)) return p;
  std::vector<std::string> dirs;
  if (!c.fixtures.empty()) dirs.push_back(c.fixtures);
  if (const char* env = std::getenv("KHTANGLE_FIXTURES")) dirs.emplace_back(env);
  for (const auto& d : dirs) {
    for (const auto& cand : {fs::path(d) / p, fs::path(d) / (p + ".tgl")})
      if (fs::exists(cand)) return cand.string();
  }
  throw InputError("cannot open diagram file '" + p + "'");
}

TangleDiagram load(const Common& c, const std::string& p) { return read_tangle_file(resolve_path(c, p)); }

void render_text(const json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : j.items()) {
    if (val.is_object()) {
      os << pad << key << ":\n";
      render_text(val, os, indent + 2);
    } else if (val.is_array()) {
      os << pad << key << ": " << val.size() << '\n';
      for (const auto& item : val) {
        if (item.is_object()) {
          os << pad << "  -\n";
          render_text(item, os, indent + 4);
        } else {
          os << pad << "  " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
        }
      }
    } else {
      os << pad << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
    }
  }
}

void emit(const Common& c, const json& report) {
  std::ostringstream os;
  if (c.json_out)
    os << report.dump(2) << '\n';
  else
    render_text(report, os, 0);
  if (c.output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.output);
    if (!f) throw InputError("cannot write '" + c.output + "'");
    f << os.str();
  }
}

std::string bits(std::uint32_t v, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (v >> i & 1) ? '1' : '0';
  return s.empty() ? "-" : s;
}

json homology_lines(const BigradedHomology& H) {
  json a = json::array();
  for (const auto& [hq, g] : H) a.push_back(std::to_string(hq.first) + " " + std::to_string(hq.second) + " " + format_group(g));
  return a;
}

json euler_lines(const std::map<int, long>& chi) {
  json a = json::array();
  for (const auto& [q, v] : chi)
    if (v != 0) a.push_back(std::to_string(q) + " " + std::to_string(v));
  return a;
}

std::string block_name(const KhComplex& K, int a, int b) {
  return K.left_matchings()[static_cast<std::size_t>(a)].to_string() + " " +
         K.right_matchings()[static_cast<std::size_t>(b)].to_string();
}

json complex_report(const ComplexReport& r) {
  json j;
  j["d_squared_zero"] = r.d_squared_zero;
  j["gradings"] = r.gradings;
  j["actions_chain_maps"] = r.actions_chain_maps;
  j["unital"] = r.unital;
  j["associative"] = r.associative;
  j["actions_commute"] = r.actions_commute;
  j["action_gradings"] = r.action_gradings;
  j["problems"] = r.problems;
  return j;
}

// Returns true if the complex passed the requested level of checks.
bool verify_into(const Common& c, const KhComplex& K, json& out) {
  if (c.level() == VerifyLevel::None) return true;
  if (c.level() == VerifyLevel::Basic) {
    const auto problem = check_graded_complex(K.graded());
    out["verification"] = {{"level", "basic"}, {"ok", !problem}, {"problem", problem ? *problem : ""}};
    return !problem;
  }
  const ComplexReport r = verify_complex(K, c.jobs);
  json j = complex_report(r);
  j["level"] = "full";
  j["ok"] = r.ok();
  out["verification"] = j;
  return r.ok();
}

int cmd_matchings(const Common& c, int n) {
  if (n < 0 || n > 8) throw InputError("matchings: n must be in 0..8");
  json j;
  const auto list = enumerate_matchings(n);
  j["n"] = n;
  j["count"] = list.size();
  json m = json::array();
  for (const auto& x : list) m.push_back(x.to_string());
  j["matchings"] = m;
  emit(c, j);
  return 0;
}

int cmd_arc_algebra(const Common& c, int n, bool basis) {
  if (n < 0 || n > 4) throw InputError("arc-algebra: n must be in 0..4");
  const ArcAlgebra A(n);
  json j;
  j["n"] = n;
  j["matchings"] = A.num_matchings();
  j["rank"] = A.rank();
  json blocks = json::array();
  for (int a = 0; a < A.num_matchings(); ++a)
    for (int b = 0; b < A.num_matchings(); ++b)
      blocks.push_back(A.matchings()[static_cast<std::size_t>(a)].to_string() + " " +
                       A.matchings()[static_cast<std::size_t>(b)].to_string() + " " + std::to_string(A.block_size(a, b)));
  j["blocks"] = blocks;
  if (basis) {
    json lines = json::array();
    for (std::size_t i = 0; i < A.rank(); ++i) {
      const auto& e = A.basis()[i];
      lines.push_back(std::to_string(i) + " " + std::to_string(e.a) + " " + std::to_string(e.b) + " " +
                      bits(static_cast<std::uint32_t>(e.x), e.circles) + " " + std::to_string(e.q));
    }
    j["basis"] = lines;
  }
  bool ok = true;
  if (c.level() != VerifyLevel::None) {
    const AlgebraReport r = verify_algebra(A, c.jobs);
    ok = r.ok();
    j["verification"] = {{"expected_rank", r.expected_rank},
                         {"associative", r.associative},
                         {"unital", r.unital},
                         {"idempotents", r.idempotents},
                         {"orthogonal_blocks", r.orthogonal_blocks},
                         {"grading", r.grading},
                         {"minimal_grading", r.minimal_grading},
                         {"order_independent", r.order_independent},
                         {"burnside_lift", r.burnside_lift},
                         {"problems", r.problems}};
  }
  j["result"] = ok ? "verified" : "verification failed";
  emit(c, j);
  return ok ? 0 : 1;
}

int cmd_complex(const Common& c, const std::string& path, bool actions) {
  const TangleDiagram t = load(c, path);
  const KhComplex K(t, c.jobs);
  json j;
  j["diagram"] = path;
  j["boundary"] = "(" + std::to_string(2 * K.m()) + "," + std::to_string(2 * K.n()) + ")";
  j["crossings"] = K.num_crossings();
  j["n_plus"] = K.n_plus();
  j["n_minus"] = K.n_minus();
  j["generators"] = K.size();
  json gens = json::array();
  for (std::size_t i = 0; i < K.size(); ++i) {
    const auto& g = K.generator(i);
    const int circles = K.config(g.a, g.b, g.v).num_circles();
    gens.push_back(std::to_string(i) + " " + std::to_string(g.a) + " " + std::to_string(g.b) + " " +
                   bits(g.v, K.num_crossings()) + " " + bits(static_cast<std::uint32_t>(g.x), circles) + " " +
                   std::to_string(g.h) + " " + std::to_string(g.q));
  }
  j["generator_columns"] = "index a b v x h q";
  j["generator_table"] = gens;
  json d = json::array();
  for (const auto& [tgt, src, val] : K.differential())
    d.push_back(std::to_string(tgt) + " " + std::to_string(src) + " " + std::to_string(val));
  j["differential_columns"] = "target source value";
  j["differential"] = d;
  if (actions) {
    json la = json::array(), ra = json::array();
    for (std::size_t g = 0; g < K.size(); ++g) {
      for (std::size_t al = 0; al < K.left_algebra().rank(); ++al)
        for (const auto& [tg, cf] : K.left_act(al, g))
          la.push_back(std::to_string(al) + " " + std::to_string(g) + " " + std::to_string(tg) + " " + std::to_string(cf));
      for (std::size_t be = 0; be < K.right_algebra().rank(); ++be)
        for (const auto& [tg, cf] : K.right_act(g, be))
          ra.push_back(std::to_string(be) + " " + std::to_string(g) + " " + std::to_string(tg) + " " + std::to_string(cf));
    }
    j["action_columns"] = "algebra_element generator target value";
    j["left_action"] = la;
    j["right_action"] = ra;
  }
  const bool ok = verify_into(c, K, j);
  j["result"] = ok ? "verified" : "verification failed";
  emit(c, j);
  return ok ? 0 : 1;
}

int cmd_homology(const Common& c, const std::string& path, bool blocks) {
  const TangleDiagram t = load(c, path);
  const KhComplex K(t, c.jobs);
  json j;
  j["diagram"] = path;
  j["boundary"] = "(" + std::to_string(2 * K.m()) + "," + std::to_string(2 * K.n()) + ")";
  j["crossings"] = K.num_crossings();
  j["generators"] = K.size();
  const bool ok = verify_into(c, K, j);
  const BigradedHomology H = complex_homology(K, c.jobs);
  j["homology_columns"] = "h q group";
  j["homology"] = homology_lines(H);
  j["euler_characteristic"] = euler_lines(euler_characteristic(H));
  if (blocks) {
    json b = json::object();
    for (int a = 0; a < static_cast<int>(K.left_matchings().size()); ++a)
      for (int bb = 0; bb < static_cast<int>(K.right_matchings().size()); ++bb)
        b[block_name(K, a, bb)] = homology_lines(block_homology(K, a, bb, c.jobs));
    j["blocks"] = b;
  }
  j["result"] = ok ? "verified" : "verification failed";
  emit(c, j);
  return ok ? 0 : 1;
}

int cmd_glue(const Common& c, const std::string& p1, const std::string& p2, bool orient) {
  const TangleDiagram t1 = load(c, p1);
  TangleDiagram t2 = load(c, p2);
  if (t1.n() != t2.m())
    throw InputError("glue: right boundary of the first diagram (" + std::to_string(2 * t1.n()) +
                     ") differs from left boundary of the second (" + std::to_string(2 * t2.m()) + ")");
  if (orient) t2 = orient_to_match(t1, t2);
  const GluingResult g = glue(t1, t2, c.jobs);
  const auto& r = g.report;
  json j;
  j["first"] = p1;
  j["second"] = p2;
  j["composite_generators"] = r.composite_rank;
  j["tensor_generators"] = r.tensor_rank;
  j["quotient_free"] = r.quotient_free;
  j["descends"] = r.descends;
  j["chain_map"] = r.chain_map;
  j["homogeneous"] = r.homogeneous;
  j["bimodule_linear"] = r.bimodule_linear;
  j["isomorphism"] = r.isomorphism;
  j["order_independent"] = r.order_independent;
  j["problems"] = r.problems;
  const BigradedHomology Ht = homology(g.tensor->quotient_complex(), c.jobs);
  const BigradedHomology Hc = complex_homology(*g.composite, c.jobs);
  j["tensor_homology"] = homology_lines(Ht);
  j["composite_homology"] = homology_lines(Hc);
  const auto diff = compare_homology(Ht, Hc);
  const bool ok = r.ok() && !diff;
  if (diff) j["homology_difference"] = *diff;
  j["result"] = ok ? "isomorphism verified" : "verification failed";
  emit(c, j);
  return ok ? 0 : 1;
}

int cmd_coherence(const Common& c, const std::string& path, const std::string& rule, bool second_site,
                  const std::vector<std::uint32_t>& swap) {
  const TangleDiagram t = load(c, path);
  LadybugConvention conv;
  if (rule == "left") conv.rule = LadybugRule::Left;
  else if (rule != "right") throw InputError("coherence: --rule must be 'left' or 'right'");
  conv.from_second_site = second_site;
  if (!swap.empty()) {
    if (swap.size() != 3) throw InputError("coherence: --swap-face takes v,i,j");
    conv.swapped_face = std::array<std::uint32_t, 3>{swap[0], swap[1], swap[2]};
  }
  const auto left = enumerate_matchings(t.m());
  const auto right = enumerate_matchings(t.n());
  json j;
  j["diagram"] = path;
  j["crossings"] = t.num_crossings();
  json blocks = json::array();
  bool ok = true;
  std::size_t faces = 0, ladybugs = 0, hexagons = 0;
  for (const auto& a : left)
    for (const auto& b : right) {
      const BurnsideCube B(t, a, b, conv);
      const auto rep = B.check_all(c.jobs);
      ok = ok && rep.ok();
      faces += rep.faces;
      ladybugs += rep.ladybug_faces;
      hexagons += rep.hexagons;
      json e;
      e["block"] = a.to_string() + " " + b.to_string();
      e["faces"] = rep.faces;
      e["ladybug_faces"] = rep.ladybug_faces;
      e["hexagons"] = rep.hexagons;
      e["failures"] = rep.failures;
      blocks.push_back(e);
    }
  j["faces"] = faces;
  j["ladybug_faces"] = ladybugs;
  j["hexagons"] = hexagons;
  j["blocks"] = blocks;
  j["result"] = ok ? "coherent" : "coherence failed";
  emit(c, j);
  return ok ? 0 : 1;
}

json hh_lines(const HochschildHomology& H) {
  json a = json::array();
  std::istringstream is(format_hochschild(H));
  for (std::string line; std::getline(is, line);) a.push_back(line);
  return a;
}

int cmd_hochschild(const Common& c, const std::string& path, int k, const std::string& rotate, bool stability) {
  if (k < 0 || k > 6) throw InputError("hochschild: degree must be in 0..6");
  const TangleDiagram t = load(c, path);
  json j;
  j["diagram"] = path;
  j["degree"] = k;
  bool ok = true;
  if (rotate.empty()) {
    if (t.m() != t.n()) throw InputError("hochschild: the diagram must be a (2n,2n)-tangle");
    const KhComplex K(t, c.jobs);
    const auto H = hochschild_homology(K, k, c.jobs);
    j["h_min"] = H.h_min;
    j["columns"] = "i q group";
    j["HH"] = hh_lines(H);
    if (stability) {
      const bool st = hochschild_homology(K, k, 1, c.jobs) == H;
      j["truncation_stable"] = st;
      ok = st;
    }
  } else {
    TangleDiagram t2 = load(c, rotate);
    if (t.m() != t2.n() || t.n() != t2.m())
      throw InputError("hochschild: --rotate needs a (2n,2m)-tangle for a (2m,2n)-tangle");
    t2 = orient_to_match(t, t2);
    const KhComplex K12(compose_tangles(t, t2), c.jobs);
    const KhComplex K21(compose_tangles(t2, t), c.jobs);
    const auto H12 = hochschild_homology(K12, k, c.jobs);
    const auto H21 = hochschild_homology(K21, k, c.jobs);
    j["second"] = rotate;
    j["HH_first_second"] = hh_lines(H12);
    j["HH_second_first"] = hh_lines(H21);
    ok = H12 == H21;
    j["rotation_invariant"] = ok;
    if (stability) {
      const bool st = hochschild_homology(K12, k, 1, c.jobs) == H12 && hochschild_homology(K21, k, 1, c.jobs) == H21;
      j["truncation_stable"] = st;
      ok = ok && st;
    }
  }
  j["result"] = ok ? "verified" : "verification failed";
  emit(c, j);
  return ok ? 0 : 1;
}

std::vector<int> parse_perm(const std::string& s, int n) {
  std::vector<int> perm;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      perm.push_back(std::stoi(item) - 1);
    } catch (const std::exception&) {
      throw InputError("bad permutation entry '" + item + "'");
    }
  }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation must list all " + std::to_string(n) + " crossings");
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]++) throw InputError("not a permutation of 1.." + std::to_string(n));
  }
  return perm;
}

int cmd_reidemeister(const Common& c, const std::string& p1, const std::string& p2, const std::string& reorder) {
  const TangleDiagram t1 = load(c, p1);
  std::unique_ptr<KhComplex> K1 = std::make_unique<KhComplex>(t1, c.jobs);
  std::unique_ptr<KhComplex> K2;
  json j;
  j["first"] = p1;
  bool ok = true;
  if (!reorder.empty()) {
    if (!p2.empty()) throw InputError("reidemeister: give either a second diagram or --reorder, not both");
    auto R = reorder_crossings(*K1, parse_perm(reorder, t1.num_crossings()), c.jobs);
    j["reorder"] = reorder;
    j["chain_isomorphism"] = R.chain_iso_verified;
    ok = R.chain_iso_verified;
    K2 = std::move(R.complex);
  } else {
    if (p2.empty()) throw InputError("reidemeister: a second diagram or --reorder is required");
    const TangleDiagram t2 = load(c, p2);
    if (t1.m() != t2.m() || t1.n() != t2.n()) throw InputError("reidemeister: diagrams have different boundaries");
    j["second"] = p2;
    K2 = std::make_unique<KhComplex>(t2, c.jobs);
  }
  json blocks = json::array();
  for (int a = 0; a < static_cast<int>(K1->left_matchings().size()); ++a)
    for (int b = 0; b < static_cast<int>(K1->right_matchings().size()); ++b) {
      const auto diff = compare_homology(block_homology(*K1, a, b, c.jobs), block_homology(*K2, a, b, c.jobs));
      blocks.push_back(block_name(*K1, a, b) + " " + (diff ? "differ: " + *diff : "equal"));
      ok = ok && !diff;
    }
  j["blocks"] = blocks;
  j["homology"] = homology_lines(complex_homology(*K1, c.jobs));
  j["result"] = ok ? "homology equal" : "homology differs";
  emit(c, j);
  return ok ? 0 : 1;
}

int cmd_slices(const Common& c, int left, const std::string& word, const std::string& reorder) {
  TangleDiagram t = tangle_from_slices(left, word);
  if (!reorder.empty()) t = t.with_crossing_order(parse_perm(reorder, t.num_crossings()));
  const std::string text = write_tgl(t.spec());
  if (c.output.empty())
    std::cout << text;
  else {
    std::ofstream f(c.output);
    if (!f) throw InputError("cannot write '" + c.output + "'");
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov tangle invariants: arc algebras, bimodule complexes, gluing, Hochschild homology"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-j,--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--fixtures", common.fixtures, "Directory searched for diagram files");
  app.add_option("-o,--output", common.output, "Write the report to this file");
  app.add_option("--verify", common.verify, "Verification level")->check(CLI::IsMember({"none", "basic", "full"}));
  app.add_flag("--json", common.json_out, "JSON report");

  int n = 0;
  auto* m = app.add_subcommand("matchings", "List crossingless matchings of 2n points");
  m->add_option("n", n)->required();

  bool basis = false;
  auto* aa = app.add_subcommand("arc-algebra", "Build and verify the arc algebra H^n");
  aa->add_option("n", n)->required();
  aa->add_flag("--basis", basis, "Print the basis");

  std::string file, file2, rotate, rule = "right", reorder;
  bool flag = false, second_site = false;
  auto* cx = app.add_subcommand("complex", "Print the complex of bimodules of a diagram");
  cx->add_option("diagram", file)->required();
  cx->add_flag("--actions", flag, "Include action matrices");

  auto* ho = app.add_subcommand("homology", "Bigraded integral homology");
  ho->add_option("diagram", file)->required();
  ho->add_flag("--blocks", flag, "Also report each (a,b) block");

  auto* gl = app.add_subcommand("glue", "Verify the gluing isomorphism for two composable diagrams");
  gl->add_option("first", file)->required();
  gl->add_option("second", file2)->required();
  gl->add_flag("--orient", flag, "Reverse components of the second diagram to match the seam");

  std::vector<std::uint32_t> swap;
  auto* co = app.add_subcommand("coherence", "Check Burnside face and hexagon coherence");
  co->add_option("diagram", file)->required();
  co->add_option("--rule", rule, "Ladybug arcs: right or left");
  co->add_flag("--second-site", second_site, "Read the ladybug matching off the second site");
  co->add_option("--swap-face", swap, "Invert the matching on face v,i,j (negative control)")->delimiter(',');

  int degree = 2;
  auto* hh = app.add_subcommand("hochschild", "Hochschild homology of a (2n,2n)-tangle complex");
  hh->add_option("diagram", file)->required();
  hh->add_option("-k,--degree", degree, "Highest degree reported");
  hh->add_option("--rotate", rotate, "Compare HH of first*second with second*first");
  hh->add_flag("--stability", flag, "Recompute with one more bar degree and compare");

  auto* re = app.add_subcommand("reidemeister", "Compare the homology of two diagrams, block by block");
  re->add_option("first", file)->required();
  re->add_option("second", file2);
  re->add_option("--reorder", reorder, "Compare with the crossings reordered (1-based list)");

  int left = 0;
  std::string word;
  auto* sl = app.add_subcommand("slices", "Write a .tgl diagram from a slice word");
  sl->add_option("left", left)->required();
  sl->add_option("word", word)->required();
  sl->add_option("--reorder", reorder, "Renumber crossings (1-based list of old indices)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*m) return cmd_matchings(common, n);
    if (*aa) return cmd_arc_algebra(common, n, basis);
    if (*cx) return cmd_complex(common, file, flag);
    if (*ho) return cmd_homology(common, file, flag);
    if (*gl) return cmd_glue(common, file, file2, flag);
    if (*co) return cmd_coherence(common, file, rule, second_site, swap);
    if (*hh) return cmd_hochschild(common, file, degree, rotate, flag);
    if (*re) return cmd_reidemeister(common, file, file2, reorder);
    if (*sl) return cmd_slices(common, left, word, reorder);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DiagramError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
