#include "khtangle/resolution.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace khtangle {

CircleSystem CircleSystem::trace(std::vector<int> junction) {
  CircleSystem s;
  s.junction = std::move(junction);
  const int N = static_cast<int>(s.junction.size());
  s.circle_of_node.assign(static_cast<std::size_t>(N), -1);
  std::vector<char> seen(static_cast<std::size_t>(N), 0);
  auto J = [&](int k) { return s.junction[static_cast<std::size_t>(k)]; };
  for (int start = 0; start < N; ++start) {
    if (J(start) != -1 || seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> arc;
    int k = start;
    while (true) {
      arc.push_back(k);
      arc.push_back(k ^ 1);
      seen[static_cast<std::size_t>(k)] = seen[static_cast<std::size_t>(k ^ 1)] = 1;
      const int next = J(k ^ 1);
      if (next == -1) break;
      k = next;
    }
    s.arcs.push_back(std::move(arc));
  }
  for (int start = 0; start < N; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    const int id = static_cast<int>(s.circles.size());
    std::vector<int> circle;
    int k = start;
    do {
      if (k < 0) throw std::logic_error("circle tracing hit a free end");
      circle.push_back(k);
      circle.push_back(k ^ 1);
      seen[static_cast<std::size_t>(k)] = seen[static_cast<std::size_t>(k ^ 1)] = 1;
      s.circle_of_node[static_cast<std::size_t>(k)] = s.circle_of_node[static_cast<std::size_t>(k ^ 1)] = id;
      k = J(k ^ 1);
    } while (k != start);
    s.circles.push_back(std::move(circle));
  }
  return s;
}

void smooth_crossing(const TangleDiagram& t, int c, int smoothing, std::vector<int>& junction) {
  const auto& p = t.crossing_nodes(c);
  auto join = [&](int x, int y) {
    junction[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])] = p[static_cast<std::size_t>(y)];
    junction[static_cast<std::size_t>(p[static_cast<std::size_t>(y)])] = p[static_cast<std::size_t>(x)];
  };
  if (smoothing == 0) {
    join(0, 1);
    join(2, 3);
  } else {
    join(1, 2);
    join(3, 0);
  }
}

namespace {

std::vector<int> base_junction(const TangleDiagram& t, const CubeVertex& v) {
  if (static_cast<int>(v.size()) != t.num_crossings())
    throw std::invalid_argument("resolve: vertex has " + std::to_string(v.size()) + " entries, diagram has " +
                                std::to_string(t.num_crossings()) + " crossings");
  std::vector<int> junction(static_cast<std::size_t>(t.num_nodes()), -1);
  for (int c = 0; c < t.num_crossings(); ++c) smooth_crossing(t, c, v[static_cast<std::size_t>(c)] ? 1 : 0, junction);
  for (int e : t.loop_edges()) {
    junction[static_cast<std::size_t>(2 * e)] = 2 * e + 1;
    junction[static_cast<std::size_t>(2 * e + 1)] = 2 * e;
  }
  return junction;
}

std::vector<SurgeryRecord> records(const TangleDiagram& t, const CubeVertex& v, const CircleSystem& s) {
  std::vector<int> arc_of_node(s.junction.size(), -1);
  for (std::size_t a = 0; a < s.arcs.size(); ++a)
    for (int k : s.arcs[a]) arc_of_node[static_cast<std::size_t>(k)] = static_cast<int>(a);
  auto component = [&](int node) {
    const int c = s.circle_of_node[static_cast<std::size_t>(node)];
    return c >= 0 ? c : -1 - arc_of_node[static_cast<std::size_t>(node)];
  };
  std::vector<SurgeryRecord> out;
  for (int c = 0; c < t.num_crossings(); ++c) {
    SurgeryRecord r;
    r.crossing = c;
    r.smoothing = v[static_cast<std::size_t>(c)] ? 1 : 0;
    r.ports = t.crossing_nodes(c);
    r.strands = {component(r.ports[0]), component(r.ports[2])};
    out.push_back(r);
  }
  return out;
}

}  // namespace

ResolutionConfig resolve(const TangleDiagram& t, const CubeVertex& v) {
  ResolutionConfig r;
  r.v = v;
  r.system = CircleSystem::trace(base_junction(t, v));
  r.surgery_records = records(t, v, r.system);
  return r;
}

ClosedConfig close_resolution(const TangleDiagram& t, const CrossinglessMatching& a, const ResolutionConfig& r,
                              const CrossinglessMatching& b) {
  if (a.n() != t.m() || b.n() != t.n())
    throw std::invalid_argument("close_resolution: matchings do not fit the tangle boundary");
  std::vector<int> junction = r.system.junction;
  for (auto [i, j] : a.pairs()) {
    const int x = t.left_node(i - 1), y = t.left_node(j - 1);
    junction[static_cast<std::size_t>(x)] = y;
    junction[static_cast<std::size_t>(y)] = x;
  }
  for (auto [i, j] : b.pairs()) {
    const int x = t.right_node(i - 1), y = t.right_node(j - 1);
    junction[static_cast<std::size_t>(x)] = y;
    junction[static_cast<std::size_t>(y)] = x;
  }
  ClosedConfig c;
  c.v = r.v;
  c.system = CircleSystem::trace(std::move(junction));
  c.surgery_records = records(t, r.v, c.system);
  return c;
}

ClosedConfig closed_config(const TangleDiagram& t, const CrossinglessMatching& a, const CubeVertex& v,
                           const CrossinglessMatching& b) {
  return close_resolution(t, a, resolve(t, v), b);
}

MatchingClosure close_matchings(const CrossinglessMatching& a, const CrossinglessMatching& b) {
  if (a.n() != b.n()) throw std::invalid_argument("close_matchings: matchings have different sizes");
  const auto id = TangleDiagram::identity(a.n());
  const auto c = closed_config(id, a, {}, b);
  MatchingClosure out;
  out.num_circles = c.num_circles();
  for (const auto& circle : c.system.circles) {
    std::set<int> pts;
    // identity edge k runs from left point k to right point k
    for (int node : circle) pts.insert((node >> 1) + 1);
    out.points.emplace_back(pts.begin(), pts.end());
  }
  return out;
}

Saddle Saddle::between(const CircleSystem& from, const CircleSystem& to) {
  if (from.junction.size() != to.junction.size()) throw std::logic_error("saddle: node sets differ");
  std::set<int> src, dst;
  for (std::size_t k = 0; k < from.junction.size(); ++k) {
    if (from.junction[k] == to.junction[k]) continue;
    src.insert(from.circle_of_node[k]);
    dst.insert(to.circle_of_node[k]);
  }
  if (src.count(-1) || dst.count(-1)) throw std::logic_error("saddle: surgery touches an open arc");
  Saddle s;
  s.source_circles = from.num_circles();
  s.target_circles = to.num_circles();
  if (src.size() == 2 && dst.size() == 1) {
    s.kind = Kind::Merge;
    s.in = {*src.begin(), *src.rbegin()};
    s.out = {*dst.begin(), -1};
  } else if (src.size() == 1 && dst.size() == 2) {
    s.kind = Kind::Split;
    s.in = {*src.begin(), -1};
    s.out = {*dst.begin(), *dst.rbegin()};
  } else {
    throw std::logic_error("saddle: not an elementary merge or split");
  }
  s.carry.assign(static_cast<std::size_t>(s.source_circles), -1);
  for (int c = 0; c < s.source_circles; ++c) {
    if (src.count(c)) continue;
    s.carry[static_cast<std::size_t>(c)] =
        to.circle_of_node[static_cast<std::size_t>(from.circles[static_cast<std::size_t>(c)].front())];
  }
  return s;
}

SaddleChain build_saddle_chain(std::vector<int> junction, const std::vector<std::array<int, 4>>& surgeries,
                               const std::vector<int>& target_circle_of_node, int target_circles) {
  SaddleChain chain;
  CircleSystem cur = CircleSystem::trace(junction);
  chain.source_circles = cur.num_circles();
  for (const auto& [ri, rj, li, lj] : surgeries) {
    auto J = [&](int k) -> int& { return junction[static_cast<std::size_t>(k)]; };
    if (J(ri) != rj || J(li) != lj) throw std::logic_error("saddle chain: surgery arc endpoints are not paired");
    J(ri) = li;
    J(li) = ri;
    J(rj) = lj;
    J(lj) = rj;
    CircleSystem next = CircleSystem::trace(junction);
    chain.steps.push_back(Saddle::between(cur, next));
    cur = std::move(next);
  }
  chain.target_circles = target_circles;
  chain.final_map.assign(static_cast<std::size_t>(cur.num_circles()), -1);
  for (int c = 0; c < cur.num_circles(); ++c)
    chain.final_map[static_cast<std::size_t>(c)] =
        target_circle_of_node[static_cast<std::size_t>(cur.circles[static_cast<std::size_t>(c)].front())];
  if (cur.num_circles() != target_circles) throw std::logic_error("saddle chain: circle count mismatch with target");
  return chain;
}

}  // namespace khtangle
