#include "khtangle/tangle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace khtangle {

namespace {

using Attachment = TangleDiagram::Attachment;
using AttachKind = TangleDiagram::AttachKind;

std::string describe(const Attachment& a) {
  switch (a.kind) {
    case AttachKind::Port:
      return "x" + std::to_string(a.index + 1) + ".p" + std::to_string(a.port);
    case AttachKind::Left:
      return "L" + std::to_string(a.index + 1);
    case AttachKind::Right:
      return "R" + std::to_string(a.index + 1);
    case AttachKind::Loop:
      return "loop";
  }
  return "?";
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Orients the whole component containing `edge` so that end `tail_end` of
// `edge` is its tail, propagating straight through crossings.
void orient_component(TangleDiagram::Parts& parts, int edge, int tail_end) {
  std::map<std::pair<int, int>, std::pair<int, int>> at_port;  // (crossing, port) -> (edge, end)
  for (std::size_t e = 0; e < parts.ends.size(); ++e)
    for (int s = 0; s < 2; ++s) {
      const auto& a = parts.ends[e][static_cast<std::size_t>(s)];
      if (a.kind == AttachKind::Port) at_port[{a.index, a.port}] = {static_cast<int>(e), s};
    }
  std::map<int, int> tail_of;
  tail_of[edge] = tail_end;
  // forward
  for (int e = edge, s = tail_end;;) {
    const auto& head = parts.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(1 - s)];
    if (head.kind != AttachKind::Port) break;
    auto [ne, ns] = at_port.at({head.index, (head.port + 2) % 4});
    if (tail_of.count(ne)) break;
    tail_of[ne] = ns;
    e = ne;
    s = ns;
  }
  // backward
  for (int e = edge, s = tail_end;;) {
    const auto& tail = parts.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(s)];
    if (tail.kind != AttachKind::Port) break;
    auto [pe, pend] = at_port.at({tail.index, (tail.port + 2) % 4});
    if (tail_of.count(pe)) break;
    tail_of[pe] = 1 - pend;
    e = pe;
    s = 1 - pend;
  }
  for (auto [e, s] : tail_of) {
    auto& ends = parts.ends[static_cast<std::size_t>(e)];
    if (s == 1) std::swap(ends[0], ends[1]);
    parts.oriented[static_cast<std::size_t>(e)] = 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TangleDiagram::TangleDiagram(Parts parts) : parts_(std::move(parts)) {
  auto& p = parts_;
  if (p.m < 0 || p.n < 0 || p.num_crossings < 0) throw DiagramError("negative size");
  if (p.labels.size() != p.ends.size() || p.oriented.size() != p.ends.size())
    throw DiagramError("inconsistent edge tables");

  std::vector<std::array<int, 4>> ports(static_cast<std::size_t>(p.num_crossings), {-1, -1, -1, -1});
  std::vector<int> left(static_cast<std::size_t>(2 * p.m), -1), right(static_cast<std::size_t>(2 * p.n), -1);
  for (std::size_t e = 0; e < p.ends.size(); ++e) {
    const bool loop0 = p.ends[e][0].kind == AttachKind::Loop;
    const bool loop1 = p.ends[e][1].kind == AttachKind::Loop;
    if (loop0 != loop1)
      throw DiagramError("edge " + std::to_string(p.labels[e]) + " has exactly one free end");
    for (int s = 0; s < 2; ++s) {
      const auto& a = p.ends[e][static_cast<std::size_t>(s)];
      const int node = static_cast<int>(2 * e) + s;
      int* slot = nullptr;
      switch (a.kind) {
        case AttachKind::Port:
          if (a.index < 0 || a.index >= p.num_crossings || a.port < 0 || a.port > 3)
            throw DiagramError("edge " + std::to_string(p.labels[e]) + " attached to a missing crossing");
          slot = &ports[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(a.port)];
          break;
        case AttachKind::Left:
          if (a.index < 0 || a.index >= 2 * p.m) throw DiagramError("left boundary index out of range");
          slot = &left[static_cast<std::size_t>(a.index)];
          break;
        case AttachKind::Right:
          if (a.index < 0 || a.index >= 2 * p.n) throw DiagramError("right boundary index out of range");
          slot = &right[static_cast<std::size_t>(a.index)];
          break;
        case AttachKind::Loop:
          break;
      }
      if (slot) {
        if (*slot != -1) throw DiagramError(describe(a) + " is used by two edge ends");
        *slot = node;
      }
    }
  }
  for (int c = 0; c < p.num_crossings; ++c)
    for (int q = 0; q < 4; ++q)
      if (ports[static_cast<std::size_t>(c)][static_cast<std::size_t>(q)] < 0)
        throw DiagramError("crossing " + std::to_string(c + 1) + " port " + std::to_string(q) +
                           " has no edge (crossings must be 4-valent)");
  for (std::size_t k = 0; k < left.size(); ++k)
    if (left[k] < 0) throw DiagramError("left boundary point " + std::to_string(k + 1) + " has no edge");
  for (std::size_t k = 0; k < right.size(); ++k)
    if (right[k] < 0) throw DiagramError("right boundary point " + std::to_string(k + 1) + " has no edge");

  // Normalize each crossing so that port 0 is the incoming under-strand.
  for (int c = 0; c < p.num_crossings; ++c) {
    auto& q = ports[static_cast<std::size_t>(c)];
    const int u0 = q[0], u2 = q[2];
    const bool oriented = p.oriented[static_cast<std::size_t>(u0 >> 1)] && p.oriented[static_cast<std::size_t>(u2 >> 1)];
    if (!oriented) continue;
    const bool u0_head = (u0 & 1) == 1, u2_head = (u2 & 1) == 1;
    if (u0_head == u2_head)
      throw DiagramError("crossing " + std::to_string(c + 1) + ": under-strand orientation is inconsistent");
    if (!u0_head) {
      std::rotate(q.begin(), q.begin() + 2, q.end());
      for (int r = 0; r < 4; ++r) {
        const int node = q[static_cast<std::size_t>(r)];
        p.ends[static_cast<std::size_t>(node >> 1)][static_cast<std::size_t>(node & 1)].port = r;
      }
    }
  }

  m_ = p.m;
  n_ = p.n;
  ends_ = p.ends;
  labels_ = p.labels;
  oriented_ = p.oriented;
  ports_ = std::move(ports);
  left_ = std::move(left);
  right_ = std::move(right);
  build_indices();
  check_orientation_consistency();
  check_planarity();
}

void TangleDiagram::build_indices() {
  loops_.clear();
  components_.clear();
  const int E = num_edges();
  for (int e = 0; e < E; ++e)
    if (ends_[static_cast<std::size_t>(e)][0].kind == AttachKind::Loop) loops_.push_back(e);

  std::vector<char> seen(static_cast<std::size_t>(E), 0);
  // Follows a strand from `node` (entering the edge of `node` at that end).
  auto trace = [&](int node, std::vector<int>& out) {
    const int first_edge = node >> 1;
    while (true) {
      const int e = node >> 1;
      if (seen[static_cast<std::size_t>(e)]) break;
      seen[static_cast<std::size_t>(e)] = 1;
      out.push_back(e);
      const int other = node ^ 1;
      const auto& a = attachment(other);
      if (a.kind != AttachKind::Port) break;
      node = ports_[static_cast<std::size_t>(a.index)][static_cast<std::size_t>((a.port + 2) % 4)];
      if ((node >> 1) == first_edge) break;
    }
  };
  std::vector<int> boundary;
  for (int k = 0; k < 2 * m_; ++k) boundary.push_back(left_[static_cast<std::size_t>(k)]);
  for (int k = 0; k < 2 * n_; ++k) boundary.push_back(right_[static_cast<std::size_t>(k)]);
  for (int node : boundary) {
    if (seen[static_cast<std::size_t>(node >> 1)]) continue;
    // Find the other end of this arc to decide the traversal direction.
    int start = node;
    if (edge_oriented(node >> 1) && (node & 1) == 1) {
      // The arc ends here; walk backwards to find its tail boundary node.
      int cur = node;
      while (true) {
        const int other = cur ^ 1;
        const auto& a = attachment(other);
        if (a.kind != AttachKind::Port) {
          start = other;
          break;
        }
        cur = ports_[static_cast<std::size_t>(a.index)][static_cast<std::size_t>((a.port + 2) % 4)];
      }
    }
    std::vector<int> comp;
    trace(start, comp);
    components_.push_back(std::move(comp));
  }
  for (int e = 0; e < E; ++e) {
    if (seen[static_cast<std::size_t>(e)]) continue;
    std::vector<int> comp;
    trace(2 * e, comp);
    components_.push_back(std::move(comp));
  }
}

void TangleDiagram::check_orientation_consistency() const {
  for (const auto& comp : components_) {
    const bool first = edge_oriented(comp.front());
    for (int e : comp)
      if (edge_oriented(e) != first)
        throw DiagramError("component through edge " + std::to_string(label(comp.front())) +
                           " is only partially oriented");
    if (!first) continue;
    for (int e : comp) {
      const auto& head = ends_[static_cast<std::size_t>(e)][1];
      if (head.kind != AttachKind::Port) continue;
      const int next = ports_[static_cast<std::size_t>(head.index)][static_cast<std::size_t>((head.port + 2) % 4)];
      if ((next & 1) != 0)
        throw DiagramError("orientation flips at crossing " + std::to_string(head.index + 1) + " (edges " +
                           std::to_string(label(e)) + " and " + std::to_string(label(next >> 1)) + ")");
    }
  }
}

void TangleDiagram::check_planarity() const {
  // Vertices: crossings, then boundary points in counterclockwise order
  // around the square: R1..R2n, L2m..L1. Half-edges: edge-end nodes, then two
  // per boundary segment.
  const int E = num_edges();
  const int C = num_crossings();
  std::vector<int> cycle;  // boundary nodes in ccw order
  for (int k = 0; k < 2 * n_; ++k) cycle.push_back(right_[static_cast<std::size_t>(k)]);
  for (int k = 2 * m_ - 1; k >= 0; --k) cycle.push_back(left_[static_cast<std::size_t>(k)]);
  const int B = static_cast<int>(cycle.size());
  const int H = 2 * E + 2 * B;

  std::vector<int> vertex_of(static_cast<std::size_t>(H), -1);
  std::vector<int> next_ccw(static_cast<std::size_t>(H), -1);
  auto twin = [&](int h) { return h ^ 1; };
  auto set_rotation = [&](int vertex, const std::vector<int>& hs) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      vertex_of[static_cast<std::size_t>(hs[i])] = vertex;
      next_ccw[static_cast<std::size_t>(hs[i])] = hs[(i + 1) % hs.size()];
    }
  };
  for (int c = 0; c < C; ++c) {
    const auto& q = ports_[static_cast<std::size_t>(c)];
    set_rotation(c, {q[0], q[1], q[2], q[3]});
  }
  for (int k = 0; k < B; ++k) {
    const int out = 2 * E + 2 * k;                      // segment k leaves vertex k
    const int in = 2 * E + 2 * ((k + B - 1) % B) + 1;  // segment k-1 arrives at vertex k
    const int inward = cycle[static_cast<std::size_t>(k)];
    const bool on_right = k < 2 * n_;
    if (on_right)
      set_rotation(C + k, {out, inward, in});
    else
      set_rotation(C + k, {inward, in, out});
  }

  std::vector<char> used(static_cast<std::size_t>(H), 0);
  for (int e : loops_) used[static_cast<std::size_t>(2 * e)] = used[static_cast<std::size_t>(2 * e + 1)] = 1;

  UnionFind uf(static_cast<std::size_t>(C + B));
  for (int h = 0; h < H; h += 2)
    if (!used[static_cast<std::size_t>(h)]) uf.unite(vertex_of[static_cast<std::size_t>(h)], vertex_of[static_cast<std::size_t>(h + 1)]);

  std::map<int, std::array<int, 3>> vef;  // root -> V, E, F
  std::map<int, std::vector<int>> first_face;
  for (int v = 0; v < C + B; ++v) vef[uf.find(v)][0]++;
  for (int h = 0; h < H; h += 2)
    if (!used[static_cast<std::size_t>(h)]) vef[uf.find(vertex_of[static_cast<std::size_t>(h)])][1]++;
  std::vector<char> face_seen = used;
  for (int h = 0; h < H; ++h) {
    if (face_seen[static_cast<std::size_t>(h)]) continue;
    const int root = uf.find(vertex_of[static_cast<std::size_t>(h)]);
    vef[root][2]++;
    std::vector<int> trace;
    int cur = h;
    while (!face_seen[static_cast<std::size_t>(cur)]) {
      face_seen[static_cast<std::size_t>(cur)] = 1;
      trace.push_back(cur);
      cur = next_ccw[static_cast<std::size_t>(twin(cur))];
    }
    first_face.try_emplace(root, std::move(trace));
  }
  for (const auto& [root, c] : vef) {
    const int chi = c[0] - c[1] + c[2];
    if (chi == 2) continue;
    std::ostringstream os;
    os << "rotation system is not planar: component with V=" << c[0] << " E=" << c[1] << " F=" << c[2]
       << " has Euler characteristic " << chi << " (expected 2); failing face trace:";
    for (int h : first_face[root]) {
      if (h < 2 * E)
        os << ' ' << describe(attachment(h)) << "[e" << label(h >> 1) << ']';
      else
        os << " boundary-segment" << ((h - 2 * E) >> 1);
    }
    throw DiagramError(os.str());
  }
}

TangleDiagram::TangleDiagram(const DiagramSpec& spec) {
  if (spec.left < 0 || spec.right < 0 || spec.left % 2 || spec.right % 2)
    throw DiagramError("boundary point counts must be even and nonnegative");
  if (static_cast<int>(spec.left_boundary.size()) != spec.left)
    throw DiagramError("left_boundary lists " + std::to_string(spec.left_boundary.size()) + " edges, expected " +
                       std::to_string(spec.left));
  if (static_cast<int>(spec.right_boundary.size()) != spec.right)
    throw DiagramError("right_boundary lists " + std::to_string(spec.right_boundary.size()) + " edges, expected " +
                       std::to_string(spec.right));

  std::map<int, std::vector<Attachment>> occ;
  for (std::size_t c = 0; c < spec.crossings.size(); ++c)
    for (int q = 0; q < 4; ++q)
      occ[spec.crossings[c][static_cast<std::size_t>(q)]].push_back({AttachKind::Port, static_cast<int>(c), q});
  for (std::size_t k = 0; k < spec.left_boundary.size(); ++k)
    occ[spec.left_boundary[k]].push_back({AttachKind::Left, static_cast<int>(k), -1});
  for (std::size_t k = 0; k < spec.right_boundary.size(); ++k)
    occ[spec.right_boundary[k]].push_back({AttachKind::Right, static_cast<int>(k), -1});
  for (const auto& w : spec.orientations)
    if (w.start_side == 0 && w.edges.size() == 1 && !occ.count(w.edges[0])) occ[w.edges[0]] = {};
  for (const auto& w : spec.orientations)
    for (int e : w.edges)
      if (!occ.count(e)) throw DiagramError("orientation walk uses unknown edge " + std::to_string(e));

  Parts parts;
  parts.m = spec.left / 2;
  parts.n = spec.right / 2;
  parts.num_crossings = static_cast<int>(spec.crossings.size());
  std::map<int, int> index;
  for (const auto& [label, where] : occ) {
    if (label <= 0) throw DiagramError("edge identifiers must be positive");
    if (!where.empty() && where.size() != 2)
      throw DiagramError("edge " + std::to_string(label) + " has " + std::to_string(where.size()) +
                         " ends (expected 2)");
    index[label] = static_cast<int>(parts.ends.size());
    parts.labels.push_back(label);
    parts.oriented.push_back(0);
    if (where.empty())
      parts.ends.push_back({Attachment{}, Attachment{}});
    else
      parts.ends.push_back({where[0], where[1]});
  }

  auto node_at_port = [&](int c, int q) {
    const int e = index.at(spec.crossings[static_cast<std::size_t>(c)][static_cast<std::size_t>(q)]);
    const auto& ends = parts.ends[static_cast<std::size_t>(e)];
    // A kink edge occupies two ports of the same crossing.
    for (int s = 0; s < 2; ++s)
      if (ends[static_cast<std::size_t>(s)] == Attachment{AttachKind::Port, c, q}) return std::make_pair(e, s);
    throw DiagramError("internal: port lookup failed");
  };

  std::vector<char> covered(parts.ends.size(), 0);
  for (std::size_t wi = 0; wi < spec.orientations.size(); ++wi) {
    const auto& w = spec.orientations[wi];
    const std::string where = "orientation walk " + std::to_string(wi + 1);
    if (w.edges.empty()) throw DiagramError(where + " is empty");
    const int e0 = index.at(w.edges[0]);
    std::vector<int> tails;
    const auto& ends0 = parts.ends[static_cast<std::size_t>(e0)];
    if (ends0[0].kind == AttachKind::Loop) {
      if (w.edges.size() != 1 || w.start_side != 0) throw DiagramError(where + ": malformed loop walk");
      covered[static_cast<std::size_t>(e0)] = 1;
      parts.oriented[static_cast<std::size_t>(e0)] = 1;
      continue;
    }
    if (w.start_side == 'L' || w.start_side == 'R') {
      const Attachment want{w.start_side == 'L' ? AttachKind::Left : AttachKind::Right, w.start_point - 1, -1};
      for (int s = 0; s < 2; ++s)
        if (ends0[static_cast<std::size_t>(s)] == want) tails.push_back(s);
      if (tails.empty()) throw DiagramError(where + ": first edge does not touch " + describe(want));
    } else if (w.start_side == 'X') {
      // start_point encodes crossing*4 + port
      const Attachment want{AttachKind::Port, w.start_point / 4, w.start_point % 4};
      for (int s = 0; s < 2; ++s)
        if (ends0[static_cast<std::size_t>(s)] == want) tails.push_back(s);
      if (tails.empty()) throw DiagramError(where + ": first edge does not leave " + describe(want));
    } else {
      tails = {0, 1};
    }
    // Simulate the walk for each candidate tail; keep the consistent ones.
    std::vector<std::vector<std::pair<int, int>>> good;
    for (int t : tails) {
      std::vector<std::pair<int, int>> steps;  // (edge, tail end)
      int e = e0, s = t;
      bool ok = true;
      for (std::size_t k = 0; k < w.edges.size(); ++k) {
        if (index.at(w.edges[k]) != e) {
          ok = false;
          break;
        }
        steps.emplace_back(e, s);
        const auto& head = parts.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(1 - s)];
        if (head.kind != AttachKind::Port) {
          if (k + 1 != w.edges.size()) ok = false;
          if (w.start_side != 'L' && w.start_side != 'R') ok = false;
          break;
        }
        auto [ne, ns] = node_at_port(head.index, (head.port + 2) % 4);
        if (k + 1 == w.edges.size()) {
          if (w.start_side == 'L' || w.start_side == 'R' || ne != e0 || ns != t) ok = false;
          break;
        }
        e = ne;
        s = ns;
      }
      if (ok) good.push_back(std::move(steps));
    }
    if (good.empty()) throw DiagramError(where + " does not follow the diagram");
    if (good.size() > 1) {
      // Disambiguate using the under-strand convention of the crossing records.
      std::vector<std::vector<std::pair<int, int>>> kept;
      for (auto& g : good) {
        bool agrees = true;
        for (auto [e, s] : g) {
          const auto& tail = parts.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(s)];
          const auto& head = parts.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(1 - s)];
          if (tail.kind == AttachKind::Port && tail.port == 0) agrees = false;
          if (head.kind == AttachKind::Port && head.port == 2) agrees = false;
        }
        if (agrees) kept.push_back(std::move(g));
      }
      if (kept.size() != 1)
        throw DiagramError(where + " is ambiguous; start it with an X<crossing>.<port> marker");
      good = std::move(kept);
    }
    for (auto [e, s] : good.front()) {
      if (covered[static_cast<std::size_t>(e)]) throw DiagramError(where + " repeats edge " + std::to_string(parts.labels[static_cast<std::size_t>(e)]));
      covered[static_cast<std::size_t>(e)] = 1;
      auto& ends = parts.ends[static_cast<std::size_t>(e)];
      if (s == 1) std::swap(ends[0], ends[1]);
      parts.oriented[static_cast<std::size_t>(e)] = 1;
    }
  }
  for (std::size_t e = 0; e < parts.ends.size(); ++e)
    if (parts.ends[e][0].kind == AttachKind::Loop && !covered[e])
      throw DiagramError("edge " + std::to_string(parts.labels[e]) + " is dangling");

  // Records must already start at the incoming under-strand.
  for (std::size_t c = 0; c < spec.crossings.size(); ++c) {
    auto [e, s] = node_at_port(static_cast<int>(c), 0);
    if (parts.oriented[static_cast<std::size_t>(e)] && s == 0)
      throw DiagramError("crossing " + std::to_string(c + 1) +
                         " does not start at the incoming under-strand (edge " + std::to_string(spec.crossings[c][0]) +
                         " leaves the crossing)");
  }
  *this = TangleDiagram(std::move(parts));
}

TangleDiagram TangleDiagram::identity(int n) {
  Parts p;
  p.m = p.n = n;
  for (int k = 0; k < 2 * n; ++k) {
    p.ends.push_back({Attachment{AttachKind::Left, k, -1}, Attachment{AttachKind::Right, k, -1}});
    p.labels.push_back(k + 1);
    p.oriented.push_back(1);
  }
  return TangleDiagram(std::move(p));
}

int TangleDiagram::edge_index(int lab) const {
  auto it = std::find(labels_.begin(), labels_.end(), lab);
  if (it == labels_.end()) throw std::out_of_range("no edge labelled " + std::to_string(lab));
  return static_cast<int>(it - labels_.begin());
}

bool TangleDiagram::is_oriented() const {
  return std::all_of(oriented_.begin(), oriented_.end(), [](char c) { return c != 0; });
}

int TangleDiagram::crossing_sign(int c) const {
  const auto& q = ports_.at(static_cast<std::size_t>(c));
  for (int node : q)
    if (!edge_oriented(node >> 1))
      throw DiagramError("crossing " + std::to_string(c + 1) + " lies on an unoriented component");
  // Over-strand entering at port 3 (leaving at port 1) makes a positive crossing.
  return (q[3] & 1) ? +1 : -1;
}

std::pair<int, int> TangleDiagram::writhe_counts() const {
  int pos = 0, neg = 0;
  for (int c = 0; c < num_crossings(); ++c) (crossing_sign(c) > 0 ? pos : neg)++;
  return {pos, neg};
}

std::pair<int, int> writhe_counts(const TangleDiagram& t) { return t.writhe_counts(); }

TangleDiagram TangleDiagram::with_crossing_order(const std::vector<int>& perm) const {
  const int C = num_crossings();
  if (static_cast<int>(perm.size()) != C) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> inverse(static_cast<std::size_t>(C), -1);
  for (int k = 0; k < C; ++k) {
    const int old = perm[static_cast<std::size_t>(k)];
    if (old < 0 || old >= C || inverse[static_cast<std::size_t>(old)] != -1) throw std::invalid_argument("not a permutation");
    inverse[static_cast<std::size_t>(old)] = k;
  }
  Parts p;
  p.m = m_;
  p.n = n_;
  p.num_crossings = C;
  p.ends = ends_;
  p.labels = labels_;
  p.oriented = oriented_;
  for (auto& ends : p.ends)
    for (auto& a : ends)
      if (a.kind == AttachKind::Port) a.index = inverse[static_cast<std::size_t>(a.index)];
  return TangleDiagram(std::move(p));
}

DiagramSpec TangleDiagram::spec() const {
  DiagramSpec s;
  s.left = 2 * m_;
  s.right = 2 * n_;
  for (const auto& q : ports_) {
    std::array<int, 4> row{};
    for (int k = 0; k < 4; ++k) row[static_cast<std::size_t>(k)] = label(q[static_cast<std::size_t>(k)] >> 1);
    s.crossings.push_back(row);
  }
  for (int node : left_) s.left_boundary.push_back(label(node >> 1));
  for (int node : right_) s.right_boundary.push_back(label(node >> 1));
  for (const auto& comp : components_) {
    if (!edge_oriented(comp.front())) continue;
    DiagramSpec::Walk w;
    const auto& tail = ends_[static_cast<std::size_t>(comp.front())][0];
    if (tail.kind == AttachKind::Left || tail.kind == AttachKind::Right) {
      w.start_side = tail.kind == AttachKind::Left ? 'L' : 'R';
      w.start_point = tail.index + 1;
    } else if (tail.kind == AttachKind::Port) {
      w.start_side = 'X';
      w.start_point = tail.index * 4 + tail.port;
    }
    for (int e : comp) w.edges.push_back(label(e));
    s.orientations.push_back(std::move(w));
  }
  return s;
}

// ---------------------------------------------------------------------------

ComposedTangle compose_with_maps(const TangleDiagram& first, const TangleDiagram& second) {
  if (first.n() != second.m())
    throw std::invalid_argument("compose_tangles: right boundary of the first tangle has " +
                                std::to_string(2 * first.n()) + " points, left boundary of the second has " +
                                std::to_string(2 * second.m()));
  const int E1 = first.num_edges(), E2 = second.num_edges();
  const int C1 = first.num_crossings();
  UnionFind uf(static_cast<std::size_t>(E1 + E2));
  for (int k = 0; k < 2 * first.n(); ++k) uf.unite(first.right_node(k) >> 1, E1 + (second.left_node(k) >> 1));

  // member end -> outer attachment in the composite, or seam
  auto outer = [&](int global_node, Attachment& out) {
    const bool in_first = (global_node >> 1) < E1;
    const int local = in_first ? global_node : global_node - 2 * E1;
    const auto& a = in_first ? first.attachment(local) : second.attachment(local);
    out = a;
    if (a.kind == AttachKind::Port && !in_first) out.index += C1;
    if (in_first && a.kind == AttachKind::Right) return false;
    if (!in_first && a.kind == AttachKind::Left) return false;
    return true;
  };
  auto oriented = [&](int e) { return e < E1 ? first.edge_oriented(e) : second.edge_oriented(e - E1); };
  // seam partner of a member node sitting on the seam
  auto across = [&](int global_node) {
    const int e = global_node >> 1;
    if (e < E1) {
      const int k = first.attachment(global_node).index;
      return 2 * E1 + second.left_node(k);
    }
    const int k = second.attachment(global_node - 2 * E1).index;
    return first.right_node(k);
  };

  ComposedTangle out;
  out.first_edge_map.assign(static_cast<std::size_t>(E1), -1);
  out.second_edge_map.assign(static_cast<std::size_t>(E2), -1);
  TangleDiagram::Parts p;
  p.m = first.m();
  p.n = second.n();
  p.num_crossings = C1 + second.num_crossings();
  std::map<int, int> class_index;
  for (int e = 0; e < E1 + E2; ++e) {
    const int root = uf.find(e);
    if (class_index.count(root)) continue;
    const int idx = static_cast<int>(p.ends.size());
    class_index[root] = idx;
    // Walk the chain starting from an outer end if there is one.
    std::vector<int> members;
    for (int f = 0; f < E1 + E2; ++f)
      if (uf.find(f) == root) members.push_back(f);
    int start = -1;
    for (int f : members)
      for (int s = 0; s < 2 && start < 0; ++s) {
        Attachment a;
        if (outer(2 * f + s, a)) start = 2 * f + s;
      }
    const bool all_oriented = std::all_of(members.begin(), members.end(), oriented);
    std::array<Attachment, 2> ends{};
    if (start < 0) {
      // closed loop formed entirely at the seam; check orientation flow
      if (all_oriented) {
        int node = 2 * members.front();
        do {
          const int nxt = across(node ^ 1);
          if ((nxt & 1) == ((node ^ 1) & 1))
            throw std::invalid_argument("compose_tangles: orientations disagree along the seam");
          node = nxt;
        } while ((node >> 1) != members.front());
      }
      ends = {Attachment{}, Attachment{}};
    } else {
      int node = start;
      bool flow_ok = true;
      while (true) {
        Attachment a;
        if (node != start && outer(node, a)) break;
        const int far = node ^ 1;
        if (outer(far, a)) {
          node = far;
          break;
        }
        const int nxt = across(far);
        if ((nxt & 1) == (far & 1)) flow_ok = false;
        node = nxt;
      }
      if (all_oriented && !flow_ok)
        throw std::invalid_argument("compose_tangles: orientations disagree along the seam");
      Attachment a0, a1;
      outer(start, a0);
      outer(node, a1);
      // start is the tail iff it is the tail of its member edge
      if (all_oriented && (start & 1)) std::swap(a0, a1);
      ends = {a0, a1};
    }
    p.ends.push_back(ends);
    p.labels.push_back(idx + 1);
    p.oriented.push_back(all_oriented ? 1 : 0);
    for (int f : members) {
      if (f < E1)
        out.first_edge_map[static_cast<std::size_t>(f)] = idx;
      else
        out.second_edge_map[static_cast<std::size_t>(f - E1)] = idx;
    }
  }
  out.diagram = TangleDiagram(std::move(p));
  return out;
}

TangleDiagram compose_tangles(const TangleDiagram& first, const TangleDiagram& second) {
  return compose_with_maps(first, second).diagram;
}

// ---------------------------------------------------------------------------

TangleDiagram tangle_from_slices(int left_points, const std::string& word) {
  if (left_points < 0 || left_points % 2) throw DiagramError("slices: left point count must be even");
  // Segment ends: 2s and 2s+1 are the two ends of segment s.
  std::vector<Attachment> attach;  // per segment end
  std::vector<int> join;           // cap/cup partner per segment end
  auto new_segment = [&]() {
    const int s = static_cast<int>(attach.size()) / 2;
    attach.resize(attach.size() + 2, Attachment{});
    join.resize(join.size() + 2, -1);
    return s;
  };
  std::vector<char> attached;  // per segment end
  std::vector<int> strands;    // dangling segment end per height
  int crossings = 0;
  std::vector<std::pair<int, int>> opens;  // (segment, order)

  for (int k = 0; k < left_points; ++k) {
    const int s = new_segment();
    attach[static_cast<std::size_t>(2 * s)] = {AttachKind::Left, k, -1};
    strands.push_back(2 * s + 1);
  }
  attached.assign(attach.size(), 0);
  auto mark = [&](int end, Attachment a) {
    if (attached.size() < attach.size()) attached.resize(attach.size(), 0);
    attach[static_cast<std::size_t>(end)] = a;
    attached[static_cast<std::size_t>(end)] = 1;
  };
  for (int k = 0; k < left_points; ++k) attached[static_cast<std::size_t>(2 * k)] = 1;

  std::istringstream in(word);
  std::vector<int> flips;
  std::string op;
  while (in >> op) {
    int i = 0;
    if (!(in >> i)) throw DiagramError("slices: '" + op + "' needs an argument");
    const int h = static_cast<int>(strands.size());
    if (op == "flip") {
      flips.push_back(i);
      continue;
    }
    if (op == "over" || op == "under") {
      if (i < 1 || i + 1 > h) throw DiagramError("slices: crossing at height " + std::to_string(i) + " out of range");
      const int c = crossings++;
      // Corners: SW, SE, NE, NW. Ports 0 and 2 carry the under-strand.
      const int sw = strands[static_cast<std::size_t>(i - 1)], nw = strands[static_cast<std::size_t>(i)];
      const int se_seg = new_segment(), ne_seg = new_segment();
      const int se = 2 * se_seg, ne = 2 * ne_seg;
      std::array<int, 4> ccw = op == "under" ? std::array<int, 4>{sw, se, ne, nw} : std::array<int, 4>{se, ne, nw, sw};
      for (int q = 0; q < 4; ++q) mark(ccw[static_cast<std::size_t>(q)], {AttachKind::Port, c, q});
      strands[static_cast<std::size_t>(i - 1)] = se + 1;
      strands[static_cast<std::size_t>(i)] = ne + 1;
    } else if (op == "open") {
      if (i < 1 || i > h + 1) throw DiagramError("slices: open at height " + std::to_string(i) + " out of range");
      const int s = new_segment();
      opens.emplace_back(s, static_cast<int>(opens.size()));
      strands.insert(strands.begin() + (i - 1), {2 * s, 2 * s + 1});
    } else if (op == "close") {
      if (i < 1 || i + 1 > h) throw DiagramError("slices: close at height " + std::to_string(i) + " out of range");
      const int lo = strands[static_cast<std::size_t>(i - 1)], hi = strands[static_cast<std::size_t>(i)];
      join[static_cast<std::size_t>(lo)] = hi;
      join[static_cast<std::size_t>(hi)] = lo;
      strands.erase(strands.begin() + (i - 1), strands.begin() + (i + 1));
    } else {
      throw DiagramError("slices: unknown operation '" + op + "'");
    }
  }
  if (strands.size() % 2) throw DiagramError("slices: odd number of right boundary points");
  for (std::size_t k = 0; k < strands.size(); ++k) mark(strands[k], {AttachKind::Right, static_cast<int>(k), -1});
  attached.resize(attach.size(), 0);

  // Trace edges: attachment -> segment -> join -> segment ... -> attachment.
  TangleDiagram::Parts p;
  p.m = left_points / 2;
  p.n = static_cast<int>(strands.size()) / 2;
  p.num_crossings = crossings;
  std::vector<int> edge_of_segment(attach.size() / 2, -1);
  std::vector<int> seg_dir(attach.size() / 2, 0);  // 0: traversed 2s -> 2s+1 from the edge's first end
  std::vector<char> end_seen(attach.size(), 0);
  auto trace_from = [&](int end) {
    const int e = static_cast<int>(p.ends.size());
    int cur = end;
    Attachment first = attach[static_cast<std::size_t>(end)];
    Attachment last{};
    while (true) {
      end_seen[static_cast<std::size_t>(cur)] = 1;
      edge_of_segment[static_cast<std::size_t>(cur / 2)] = e;
      seg_dir[static_cast<std::size_t>(cur / 2)] = cur & 1;
      const int other = cur ^ 1;
      end_seen[static_cast<std::size_t>(other)] = 1;
      if (attached[static_cast<std::size_t>(other)]) {
        last = attach[static_cast<std::size_t>(other)];
        break;
      }
      cur = join[static_cast<std::size_t>(other)];
      if (cur < 0) throw DiagramError("slices: internal tracing error");
      if (end_seen[static_cast<std::size_t>(cur)]) {  // closed loop
        first = last = Attachment{};
        break;
      }
    }
    p.ends.push_back({first, last});
    p.labels.push_back(e + 1);
    p.oriented.push_back(0);
  };
  for (std::size_t end = 0; end < attach.size(); ++end)
    if (attached[end] && !end_seen[end]) trace_from(static_cast<int>(end));
  for (std::size_t end = 0; end < attach.size(); ++end)
    if (!end_seen[end]) trace_from(static_cast<int>(end));

  // Default orientation: build unoriented, then orient each component.
  TangleDiagram raw(p);
  for (const auto& comp : raw.components()) {
    const int e0 = comp.front();
    const auto& a = p.ends[static_cast<std::size_t>(e0)];
    if (a[0].kind == AttachKind::Loop) {
      p.oriented[static_cast<std::size_t>(e0)] = 1;
      continue;
    }
    const bool is_arc = std::any_of(comp.begin(), comp.end(), [&](int e) {
      const auto& ee = p.ends[static_cast<std::size_t>(e)];
      return ee[0].kind == AttachKind::Left || ee[0].kind == AttachKind::Right || ee[1].kind == AttachKind::Left ||
             ee[1].kind == AttachKind::Right;
    });
    if (is_arc) {
      // tail = first endpoint in the order L1..L2m, R1..R2n
      int best_edge = -1, best_end = -1, best_rank = 1 << 30;
      for (int e : comp)
        for (int s = 0; s < 2; ++s) {
          const auto& at = p.ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(s)];
          int rank = 1 << 30;
          if (at.kind == AttachKind::Left) rank = at.index;
          if (at.kind == AttachKind::Right) rank = 1000000 + at.index;
          if (rank < best_rank) best_rank = rank, best_edge = e, best_end = s;
        }
      orient_component(p, best_edge, best_end);
    } else {
      // earliest open on this component: its segment runs 2s -> 2s+1
      int best_seg = -1;
      for (const auto& [seg, order] : opens) {
        const int e = edge_of_segment[static_cast<std::size_t>(seg)];
        if (std::find(comp.begin(), comp.end(), e) != comp.end()) {
          best_seg = seg;
          break;
        }
      }
      if (best_seg < 0) throw DiagramError("slices: closed component without a birth");
      const int e = edge_of_segment[static_cast<std::size_t>(best_seg)];
      // The edge was traced from ends[0]; seg_dir tells whether that trace
      // passed the segment from 2s to 2s+1.
      orient_component(p, e, seg_dir[static_cast<std::size_t>(best_seg)] == 0 ? 0 : 1);
    }
  }
  for (int c : flips) {
    if (c < 0 || c >= static_cast<int>(raw.components().size())) throw DiagramError("slices: flip index out of range");
    for (int e : raw.components()[static_cast<std::size_t>(c)]) std::swap(p.ends[static_cast<std::size_t>(e)][0], p.ends[static_cast<std::size_t>(e)][1]);
  }
  return TangleDiagram(std::move(p));
}

TangleDiagram TangleDiagram::reversed(const std::vector<int>& comps) const {
  Parts p = parts_;
  p.ends = ends_;
  for (int c : comps) {
    if (c < 0 || c >= static_cast<int>(components_.size())) throw DiagramError("reverse: component index out of range");
    for (int e : components_[static_cast<std::size_t>(c)])
      std::swap(p.ends[static_cast<std::size_t>(e)][0], p.ends[static_cast<std::size_t>(e)][1]);
  }
  return TangleDiagram(std::move(p));
}

TangleDiagram orient_to_match(const TangleDiagram& first, const TangleDiagram& second) {
  if (first.n() != second.m()) throw DiagramError("orient_to_match: boundary sizes differ");
  std::vector<int> comp_of_edge(static_cast<std::size_t>(second.num_edges()), -1);
  for (std::size_t c = 0; c < second.components().size(); ++c)
    for (int e : second.components()[c]) comp_of_edge[static_cast<std::size_t>(e)] = static_cast<int>(c);
  // +1 keep, -1 reverse, 0 undecided
  std::vector<int> decision(second.components().size(), 0);
  for (int k = 0; k < 2 * first.n(); ++k) {
    const int a = first.right_node(k), b = second.left_node(k);
    const int c = comp_of_edge[static_cast<std::size_t>(b >> 1)];
    const int want = (a & 1) != (b & 1) ? 1 : -1;
    int& d = decision[static_cast<std::size_t>(c)];
    if (d == 0) d = want;
    else if (d != want)
      throw DiagramError("orient_to_match: no orientation of component " + std::to_string(c) +
                         " agrees with both of its seam points");
  }
  std::vector<int> flip;
  for (std::size_t c = 0; c < decision.size(); ++c)
    if (decision[c] < 0) flip.push_back(static_cast<int>(c));
  return flip.empty() ? second : second.reversed(flip);
}

}  // namespace khtangle
