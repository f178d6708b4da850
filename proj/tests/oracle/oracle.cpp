#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace oracle {

using khtangle::DiagramSpec;

std::vector<mpz_class> naive_snf(Matrix A) {
  std::vector<mpz_class> out;
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining corner
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (A[i][j] != 0 && (pr == rows || abs(A[i][j]) < abs(A[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(A[t], A[pr]);
    for (auto& row : A) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (A[i][t] == 0) continue;
      const mpz_class f = A[i][t] / A[t][t];
      for (std::size_t j = t; j < cols; ++j) A[i][j] -= f * A[t][j];
      if (A[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (A[t][j] == 0) continue;
      const mpz_class f = A[t][j] / A[t][t];
      for (std::size_t i = t; i < rows; ++i) A[i][j] -= f * A[i][t];
      if (A[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // divisibility: fold in a row that the pivot does not divide
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (A[i][j] % A[t][t] != 0) {
          for (std::size_t k = t; k < cols; ++k) A[t][k] += A[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    out.push_back(abs(A[t][t]));
    ++t;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::pair<int, int>>> brute_matchings(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(static_cast<std::size_t>(2 * n + 1), false);
  auto rec = [&](auto&& self) -> void {
    int first = 1;
    while (first <= 2 * n && used[static_cast<std::size_t>(first)]) ++first;
    if (first > 2 * n) {
      for (const auto& [i, j] : cur)
        for (const auto& [k, l] : cur)
          if (i < k && k < j && j < l) return;
      auto s = cur;
      std::sort(s.begin(), s.end());
      out.push_back(s);
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int j = first + 1; j <= 2 * n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      cur.emplace_back(first, j);
      self(self);
      cur.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[static_cast<std::size_t>(x)] == x ? x : p[static_cast<std::size_t>(x)] = find(p[static_cast<std::size_t>(x)]); }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

// Edge labels renumbered 0..E-1.
struct Indexed {
  std::map<int, int> id;
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> left, right;
  int edges = 0;
};

Indexed index_spec(const DiagramSpec& s) {
  Indexed x;
  auto get = [&](int label) {
    auto [it, fresh] = x.id.emplace(label, x.edges);
    if (fresh) ++x.edges;
    return it->second;
  };
  for (const auto& c : s.crossings) x.crossings.push_back({get(c[0]), get(c[1]), get(c[2]), get(c[3])});
  for (int e : s.left_boundary) x.left.push_back(get(e));
  for (int e : s.right_boundary) x.right.push_back(get(e));
  for (const auto& w : s.orientations)
    for (int e : w.edges) get(e);
  return x;
}

// Circles of the closure a T_v b-bar, as a component id per edge.
std::vector<int> circles_of(const Indexed& x, std::uint32_t v, const std::vector<std::pair<int, int>>& a,
                            const std::vector<std::pair<int, int>>& b, int& count) {
  DSU d(x.edges);
  for (std::size_t c = 0; c < x.crossings.size(); ++c) {
    const auto& p = x.crossings[c];
    if ((v >> c & 1) == 0) {
      d.unite(p[0], p[1]);
      d.unite(p[2], p[3]);
    } else {
      d.unite(p[1], p[2]);
      d.unite(p[3], p[0]);
    }
  }
  for (const auto& [i, j] : a) d.unite(x.left[static_cast<std::size_t>(i - 1)], x.left[static_cast<std::size_t>(j - 1)]);
  for (const auto& [i, j] : b) d.unite(x.right[static_cast<std::size_t>(i - 1)], x.right[static_cast<std::size_t>(j - 1)]);
  std::map<int, int> root_id;
  std::vector<int> comp(static_cast<std::size_t>(x.edges));
  for (int e = 0; e < x.edges; ++e) {
    auto [it, fresh] = root_id.emplace(d.find(e), static_cast<int>(root_id.size()));
    comp[static_cast<std::size_t>(e)] = it->second;
  }
  count = static_cast<int>(root_id.size());
  return comp;
}

}  // namespace

std::pair<int, int> writhe(const DiagramSpec& s) {
  const Indexed x = index_spec(s);
  // Slots: where each end of each edge sits. kind 0 = port (c, p), 1 = left k, 2 = right k.
  struct Slot {
    int kind, a, b;
    bool operator==(const Slot&) const = default;
  };
  std::vector<std::vector<Slot>> slots(static_cast<std::size_t>(x.edges));
  for (std::size_t c = 0; c < x.crossings.size(); ++c)
    for (int p = 0; p < 4; ++p) slots[static_cast<std::size_t>(x.crossings[c][static_cast<std::size_t>(p)])].push_back({0, static_cast<int>(c), p});
  for (std::size_t k = 0; k < x.left.size(); ++k) slots[static_cast<std::size_t>(x.left[k])].push_back({1, static_cast<int>(k), 0});
  for (std::size_t k = 0; k < x.right.size(); ++k) slots[static_cast<std::size_t>(x.right[k])].push_back({2, static_cast<int>(k), 0});

  // head_port[c][p] = true if the edge at port p of crossing c points into c.
  std::vector<std::array<int, 4>> head(x.crossings.size(), {-1, -1, -1, -1});
  for (const auto& w : s.orientations) {
    if (w.edges.empty()) continue;
    std::vector<int> es;
    for (int e : w.edges) es.push_back(x.id.at(e));
    // Try both choices for the tail slot of the first edge.
    if (slots[static_cast<std::size_t>(es[0])].empty()) continue;  // crossingless loop
    bool done = false;
    for (std::size_t choice = 0; choice < 2 && !done; ++choice) {
      const auto& s0 = slots[static_cast<std::size_t>(es[0])];
      if (s0.size() != 2) break;
      Slot tail = s0[choice];
      if (w.start_side == 'L' && !(tail.kind == 1 && tail.a == w.start_point - 1)) continue;
      if (w.start_side == 'R' && !(tail.kind == 2 && tail.a == w.start_point - 1)) continue;
      if (w.start_side == 'X' && !(tail.kind == 0 && tail.a == w.start_point / 4 && tail.b == w.start_point % 4)) continue;
      auto trial = head;
      bool ok = true;
      const bool closed = w.start_side == 0 || w.start_side == 'X';
      for (std::size_t i = 0; i < es.size() && ok; ++i) {
        const auto& sl = slots[static_cast<std::size_t>(es[i])];
        const Slot h = sl[0] == tail ? sl[1] : sl[0];
        if (tail.kind == 0) {
          int& t = trial[static_cast<std::size_t>(tail.a)][static_cast<std::size_t>(tail.b)];
          if (t == 1) ok = false;
          t = 0;
        }
        if (h.kind == 0) {
          int& t = trial[static_cast<std::size_t>(h.a)][static_cast<std::size_t>(h.b)];
          if (t == 0) ok = false;
          t = 1;
          if (i + 1 < es.size() || closed) {
            const int nxt = es[(i + 1) % es.size()];
            const Slot want{0, h.a, (h.b + 2) % 4};
            const auto& ns = slots[static_cast<std::size_t>(nxt)];
            if (std::find(ns.begin(), ns.end(), want) == ns.end()) ok = false;
            tail = want;
          }
        } else if (i + 1 < es.size()) {
          ok = false;
        }
      }
      // the first edge of a closed walk must leave from where the last one arrived
      if (ok && closed && !(tail == s0[choice])) ok = false;
      for (std::size_t c = 0; c < trial.size() && ok; ++c)
        if (trial[c][0] == 0 || trial[c][2] == 1) ok = false;
      if (ok) {
        head = trial;
        done = true;
      }
    }
    if (!done) throw std::runtime_error("oracle: cannot trace an orientation walk");
  }
  int np = 0, nm = 0;
  for (const auto& h : head) {
    if (h[1] < 0 || h[3] < 0) throw std::runtime_error("oracle: over-strand not oriented");
    (h[3] == 1 ? np : nm)++;
  }
  return {np, nm};
}

Homology block_homology(const DiagramSpec& s, const std::vector<std::pair<int, int>>& a,
                        const std::vector<std::pair<int, int>>& b) {
  const Indexed x = index_spec(s);
  const int N = static_cast<int>(x.crossings.size());
  const auto [np, nm] = writhe(s);
  const int n = s.right / 2;

  // Generators: (v, labeling of circles), bit set = X.
  struct Gen {
    std::uint32_t v;
    std::uint64_t x;
    int h, q;
  };
  std::vector<Gen> gens;
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::size_t> where;
  std::vector<std::vector<int>> comp(std::size_t{1} << N);
  std::vector<int> ncirc(std::size_t{1} << N);
  for (std::uint32_t v = 0; v < (1u << N); ++v) {
    int k = 0;
    comp[v] = circles_of(x, v, a, b, k);
    ncirc[v] = k;
    const int weight = __builtin_popcount(v);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
      const int xs = __builtin_popcountll(m);
      where[{v, m}] = gens.size();
      gens.push_back({v, m, nm - weight, xs - (k - xs) + n - weight - np + 2 * nm});
    }
  }

  // Differential entries, straight from the cube: merge m, split Delta.
  std::map<std::pair<std::size_t, std::size_t>, long> d;  // (target, source)
  for (const auto& g : gens)
    for (int i = 0; i < N; ++i) {
      if (g.v >> i & 1) continue;
      const std::uint32_t w = g.v | (1u << i);
      int sign = 1;
      for (int j = 0; j < i; ++j)
        if (g.v >> j & 1) sign = -sign;
      const auto& cs = comp[g.v];
      const auto& ct = comp[w];
      // circles of the source touching crossing i, and of the target
      std::vector<int> src_inv, tgt_inv;
      for (int p = 0; p < 4; ++p) {
        const int e = x.crossings[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
        if (std::find(src_inv.begin(), src_inv.end(), cs[static_cast<std::size_t>(e)]) == src_inv.end()) src_inv.push_back(cs[static_cast<std::size_t>(e)]);
        if (std::find(tgt_inv.begin(), tgt_inv.end(), ct[static_cast<std::size_t>(e)]) == tgt_inv.end()) tgt_inv.push_back(ct[static_cast<std::size_t>(e)]);
      }
      // labels of uninvolved target circles come from any edge on them
      std::uint64_t base = 0;
      for (int e = 0; e < x.edges; ++e) {
        const int t = ct[static_cast<std::size_t>(e)];
        if (std::find(tgt_inv.begin(), tgt_inv.end(), t) != tgt_inv.end()) continue;
        if (g.x >> cs[static_cast<std::size_t>(e)] & 1) base |= std::uint64_t{1} << t;
      }
      std::vector<std::uint64_t> images;
      if (src_inv.size() == 2 && tgt_inv.size() == 1) {
        const int x1 = static_cast<int>(g.x >> src_inv[0] & 1), x2 = static_cast<int>(g.x >> src_inv[1] & 1);
        if (x1 + x2 == 0) images.push_back(base);
        else if (x1 + x2 == 1) images.push_back(base | std::uint64_t{1} << tgt_inv[0]);
      } else if (src_inv.size() == 1 && tgt_inv.size() == 2) {
        const std::uint64_t b1 = std::uint64_t{1} << tgt_inv[0], b2 = std::uint64_t{1} << tgt_inv[1];
        if (g.x >> src_inv[0] & 1) {
          images.push_back(base | b1 | b2);
        } else {
          images.push_back(base | b1);
          images.push_back(base | b2);
        }
      } else {
        throw std::runtime_error("oracle: crossing change is neither a merge nor a split");
      }
      const std::size_t src = where.at({g.v, g.x});
      for (auto m : images) d[{where.at({w, m}), src}] += sign;
    }

  // Group generators by bigrading and take ranks of adjacent maps.
  std::map<std::pair<int, int>, std::vector<std::size_t>> by;
  for (std::size_t i = 0; i < gens.size(); ++i) by[{gens[i].h, gens[i].q}].push_back(i);
  auto block_of = [&](std::pair<int, int> from) {
    // matrix of d: C(h,q) -> C(h-1,q)
    const auto src = by.count(from) ? by.at(from) : std::vector<std::size_t>{};
    const std::pair<int, int> to{from.first - 1, from.second};
    const auto tgt = by.count(to) ? by.at(to) : std::vector<std::size_t>{};
    Matrix M(tgt.size(), std::vector<mpz_class>(src.size(), 0));
    for (std::size_t r = 0; r < tgt.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c) {
        auto it = d.find({tgt[r], src[c]});
        if (it != d.end()) M[r][c] = it->second;
      }
    return naive_snf(M);
  };
  Homology H;
  for (const auto& [hq, list] : by) {
    const auto out = block_of(hq);
    const auto in = block_of({hq.first + 1, hq.second});
    Group g;
    g.free_rank = static_cast<long>(list.size()) - static_cast<long>(out.size()) - static_cast<long>(in.size());
    for (const auto& f : in)
      if (f > 1) g.torsion.push_back(f);
    if (g.free_rank != 0 || !g.torsion.empty()) H[hq] = g;
  }
  return H;
}

Homology total_homology(const DiagramSpec& s) {
  Homology total;
  for (const auto& a : brute_matchings(s.left / 2))
    for (const auto& b : brute_matchings(s.right / 2))
      for (const auto& [hq, g] : block_homology(s, a, b)) {
        auto& t = total[hq];
        t.free_rank += g.free_rank;
        t.torsion.insert(t.torsion.end(), g.torsion.begin(), g.torsion.end());
        std::sort(t.torsion.begin(), t.torsion.end());
      }
  return total;
}

std::map<int, long> jones_in_A(const DiagramSpec& s) {
  const Indexed x = index_spec(s);
  const int N = static_cast<int>(x.crossings.size());
  std::map<int, long> bracket;
  for (std::uint32_t v = 0; v < (1u << N); ++v) {
    int k = 0;
    circles_of(x, v, {}, {}, k);
    const int ones = __builtin_popcount(v);
    // (-A^2 - A^-2)^{k-1}
    std::map<int, long> p{{0, 1}};
    for (int i = 0; i < k - 1; ++i) {
      std::map<int, long> r;
      for (const auto& [e, c] : p) {
        r[e + 2] -= c;
        r[e - 2] -= c;
      }
      p = r;
    }
    for (const auto& [e, c] : p) bracket[e + (N - ones) - ones] += c;
  }
  const auto [np, nm] = writhe(s);
  const int w = np - nm;
  std::map<int, long> out;
  const long sign = (w % 2 == 0) ? 1 : -1;
  for (const auto& [e, c] : bracket)
    if (c != 0) out[e - 3 * w] += sign * c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

long arc_algebra_rank(int n) {
  const auto ms = brute_matchings(n);
  long total = 0;
  for (const auto& a : ms)
    for (const auto& b : ms) {
      // points 1..2n; a joins on one side, b on the other
      DSU d(2 * n + 1);
      for (const auto& [i, j] : a) d.unite(i, j);
      for (const auto& [i, j] : b) d.unite(i, j);
      int circles = 0;
      for (int p = 1; p <= 2 * n; ++p)
        if (d.find(p) == p) ++circles;
      total += 1L << circles;
    }
  return total;
}

std::string format(const Homology& H) {
  std::ostringstream os;
  for (const auto& [hq, g] : H) {
    if (g.free_rank == 0 && g.torsion.empty()) continue;
    os << hq.first << ' ' << hq.second << ' ';
    bool first = true;
    if (g.free_rank > 0) {
      os << 'Z';
      if (g.free_rank > 1) os << '^' << g.free_rank;
      first = false;
    }
    std::map<mpz_class, int> t;
    for (const auto& f : g.torsion) ++t[f];
    for (const auto& [f, c] : t) {
      if (!first) os << " + ";
      os << "(Z/" << f.get_str() << ')';
      if (c > 1) os << '^' << c;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oracle
