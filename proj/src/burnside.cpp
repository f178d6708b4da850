#include "khtangle/burnside.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <stdexcept>

#include "khtangle/parallel.hpp"

namespace khtangle {

Correspondence Correspondence::identity(std::size_t size) {
  Correspondence c(size, size);
  for (std::uint32_t k = 0; k < size; ++k) c.add(k, k, {});
  return c;
}

void Correspondence::add(std::uint32_t target, std::uint32_t source, Token token) {
  if (target >= target_size_ || source >= source_size_) throw std::out_of_range("correspondence: index out of range");
  fibers_[{target, source}].push_back(std::move(token));
}

bool Correspondence::remove(std::uint32_t target, std::uint32_t source, const Token& token) {
  auto it = fibers_.find({target, source});
  if (it == fibers_.end()) return false;
  auto pos = std::find(it->second.begin(), it->second.end(), token);
  if (pos == it->second.end()) return false;
  it->second.erase(pos);
  if (it->second.empty()) fibers_.erase(it);
  return true;
}

const std::vector<Token>& Correspondence::fiber(std::uint32_t target, std::uint32_t source) const {
  static const std::vector<Token> empty;
  auto it = fibers_.find({target, source});
  return it == fibers_.end() ? empty : it->second;
}

Correspondence saddle_correspondence(const Saddle& s) {
  Correspondence c(std::size_t{1} << s.source_circles, std::size_t{1} << s.target_circles);
  for (Mask x = 0; x < (Mask{1} << s.source_circles); ++x)
    for (Mask y : apply_saddle(s, x)) c.add(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(x), {});
  return c;
}

Correspondence compose(const Correspondence& B, const Correspondence& A) {
  if (A.target_size() != B.source_size()) throw std::invalid_argument("compose: correspondences are not composable");
  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, const std::vector<Token>*>>> b_by_source;
  for (const auto& [key, tokens] : B.fibers()) b_by_source[key.second].emplace_back(key.first, &tokens);
  Correspondence out(A.source_size(), B.target_size());
  for (const auto& [key, a_tokens] : A.fibers()) {
    const auto [y, x] = key;
    auto it = b_by_source.find(y);
    if (it == b_by_source.end()) continue;
    for (const auto& [z, b_tokens] : it->second)
      for (const auto& ta : a_tokens)
        for (const auto& tb : *b_tokens) {
          Token t = ta;
          t.push_back(y);
          t.insert(t.end(), tb.begin(), tb.end());
          out.add(z, x, std::move(t));
        }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> abelianize(const Correspondence& A) {
  std::vector<std::vector<std::int64_t>> m(A.target_size(), std::vector<std::int64_t>(A.source_size(), 0));
  for (const auto& [key, tokens] : A.fibers())
    m[key.first][key.second] = static_cast<std::int64_t>(tokens.size());
  return m;
}

Verdict check_face(const FaceSquare& f) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> keys;
  for (const auto& [key, _] : f.via_i.fibers()) keys.insert(key);
  for (const auto& [key, _] : f.via_j.fibers()) keys.insert(key);
  auto where = [&](std::pair<std::uint32_t, std::uint32_t> key) {
    return "face (v=" + std::to_string(f.v) + ", i=" + std::to_string(f.i) + ", j=" + std::to_string(f.j) +
           ") fiber over (target " + std::to_string(key.first) + ", source " + std::to_string(key.second) + ")";
  };
  for (const auto& key : keys) {
    const auto& a = f.via_i.fiber(key.first, key.second);
    const auto& b = f.via_j.fiber(key.first, key.second);
    if (a.size() != b.size())
      return {false, where(key) + ": composites have " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " elements"};
    auto it = f.bijection.find(key);
    const std::size_t paired = it == f.bijection.end() ? 0 : it->second.size();
    if (paired != a.size()) return {false, where(key) + ": no bijection recorded"};
    std::vector<Token> left, right;
    for (const auto& [p, q] : it->second) {
      left.push_back(p);
      right.push_back(q);
    }
    auto sorted = [](std::vector<Token> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    if (sorted(left) != sorted(a) || sorted(right) != sorted(b))
      return {false, where(key) + ": recorded pairing is not a bijection of the fibers"};
  }
  for (const auto& [key, pairs] : f.bijection)
    if (!keys.count(key) && !pairs.empty()) return {false, where(key) + ": pairing over an empty fiber"};
  return {};
}

// ---------------------------------------------------------------------------

BurnsideCube::BurnsideCube(const TangleDiagram& t, const CrossinglessMatching& a, const CrossinglessMatching& b,
                           LadybugConvention convention)
    : t_(t), dim_(t.num_crossings()), convention_(convention) {
  if (dim_ > 20) throw std::invalid_argument("cube dimension too large");
  const std::uint32_t V = 1u << dim_;
  configs_.reserve(V);
  for (std::uint32_t v = 0; v < V; ++v) {
    CubeVertex cv(static_cast<std::size_t>(dim_));
    for (int c = 0; c < dim_; ++c) cv[static_cast<std::size_t>(c)] = (v >> c) & 1;
    configs_.push_back(closed_config(t_, a, cv, b));
    if (configs_.back().num_circles() > 62) throw std::invalid_argument("too many circles");
  }
  edges_.resize(V);
  for (std::uint32_t v = 0; v < V; ++v) {
    edges_[v].resize(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i)
      if (!((v >> i) & 1))
        edges_[v][static_cast<std::size_t>(i)] = Saddle::between(configs_[v].system, configs_[v | (1u << i)].system);
  }
}

const Saddle& BurnsideCube::edge(std::uint32_t v, int i) const {
  if ((v >> i) & 1) throw std::invalid_argument("edge: direction already set at this vertex");
  return edges_.at(v).at(static_cast<std::size_t>(i));
}

Correspondence BurnsideCube::edge_correspondence(std::uint32_t v, int i) const {
  return saddle_correspondence(edge(v, i));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BurnsideCube::ladybug_pairs(std::uint32_t v, int i,
                                                                                 int j) const {
  const Saddle& si = edge(v, i);
  const Saddle& sj = edge(v, j);
  if (si.kind != Saddle::Kind::Split || sj.kind != Saddle::Kind::Split)
    throw std::logic_error("ladybug: face is not a split-split configuration");
  const int site = convention_.from_second_site ? j : i;
  const int port = convention_.rule == LadybugRule::Right ? 0 : 1;
  const int node = t_.crossing_nodes(site)[static_cast<std::size_t>(port)];
  const int ci = config(v | (1u << i)).system.circle_of_node[static_cast<std::size_t>(node)];
  const int cj = config(v | (1u << j)).system.circle_of_node[static_cast<std::size_t>(node)];
  auto other = [](const Saddle& s, int c) {
    if (s.out[0] == c) return s.out[1];
    if (s.out[1] == c) return s.out[0];
    throw std::logic_error("ladybug: selected arc is not on a split circle");
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{
      {static_cast<std::uint32_t>(ci), static_cast<std::uint32_t>(cj)},
      {static_cast<std::uint32_t>(other(si, ci)), static_cast<std::uint32_t>(other(sj, cj))}};
  if (convention_.swapped_face && (*convention_.swapped_face)[0] == v &&
      static_cast<int>((*convention_.swapped_face)[1]) == i && static_cast<int>((*convention_.swapped_face)[2]) == j)
    std::swap(pairs[0].second, pairs[1].second);
  return pairs;
}

std::uint32_t BurnsideCube::face_map(std::uint32_t v, int p, int q, std::uint32_t x, std::uint32_t z,
                                     std::uint32_t y) const {
  auto fiber = [&](int first, int second) {
    std::vector<std::uint32_t> out;
    for (Mask m : apply_saddle(edge(v, first), x)) {
      const auto imgs = apply_saddle(edge(v | (1u << first), second), m);
      if (std::find(imgs.begin(), imgs.end(), Mask{z}) != imgs.end()) out.push_back(static_cast<std::uint32_t>(m));
    }
    return out;
  };
  const auto fp = fiber(p, q);
  const auto fq = fiber(q, p);
  if (std::find(fp.begin(), fp.end(), y) == fp.end()) throw std::logic_error("face_map: token not in fiber");
  if (fp.size() != fq.size()) throw std::logic_error("face_map: fiber sizes differ");
  if (fq.size() == 1) return fq.front();
  if (fq.size() != 2) throw std::logic_error("face_map: unexpected fiber size " + std::to_string(fq.size()));
  const int i = std::min(p, q), j = std::max(p, q);
  const auto pairs = ladybug_pairs(v, i, j);
  // circle of the p-side split labeled X in y
  const Saddle& sp = edge(v, p);
  int cx = -1;
  for (int c : sp.out)
    if ((y >> c) & 1) cx = c;
  std::uint32_t target_circle = 0;
  for (auto [a, b] : pairs) {
    const std::uint32_t from = p == i ? a : b, to = p == i ? b : a;
    if (static_cast<int>(from) == cx) target_circle = to;
  }
  for (std::uint32_t cand : fq)
    if ((cand >> target_circle) & 1) return cand;
  throw std::logic_error("face_map: ladybug pairing found no partner");
}

FaceSquare BurnsideCube::face(std::uint32_t v, int i, int j) const {
  if (i >= j) throw std::invalid_argument("face: need i < j");
  FaceSquare f;
  f.v = v;
  f.i = i;
  f.j = j;
  f.via_i = compose(edge_correspondence(v | (1u << i), j), edge_correspondence(v, i));
  f.via_j = compose(edge_correspondence(v | (1u << j), i), edge_correspondence(v, j));
  for (const auto& [key, tokens] : f.via_i.fibers()) {
    const auto& other = f.via_j.fiber(key.first, key.second);
    if (tokens.size() != other.size()) continue;  // left for check_face to report
    if (tokens.size() == 2) f.ladybug = true;
    auto& out = f.bijection[key];
    for (const auto& t : tokens) {
      const std::uint32_t y2 = face_map(v, i, j, key.second, key.first, t.front());
      out.emplace_back(t, Token{y2});
    }
  }
  return f;
}

Verdict BurnsideCube::check_hexagon(std::uint32_t v, int i, int j, int k) const {
  const std::uint32_t x_count = static_cast<std::uint32_t>(generators(v));
  for (std::uint32_t x = 0; x < x_count; ++x) {
    for (Mask y1 : apply_saddle(edge(v, i), x))
      for (Mask y2 : apply_saddle(edge(v | (1u << i), j), y1))
        for (Mask z : apply_saddle(edge(v | (1u << i) | (1u << j), k), y2)) {
          std::array<int, 3> order{i, j, k};
          std::uint32_t a = static_cast<std::uint32_t>(y1), b = static_cast<std::uint32_t>(y2);
          try {
            for (int step = 0; step < 6; ++step) {
              if (step % 2 == 0) {
                a = face_map(v, order[0], order[1], x, b, a);
                std::swap(order[0], order[1]);
              } else {
                b = face_map(v | (1u << order[0]), order[1], order[2], a, static_cast<std::uint32_t>(z), b);
                std::swap(order[1], order[2]);
              }
            }
          } catch (const std::logic_error& e) {
            return {false, std::string("hexagon: ") + e.what()};
          }
          if (a != y1 || b != y2)
            return {false, "hexagon at v=" + std::to_string(v) + " directions (" + std::to_string(i) + "," +
                               std::to_string(j) + "," + std::to_string(k) + "), source " + std::to_string(x) +
                               ", target " + std::to_string(z) + ": face bijections do not compose to the identity"};
        }
  }
  return {};
}

BurnsideCube::Report BurnsideCube::check_all(int jobs) const {
  Report report;
  std::mutex mu;
  const std::uint32_t V = 1u << dim_;
  parallel_for(V, jobs, [&](std::size_t vi) {
    const auto v = static_cast<std::uint32_t>(vi);
    Report local;
    for (int i = 0; i < dim_; ++i) {
      if ((v >> i) & 1) continue;
      for (int j = i + 1; j < dim_; ++j) {
        if ((v >> j) & 1) continue;
        ++local.faces;
        try {
          const FaceSquare f = face(v, i, j);
          if (f.ladybug) ++local.ladybug_faces;
          const Verdict verdict = check_face(f);
          if (!verdict.ok) local.failures.push_back(verdict.message);
        } catch (const std::logic_error& e) {
          local.failures.push_back(e.what());
        }
        for (int k = j + 1; k < dim_; ++k) {
          if ((v >> k) & 1) continue;
          ++local.hexagons;
          const Verdict verdict = check_hexagon(v, i, j, k);
          if (!verdict.ok) local.failures.push_back(verdict.message);
        }
      }
    }
    std::lock_guard lock(mu);
    report.faces += local.faces;
    report.ladybug_faces += local.ladybug_faces;
    report.hexagons += local.hexagons;
    report.failures.insert(report.failures.end(), local.failures.begin(), local.failures.end());
  });
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

}  // namespace khtangle
