#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khtangle/frobenius.hpp"

namespace khtangle {

/// An element of a correspondence fiber: the intermediate generators passed
/// through, in order.
using Token = std::vector<std::uint32_t>;

/// A morphism of the Burnside category: for each (target, source) pair a
/// finite set of tokens.
class Correspondence {
 public:
  Correspondence() = default;
  Correspondence(std::size_t source_size, std::size_t target_size)
      : source_size_(source_size), target_size_(target_size) {}

  static Correspondence identity(std::size_t size);

  std::size_t source_size() const { return source_size_; }
  std::size_t target_size() const { return target_size_; }
  void add(std::uint32_t target, std::uint32_t source, Token token);
  /// Removes one token; used by negative-control tests.
  bool remove(std::uint32_t target, std::uint32_t source, const Token& token);
  const std::vector<Token>& fiber(std::uint32_t target, std::uint32_t source) const;
  const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Token>>& fibers() const { return fibers_; }

  friend bool operator==(const Correspondence&, const Correspondence&) = default;

 private:
  std::size_t source_size_ = 0, target_size_ = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Token>> fibers_;
};

/// Correspondence of a single saddle between labelings (masks) of the source
/// and target configurations. Each nonempty fiber has one (empty) token.
Correspondence saddle_correspondence(const Saddle& s);

/// B after A; tokens concatenate as A-token, intermediate, B-token.
Correspondence compose(const Correspondence& B, const Correspondence& A);

/// Dense matrix of fiber sizes, rows indexed by target.
std::vector<std::vector<std::int64_t>> abelianize(const Correspondence& A);

/// Which pair of arcs selects the ladybug matching. Right uses the arcs leaving
/// the first site through ports 0 and 2, Left through ports 1 and 3.
enum class LadybugRule : std::uint8_t { Right, Left };

struct LadybugConvention {
  LadybugRule rule = LadybugRule::Right;
  /// Compute the matching from the second site of each face instead of the first.
  bool from_second_site = false;
  /// Negative control: invert the matching on this one face (vertex bits, i, j).
  std::optional<std::array<std::uint32_t, 3>> swapped_face;
};

/// Bijection between the fibers of the two composites of a square face,
/// keyed on (target, source): pairs (token via first direction, token via second).
using FaceBijection = std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::pair<Token, Token>>>;

/// A 2-dimensional face of the cube from v to v + e_i + e_j, i < j.
struct FaceSquare {
  std::uint32_t v = 0;
  int i = 0, j = 0;
  Correspondence via_i;  // e_i first, then e_j
  Correspondence via_j;
  FaceBijection bijection;
  bool ladybug = false;
};

struct Verdict {
  bool ok = true;
  std::string message;
};

/// Checks that `f.bijection` is a bijection between fibers of the two
/// composites that respects sources and targets.
Verdict check_face(const FaceSquare& f);

/// The Burnside-valued cube of a closure aTb-bar, with vertices as bitmasks
/// (bit c is the smoothing of crossing c).
class BurnsideCube {
 public:
  BurnsideCube(const TangleDiagram& t, const CrossinglessMatching& a, const CrossinglessMatching& b,
               LadybugConvention convention = {});

  int dimension() const { return dim_; }
  const ClosedConfig& config(std::uint32_t v) const { return configs_.at(v); }
  std::size_t generators(std::uint32_t v) const { return std::size_t{1} << config(v).num_circles(); }
  const Saddle& edge(std::uint32_t v, int i) const;
  Correspondence edge_correspondence(std::uint32_t v, int i) const;

  FaceSquare face(std::uint32_t v, int i, int j) const;
  /// The face bijection applied to one token: intermediate y (via p first)
  /// for source x and target z, mapped to the intermediate via q first.
  std::uint32_t face_map(std::uint32_t v, int p, int q, std::uint32_t x, std::uint32_t z, std::uint32_t y) const;
  Verdict check_hexagon(std::uint32_t v, int i, int j, int k) const;

  struct Report {
    std::size_t faces = 0, ladybug_faces = 0, hexagons = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
  };
  /// Checks every 2-face and every 3-face; `jobs` caps worker threads.
  Report check_all(int jobs = 1) const;

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ladybug_pairs(std::uint32_t v, int i, int j) const;

  TangleDiagram t_;
  int dim_ = 0;
  LadybugConvention convention_;
  std::vector<ClosedConfig> configs_;
  std::vector<std::vector<Saddle>> edges_;  // [v][i], valid when bit i of v is 0
};

}  // namespace khtangle
