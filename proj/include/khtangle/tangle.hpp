#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace khtangle {

/// Raised for malformed diagrams: bad counts, dangling edges, inconsistent
/// orientations, or a rotation system that is not planar.
class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The diagram exactly as it appears in a `.tgl` file. Edge identifiers are
/// arbitrary positive integers. Each crossing lists its four edges
/// counterclockwise, starting at the incoming under-strand. An orientation
/// walk is a list of edges; walks of arc components start with a boundary
/// marker (side 'L' or 'R' plus a 1-based point index). A closed walk may
/// start with an 'X' marker naming the crossing port its first edge leaves.
struct DiagramSpec {
  struct Walk {
    char start_side = 0;  // 'L', 'R', 'X', or 0 for an unmarked closed walk
    int start_point = 0;  // 1-based boundary point; for 'X', 4 * crossing + port (0-based)
    std::vector<int> edges;
    friend bool operator==(const Walk&, const Walk&) = default;
  };

  int left = 0;   // number of left boundary points (2m)
  int right = 0;  // number of right boundary points (2n)
  std::vector<std::array<int, 4>> crossings;
  std::vector<int> left_boundary;
  std::vector<int> right_boundary;
  std::vector<Walk> orientations;

  friend bool operator==(const DiagramSpec&, const DiagramSpec&) = default;
};

/// A planar (2m,2n)-tangle diagram with totally ordered crossings.
///
/// Every edge e has two end nodes, 2e and 2e+1; when the edge is oriented,
/// 2e is its tail. A node is attached to a crossing port, a boundary point,
/// or (for a crossingless closed component) to the other end of its own edge.
/// Ports of a crossing are numbered 0..3 counterclockwise with port 0 the
/// incoming under-strand, so the under-strand runs 0 -> 2.
class TangleDiagram {
 public:
  enum class AttachKind : std::uint8_t { Port, Left, Right, Loop };
  struct Attachment {
    AttachKind kind = AttachKind::Loop;
    int index = -1;  // crossing index, or 0-based boundary point
    int port = -1;   // only for Port
    friend bool operator==(const Attachment&, const Attachment&) = default;
  };

  /// Assembled internal data. `ends[e][0]` is the tail of an oriented edge.
  /// For every crossing, ports 0 and 2 must carry the under-strand; if the
  /// under-strand is oriented from port 2 to port 0 the record is rotated.
  struct Parts {
    int m = 0, n = 0;
    int num_crossings = 0;
    std::vector<std::array<Attachment, 2>> ends;
    std::vector<int> labels;     // external edge identifiers
    std::vector<char> oriented;  // per edge
  };

  TangleDiagram() = default;
  explicit TangleDiagram(Parts parts);
  explicit TangleDiagram(const DiagramSpec& spec);

  /// 2n parallel strands oriented left to right.
  static TangleDiagram identity(int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  int num_nodes() const { return 2 * num_edges(); }
  int num_crossings() const { return static_cast<int>(ports_.size()); }

  const std::array<int, 4>& crossing_nodes(int c) const { return ports_.at(static_cast<std::size_t>(c)); }
  int left_node(int k) const { return left_.at(static_cast<std::size_t>(k)); }
  int right_node(int k) const { return right_.at(static_cast<std::size_t>(k)); }
  const Attachment& attachment(int node) const {
    return ends_.at(static_cast<std::size_t>(node >> 1))[static_cast<std::size_t>(node & 1)];
  }
  const std::vector<int>& loop_edges() const { return loops_; }
  int label(int edge) const { return labels_.at(static_cast<std::size_t>(edge)); }
  int edge_index(int label) const;

  bool is_oriented() const;
  bool edge_oriented(int e) const { return oriented_.at(static_cast<std::size_t>(e)) != 0; }

  /// +1 for a positive crossing, -1 for a negative one.
  int crossing_sign(int c) const;

  /// (N+, N-). Throws DiagramError if some component through a crossing is
  /// unoriented.
  std::pair<int, int> writhe_counts() const;

  /// Components as ordered lists of edges (arcs first, starting at their
  /// boundary end; then closed components starting at their smallest edge).
  const std::vector<std::vector<int>>& components() const { return components_; }

  /// Crossing k of the result is crossing perm[k] of this diagram.
  TangleDiagram with_crossing_order(const std::vector<int>& perm) const;

  /// The same diagram with the listed components (indices into components())
  /// traversed backwards.
  TangleDiagram reversed(const std::vector<int>& comps) const;

  /// Canonical file-level description.
  DiagramSpec spec() const;

  const Parts& parts() const { return parts_; }

 private:
  void build_indices();
  void check_orientation_consistency() const;
  void check_planarity() const;

  Parts parts_;
  int m_ = 0, n_ = 0;
  std::vector<std::array<Attachment, 2>> ends_;
  std::vector<int> labels_;
  std::vector<char> oriented_;
  std::vector<std::array<int, 4>> ports_;
  std::vector<int> left_, right_;
  std::vector<int> loops_;
  std::vector<std::vector<int>> components_;
};

/// Composite of a (2m,2n)-tangle with a (2n,2p)-tangle: crossings of `first`
/// come before those of `second`; boundary edges meeting at the seam fuse.
struct ComposedTangle {
  TangleDiagram diagram;
  std::vector<int> first_edge_map;   // edge of `first` -> edge of diagram
  std::vector<int> second_edge_map;  // edge of `second` -> edge of diagram
};

ComposedTangle compose_with_maps(const TangleDiagram& first, const TangleDiagram& second);
TangleDiagram compose_tangles(const TangleDiagram& first, const TangleDiagram& second);

/// `second` with those components reversed whose orientation disagrees with
/// `first` along the seam. Throws if no choice works.
TangleDiagram orient_to_match(const TangleDiagram& first, const TangleDiagram& second);

/// (N+, N-), see TangleDiagram::writhe_counts.
std::pair<int, int> writhe_counts(const TangleDiagram& t);

/// Builds a diagram from a left-to-right sweep of elementary slices. The
/// strands present at any moment are numbered 1..k from the bottom.
///
///   over i   strands i and i+1 cross; the one entering at height i passes over
///   under i  strands i and i+1 cross; the one entering at height i passes under
///   open i   a new arc is born, occupying heights i and i+1
///   close i  the strands at heights i and i+1 join and end
///   flip c   reverse the default orientation of component c (0-based,
///            components numbered as in TangleDiagram::components())
///
/// Arc components are oriented from the first of their endpoints in the order
/// L1..L2m, R1..R2n; a closed component is oriented so that the lower strand
/// of its earliest `open` travels right to left (so a braid drawn on the upper
/// strands of nested opens runs left to right).
TangleDiagram tangle_from_slices(int left_points, const std::string& word);

}  // namespace khtangle
