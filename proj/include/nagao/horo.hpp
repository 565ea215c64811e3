#pragma once

// Horospheres and horoballs of positive-level vertices, the components C_i(x)
// of the forest of levels ≤ i, and the component graph 𝒢_i. Everything that
// is computed from a ball is exact there: balls, horoballs and components are
// convex, so their intersections with a ball are connected.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nagao/tree.hpp"

namespace nagao {

/// y₀ = x, y₁, …, y_len with ℓ(y_j) = ℓ(x) + j. Throws LevelZeroBase.
std::vector<VertexAddress> level_increasing_ray(const Tree& t, const VertexAddress& x, int len);

/// y ∈ HS(x), decided symbolically: equal levels and the level-increasing
/// rays meet.
bool same_horosphere(const Tree& t, const VertexAddress& x, const VertexAddress& y);

struct HoroballView {
  VertexAddress base;
  int radius = 0;
  std::vector<VertexAddress> vertices;    // sorted
  std::vector<VertexAddress> horosphere;  // sorted, level ℓ(base)
};

/// HB(x) ∩ ball. Throws LevelZeroBase, NotInTruncation.
HoroballView horoball(const TruncatedTree& ball, const VertexAddress& x);
std::vector<VertexAddress> horosphere(const TruncatedTree& ball, const VertexAddress& x);

struct Component {
  int i = 0;
  /// Minimal address in the component (within the ball).
  VertexAddress anchor;
  std::vector<VertexAddress> vertices;  // sorted
};

/// C_i(x) ∩ ball. Throws LevelTooHigh, NotInTruncation.
Component component(const TruncatedTree& ball, const VertexAddress& x, int i);

struct Witness {
  VertexAddress x;  // in the lower-numbered node
  VertexAddress y;
};

/// 𝒢_i restricted to the components meeting the ball. Nodes are numbered in
/// anchor order.
class ComponentGraph {
 public:
  ComponentGraph(const TruncatedTree& ball, int i);

  int level() const { return i_; }
  const TruncatedTree& ball() const { return *ball_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Component& node(int n) const { return nodes_[n]; }
  const std::vector<Component>& nodes() const { return nodes_; }
  const std::vector<int>& neighbors(int n) const { return adj_[n]; }
  bool adjacent(int a, int b) const;

  /// Node containing v. Throws NotInGraph when v is outside the ball or above level i.
  int node_of(const VertexAddress& v) const;
  /// Node whose anchor is v, or -1.
  int find_anchor(const VertexAddress& v) const;

  /// (x ∈ a, y ∈ b) with ℓ = i and y ∈ HS(x). Throws NotInGraph if not adjacent.
  Witness witness(int a, int b) const;

  /// Geodesic by breadth-first search in 𝒢_i.
  std::vector<int> geodesic(int a, int b) const;
  /// Geodesic read off the tree geodesic between the anchors: the maximal
  /// runs of level ≤ i, in order.
  std::vector<int> geodesic_from_tree(int a, int b) const;
  /// A path is a geodesic iff X_{j+2} is neither X_j nor adjacent to it.
  bool is_geodesic(const std::vector<int>& path) const;

  size_t edge_count() const;
  std::string to_dot() const;

 private:
  const TruncatedTree* ball_;
  int i_;
  std::vector<Component> nodes_;
  std::vector<int> node_of_vertex_;  // by ball index, -1 above level i
  std::vector<std::vector<int>> adj_;
  std::map<std::pair<int, int>, Witness> witness_;  // key (min, max)
};

}  // namespace nagao
