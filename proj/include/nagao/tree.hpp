#pragma once

// The Bass–Serre tree of a directly split Nagao datum. Vertices are named by
// canonical addresses (w, s, i) standing for w.x_{i,s} = wγ_s.x_i; all
// geometry here (neighbours, geodesics, the Γ-action) is exact and symbolic.
// TruncatedTree is an explicit ball used for enumeration.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "nagao/words.hpp"

namespace nagao {

struct VertexAddress {
  DeltaWord w;
  int s = 0;  // 0 at level 0
  int i = 0;

  bool operator==(const VertexAddress&) const = default;
  std::strong_ordering operator<=>(const VertexAddress& o) const;
};

struct VertexHash {
  size_t operator()(const VertexAddress& v) const noexcept;
};

/// x₀.
VertexAddress base_vertex();
/// x_{i,s} = γ_s.x_i on the fundamental domain.
VertexAddress ray_vertex(int s, int i);

std::string to_string(const VertexAddress& v);
nlohmann::json address_to_json(const VertexAddress& v);
VertexAddress address_from_json(const nlohmann::json& j);

class TruncatedTree;

class Tree {
 public:
  explicit Tree(const NagaoDatum& d) : d_(&d) {}

  const NagaoDatum& datum() const { return *d_; }

  bool is_canonical(const VertexAddress& v) const;
  /// Throws NonCanonicalAddress.
  void require_canonical(const VertexAddress& v) const;

  /// Level-0: the k vertices w.x_{1,s}. Level i > 0: the up-neighbour first,
  /// then the q_i down-neighbours w σ_s(u).x_{i-1,s} in U_i order.
  std::vector<VertexAddress> neighbors(const VertexAddress& v) const;
  /// Unique neighbour of level i+1 (requires i > 0).
  VertexAddress up(const VertexAddress& v) const;
  int degree(const VertexAddress& v) const { return d_->degree(v.i); }
  bool adjacent(const VertexAddress& a, const VertexAddress& b) const;

  /// The neighbour of v one step closer to x₀ (v ≠ x₀).
  VertexAddress toward_base(const VertexAddress& v) const;
  /// v, toward_base(v), …, x₀.
  std::vector<VertexAddress> path_to_base(const VertexAddress& v) const;
  std::vector<VertexAddress> geodesic(const VertexAddress& a, const VertexAddress& b) const;
  int distance(const VertexAddress& a, const VertexAddress& b) const;

  VertexAddress act(const GammaElement& g, const VertexAddress& v) const;
  VertexAddress act(const DeltaWord& w, const VertexAddress& v) const;

  TruncatedTree ball(const VertexAddress& center, int radius) const;

 private:
  const NagaoDatum* d_;
};

class TruncatedTree {
 public:
  const VertexAddress& center() const { return vertices_[0]; }
  int radius() const { return radius_; }
  size_t size() const { return vertices_.size(); }

  const VertexAddress& vertex(int idx) const { return vertices_[idx]; }
  const std::vector<VertexAddress>& vertices() const { return vertices_; }
  const std::vector<int>& adjacent(int idx) const { return adj_[idx]; }
  int level(int idx) const { return vertices_[idx].i; }
  int depth(int idx) const { return depth_[idx]; }
  int parent(int idx) const { return parent_[idx]; }
  /// Degree in the full tree, a local property of the vertex.
  int tree_degree(int idx) const { return degree_[idx]; }
  /// All tree-neighbours of an interior vertex lie in the ball.
  bool interior(int idx) const { return depth_[idx] < radius_; }

  /// Index or -1.
  int find(const VertexAddress& v) const;
  bool contains(const VertexAddress& v) const { return find(v) >= 0; }
  /// Throws NotInTruncation.
  int at(const VertexAddress& v) const;

  size_t edge_count() const;
  /// Distance and geodesic computed inside the ball. Throws NotInTruncation.
  int distance(const VertexAddress& a, const VertexAddress& b) const;
  std::vector<VertexAddress> geodesic(const VertexAddress& a, const VertexAddress& b) const;

  nlohmann::json to_json() const;
  std::string to_dot() const;

 private:
  friend class Tree;

  int radius_ = 0;
  std::vector<VertexAddress> vertices_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> depth_;
  std::vector<int> parent_;
  std::vector<int> degree_;
  std::unordered_map<VertexAddress, int, VertexHash> index_;
};

/// Y_i ∩ ball(x₀, ρ) with the Δ_i generators and F^(i).
struct UniformPiece {
  int i = 0;
  std::vector<VertexAddress> vertices;
  std::vector<DeltaWord> generators;
  std::vector<VertexAddress> fundamental_domain;
};

UniformPiece uniform_piece(const Tree& tree, int i, int radius);

/// Degree sequence (k, q₁+1, q₂+1, …) is constant on each parity class.
bool is_biregular(const NagaoDatum& d);

struct LevelReconstruction {
  /// Reconstructed level per ball vertex, empty where undetermined.
  std::vector<std::optional<int>> levels;
  /// Some vertex within the requested inner radius stayed undetermined.
  bool ambiguous = false;
};

/// Recovers ℓ on the ball from tree degrees alone (no addresses) by
/// constraint propagation: deg(v) = deg(ℓ(v)), adjacent levels differ by one,
/// interior vertices have exactly one neighbour one level up (none at level 0).
LevelReconstruction level_from_degrees(const TruncatedTree& ball, const NagaoDatum& d,
                                       int inner_radius, int max_level = 60);

}  // namespace nagao
