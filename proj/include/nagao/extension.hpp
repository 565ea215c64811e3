#pragma once

// Level-preserving automorphisms at truncation: partial tree maps, greedy
// extension, membership in L_i, the extension operator E(h), the
// homomorphism and commensuration probes, the density pipeline and the
// type-preserving extension for biregular trees.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "nagao/report.hpp"
#include "nagao/transport.hpp"

namespace nagao {

/// A finite partial map between vertex sets of T.
class TreeMap {
 public:
  void set(const VertexAddress& x, const VertexAddress& y) { map_[x] = y; }
  bool contains(const VertexAddress& x) const { return map_.count(x) > 0; }
  const VertexAddress* get(const VertexAddress& x) const;
  /// Throws NotInTruncation.
  const VertexAddress& at(const VertexAddress& x) const;
  size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  const std::map<VertexAddress, VertexAddress>& pairs() const { return map_; }
  std::vector<VertexAddress> domain() const;
  std::vector<VertexAddress> image() const;

  bool injective() const;
  bool level_preserving() const;
  /// Level parity is preserved.
  bool type_preserving() const;
  /// Injective, and two domain vertices are adjacent iff their images are.
  bool is_isomorphism(const Tree& t) const;
  /// The domain spans a subtree.
  bool connected(const Tree& t) const;
  bool is_identity() const;

  /// Throws NotIsomorphism when not injective.
  TreeMap inverse() const;
  TreeMap restrict_to(const std::vector<VertexAddress>& vertices) const;

  bool operator==(const TreeMap&) const = default;

  /// List of [source, target] address pairs.
  nlohmann::json to_json() const;
  /// Throws ParseError.
  static TreeMap from_json(const nlohmann::json& j);

 private:
  std::map<VertexAddress, VertexAddress> map_;
};

/// a∘b on the points of b's domain whose image lies in a's domain.
TreeMap compose(const TreeMap& a, const TreeMap& b);
TreeMap identity_map(const std::vector<VertexAddress>& vertices);
TreeMap action_map(const Tree& t, const DeltaWord& w, const std::vector<VertexAddress>& vertices);
TreeMap action_map(const Tree& t, const GammaElement& g, const std::vector<VertexAddress>& vertices);

/// Vertices of level ≤ i in the component of x₀, within the ball.
std::vector<VertexAddress> base_component(const TruncatedTree& ball, int i);

enum class MatchMode { Level, Type };

struct GreedyOptions {
  MatchMode mode = MatchMode::Level;
  /// When ≥ 0, domain and images stay at levels ≤ max_level.
  int max_level = -1;
  /// 0 keeps canonical address order; otherwise free images are shuffled.
  uint32_t shuffle_seed = 0;
};

/// Extends ψ, an isomorphism between subtrees, to ball(center, radius) by
/// breadth-first matching of unmapped neighbours to free neighbours of the
/// image, by level (or only by type in Type mode). Throws NotLevelPreserving,
/// TypeMismatch, NotIsomorphism, NotInTruncation.
TreeMap greedy_extend(const Tree& t, const TreeMap& psi, const VertexAddress& center, int radius,
                      const GreedyOptions& opt = {});

struct LiCertificate {
  int i = 0;
  int radius = 0;
  bool valid = false;
  /// h agrees with γ_{x,h(x)} on HB(x), for every level-i x in the ball.
  RuleResult condition_a;
  /// h τ_{X₀,Y} h⁻¹ = τ_{h(X₀),h(Y)} on h(X₀), for every component Y meeting
  /// the ball; points whose image leaves the domain of h are skipped.
  RuleResult condition_b;

  nlohmann::json to_json() const;
};

/// Precomputed level-i data of a ball; check() evaluates the L_i conditions.
class LiChecker {
 public:
  LiChecker(const Tree& t, const TruncatedTree& ball, int i);
  LiCertificate check(const TreeMap& h) const;

 private:
  struct Sphere {
    std::vector<VertexAddress> level_i;  // HS ∩ ball
    std::vector<VertexAddress> ball_part;  // HB ∩ ball
  };
  struct Transfer {
    VertexAddress anchor;
    std::vector<std::pair<VertexAddress, VertexAddress>> points;  // (p, τ_{X₀,Y}(p)) inside the ball
    long skipped = 0;
  };
  const Tree* t_;
  const TruncatedTree* ball_;
  int i_;
  std::vector<Sphere> spheres_;
  std::vector<Transfer> transfers_;
};

LiCertificate check_Li(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& h);

struct ExtendOptions {
  /// Visit 𝒢_i neighbours in decreasing instead of increasing node order.
  bool reverse_order = false;
  /// Leave vertices undefined instead of throwing TruncationExceeded.
  bool allow_partial = false;
};

/// E(h) on the ball, for h a level-preserving isomorphism between components
/// of the level-≤-i forest, given on X ∩ ball. Propagates by breadth-first
/// search over 𝒢_i. Throws InputNotLevelPreserving, NotInGraph,
/// TruncationExceeded.
TreeMap extend_E(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& h,
                 const ExtendOptions& opt = {});

/// E(h) evaluated at arbitrary vertices by walking the tree geodesic from a
/// fixed vertex of the domain of h and composing transporters at each
/// crossing of a level-i horoball.
class ExtensionEvaluator {
 public:
  /// Throws InputNotLevelPreserving.
  ExtensionEvaluator(const Tree& t, int i, TreeMap h);

  /// nullopt when some step needs h outside its domain.
  std::optional<VertexAddress> try_eval(const VertexAddress& v) const;
  /// Throws TruncationExceeded.
  VertexAddress operator()(const VertexAddress& v) const;

  const TreeMap& input() const { return h_; }

 private:
  const Tree* t_;
  int i_;
  TreeMap h_;
  VertexAddress anchor_;
};

/// E(g∘h) = E(g)∘E(h) at every ball vertex where both sides evaluate.
RuleResult homomorphism_probe(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& g,
                              const TreeMap& h);

struct CommensurationOptions {
  /// Word length bound for the search over Δ_i.
  int bound = 6;
  /// Points near x₀ that must evaluate before a witness is accepted.
  int min_radius = 1;
  /// Candidates tried per sample before giving up.
  long max_candidates = 200000;
};

struct CommensurationSample {
  DeltaWord delta;
  bool found = false;
  DeltaWord delta_j;      // coset representative in Δ_i
  DeltaWord delta_prime;  // witness in Δ
  long checked = 0;
  long skipped = 0;
  long tried = 0;  // candidates examined
};

struct CommensurationResult {
  int bound = 0;
  std::vector<CommensurationSample> samples;
  /// Number of distinct δ_j used, a finiteness indicator for the coset
  /// decomposition.
  size_t distinct_delta_j = 0;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// For each δ, searches δ_j ∈ Δ_i by increasing length such that
/// E(g)⁻¹ δ_j⁻¹ δ E(g) agrees with some δ' ∈ Δ on the ball. δ' is read off
/// the image of x₀, on which Δ acts simply transitively. Sample-verified,
/// not a certificate of finite index.
CommensurationResult commensuration_probe(const Tree& t, const TruncatedTree& ball, int i,
                                          const TreeMap& g, const std::vector<DeltaWord>& samples,
                                          const CommensurationOptions& opt = {});

/// Degrees of Y_i by level: deg_T(j) below i, q_i at level i.
std::vector<int> component_degrees(const NagaoDatum& d, int i);
/// Least level allowed by the selection rule, which makes Y_i non-biregular:
/// l + 3 for the least l with q_l ≠ q_{l+2}, or 2 when T is biregular.
int select_level(const NagaoDatum& d);

struct PipelineOptions {
  int samples = 10;
  uint32_t seed = 1;
  /// g is built on Y_i ∩ ball(x₀, ρ + margin): the probes evaluate E(g) far
  /// from x₀, which pulls back to points of Y_i beyond ρ.
  int margin = 4;
  CommensurationOptions commensuration;
};

struct PipelineResult {
  int i = 0;
  TreeMap g;          // on Y_i ∩ ball(x₀, ρ + margin)
  TreeMap extension;  // E(g) on the ball
  LiCertificate certificate;
  Report report;
  nlohmann::json to_json() const;
};

/// Chooses i, extends φ inside Y_i greedily, applies E and checks the result.
/// Throws NotLevelPreserving, CannotExtendInTruncation.
PipelineResult density_pipeline(const Tree& t, const TruncatedTree& ball, const TreeMap& phi,
                                const PipelineOptions& opt = {});

/// Extends a type-preserving isomorphism φ: B_s(z₁) → B_s(z₂) to ball(z₁, ρ)
/// by moving both balls onto the standard ray, extending level-preservingly
/// there and moving back. Throws NotBiregular, TypeMismatch, NotIsomorphism,
/// CannotTransportInTruncation.
TreeMap extend_type_preserving(const Tree& t, const TreeMap& phi, const VertexAddress& z1, int s,
                               int radius);

}  // namespace nagao
