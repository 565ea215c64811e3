#pragma once

// Finite groups given by multiplication tables, subgroups, left cosets and
// actions by automorphisms. Everything here is small and exhaustively checked.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nagao {

using Table = std::vector<std::vector<int>>;

class FiniteGroup {
 public:
  /// Validates the table (square, closed, associative, identity, inverses).
  /// Throws Error with BadTable / NotAssociative / NoIdentity / NoInverse.
  static FiniteGroup from_table(const Table& table);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  Table table() const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

FiniteGroup build_group(const Table& table);

/// A subgroup stored as a sorted member list of a parent group.
class Subgroup {
 public:
  /// Throws NotSubgroup if members are not closed or miss the identity.
  static Subgroup of(const FiniteGroup& parent, std::vector<int> members);
  static Subgroup trivial(const FiniteGroup& parent);
  static Subgroup generated(const FiniteGroup& parent, const std::vector<int>& gens);

  const std::vector<int>& members() const { return members_; }
  bool contains(int g) const { return g >= 0 && g < static_cast<int>(mask_.size()) && mask_[g]; }
  int order() const { return static_cast<int>(members_.size()); }

 private:
  std::vector<int> members_;
  std::vector<bool> mask_;
};

/// Left-coset decomposition G = ⊔ γ_s H. Representatives are the minimal
/// element index of each coset, except that the identity coset is listed
/// first with representative the identity. Ray indices s run from 1.
class CosetDecomposition {
 public:
  CosetDecomposition(const FiniteGroup& g, const Subgroup& h);

  int index() const { return static_cast<int>(reps_.size()); }
  /// γ_s for s in 1..index().
  int rep(int s) const { return reps_[s - 1]; }
  const std::vector<int>& reps() const { return reps_; }
  /// s with g ∈ γ_s H.
  int coset_of(int g) const { return coset_of_[g]; }
  /// h ∈ H with g = γ_{coset_of(g)} h.
  int h_part(int g) const { return h_part_[g]; }

 private:
  std::vector<int> reps_;
  std::vector<int> coset_of_;
  std::vector<int> h_part_;
};

/// Throws NotSubgroup if h is not a subgroup of g.
std::vector<int> coset_reps(const FiniteGroup& g, const Subgroup& h);

/// An action of a subgroup of some parent group on a target group, given as
/// one image table per acting element (keyed by its parent index).
struct GroupAction {
  std::map<int, std::vector<int>> images;

  int apply(int h, int u) const { return images.at(h)[u]; }

  static GroupAction trivial(const Subgroup& acting, const FiniteGroup& target);
};

struct ActionReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Checks that every acting element induces an automorphism, the identity acts
/// trivially and θ_h∘θ_h' = θ_{hh'} exhaustively.
ActionReport validate_action(const FiniteGroup& parent, const Subgroup& acting,
                             const FiniteGroup& target, const GroupAction& action);

// Standard small groups, element 0 is always the identity.
FiniteGroup cyclic_group(int n);
/// Permutations of {0..n-1} in lexicographic order; mul(a,b) = a∘b.
FiniteGroup symmetric_group(int n);
/// Affine maps x ↦ ax+b over F_p with index (a-1)*p + b; mul(f,g) = f∘g.
FiniteGroup affine_group(int p);
/// Direct product with index a*|B| + b.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);

}  // namespace nagao
