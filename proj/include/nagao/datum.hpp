#pragma once

// Directly split Nagao data: Γ₀ ⊇ H₀ together with an eventually periodic
// schedule of root groups U_j carrying H₀-actions. Γ_i = H₀ ⋉ (U₁ × … × U_i).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nagao/algebra.hpp"

namespace nagao {

struct RootGroup {
  std::shared_ptr<const FiniteGroup> group;
  /// H₀ → Aut(U_j), keyed by Γ₀ element index.
  GroupAction action;
};

/// Unvalidated datum as read from a file or assembled by hand.
struct RawDatum {
  std::string name;
  Table gamma0;
  std::vector<int> h0;
  struct Root {
    Table group;
    std::optional<GroupAction> action;  // trivial when absent
  };
  std::vector<Root> prefix;
  std::vector<Root> period;
};

struct LevelProfile {
  int k = 0;
  /// q_0 … q_{n-1}, long enough to expose the periodic part twice.
  std::vector<int> q;
  bool biregular = false;
};

class NagaoDatum {
 public:
  const std::string& name() const { return name_; }
  const FiniteGroup& gamma0() const { return *gamma0_; }
  const Subgroup& h0() const { return h0_; }
  const CosetDecomposition& cosets() const { return cosets_; }

  /// [Γ₀ : H₀].
  int k() const { return cosets_.index(); }
  /// q_0 = k - 1, q_i = |U_i| for i ≥ 1.
  int q(int i) const;
  /// Degree of a level-i vertex: k at level 0, q_i + 1 above.
  int degree(int level) const { return level == 0 ? k() : q(level) + 1; }

  /// U_j for j ≥ 1.
  const RootGroup& root(int j) const;
  const FiniteGroup& root_group(int j) const { return *root(j).group; }
  /// θ_h on U_j.
  int act_root(int h, int j, int u) const { return root(j).action.apply(h, u); }

  /// γ_s for s in 1..k.
  int rep(int s) const { return cosets_.rep(s); }

  int prefix_length() const { return static_cast<int>(prefix_.size()); }
  int period_length() const { return static_cast<int>(period_.size()); }

  LevelProfile profile() const;

  /// Builds derived data without checking any invariant. Used to construct
  /// deliberately broken data for fault injection.
  static NagaoDatum unchecked(const RawDatum& raw);

  /// Replaces θ_h on U_j by an arbitrary table (no validation).
  NagaoDatum with_action_override(int j, int h, std::vector<int> images) const;

 private:
  NagaoDatum(std::string name, std::shared_ptr<const FiniteGroup> gamma0, Subgroup h0,
             std::vector<RootGroup> prefix, std::vector<RootGroup> period);

  std::string name_;
  std::shared_ptr<const FiniteGroup> gamma0_;
  Subgroup h0_;
  CosetDecomposition cosets_;
  std::vector<RootGroup> prefix_;
  std::vector<RootGroup> period_;
};

/// Throws IndexTooSmall, RootGroupTooSmall, BadAction, BadSchedule, plus the
/// algebra errors for malformed tables or subgroups.
NagaoDatum validate_datum(const RawDatum& raw);

/// D0, D1, D2, D3. Throws UnknownName.
NagaoDatum builtin(const std::string& name);
RawDatum builtin_raw(const std::string& name);
std::vector<std::string> builtin_names();

/// Datum file: {"gamma0": group, "h0": [...], "roots": {"prefix": [...], "period": [...]}}
/// with each root {"group": group, "action": {"<h>": [images...]}}.
RawDatum raw_datum_from_json(const nlohmann::json& j);
nlohmann::json raw_datum_to_json(const RawDatum& raw);

/// Γ_i = H₀ ⋉ (U₁ × … × U_i). Elements are coded as mixed-radix tuples
/// (h, u₁, …, u_i) meaning the product h·u₁⋯u_i.
class SemidirectProduct {
 public:
  SemidirectProduct(const NagaoDatum& d, int i);

  long order() const { return order_; }
  int levels() const { return levels_; }

  long encode(int h_index, const std::vector<int>& u) const;
  /// h_index is a position in H₀.members().
  std::pair<int, std::vector<int>> decode(long code) const;

  long mul(long a, long b) const;
  long inv(long a) const;
  long identity() const;

  long embed_h0(int h) const;
  long embed_root(int j, int u) const;

  /// Full table; only sensible for small orders.
  FiniteGroup to_group() const;

 private:
  const NagaoDatum* d_;
  int levels_;
  long order_;
  std::vector<int> radix_;  // |H₀|, |U₁|, …, |U_i|
};

SemidirectProduct gamma_i(const NagaoDatum& d, int i);

}  // namespace nagao
