#pragma once

// Normal forms in Δ = V₁ * … * V_k, where V_s = γ_s V γ_s⁻¹ and
// V = ⊕_{j>0} U_j, and in Γ = Γ₀ ⋉ Δ.

#include <compare>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nagao/datum.hpp"

namespace nagao {

/// Finitely supported element of V: sorted (j, u) pairs with u ≠ 1 in U_j.
struct Tuple {
  std::vector<std::pair<int, int>> entries;

  bool empty() const { return entries.empty(); }
  int max_index() const { return entries.empty() ? 0 : entries.back().first; }
  /// Component at position j, or -1 for the identity.
  int at(int j) const;

  auto operator<=>(const Tuple&) const = default;
  bool operator==(const Tuple&) const = default;
};

/// An element γ_s v γ_s⁻¹ of V_s with v ≠ 1.
struct Syllable {
  int s = 1;
  Tuple t;

  auto operator<=>(const Syllable&) const = default;
  bool operator==(const Syllable&) const = default;
};

/// Free-product normal form: adjacent syllables have distinct s.
struct DeltaWord {
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }
  size_t length() const { return syllables.size(); }

  auto operator<=>(const DeltaWord&) const = default;
  bool operator==(const DeltaWord&) const = default;
};

/// g₀·w with g₀ ∈ Γ₀ and w ∈ Δ.
struct GammaElement {
  int g0 = 0;
  DeltaWord w;

  bool operator==(const GammaElement&) const = default;
};

Tuple tuple_mul(const NagaoDatum& d, const Tuple& a, const Tuple& b);
Tuple tuple_inv(const NagaoDatum& d, const Tuple& a);
/// θ_h applied componentwise.
Tuple tuple_act(const NagaoDatum& d, int h, const Tuple& a);
/// Single component u at position j (identity gives an empty tuple).
Tuple tuple_single(const NagaoDatum& d, int j, int u);

DeltaWord syllable_word(int s, Tuple t);
/// (s, u at position j) as a word.
DeltaWord root_word(const NagaoDatum& d, int s, int j, int u);

/// Every non-identity tuple supported on positions ≤ max_support, in order.
std::vector<Tuple> enumerate_tuples(const NagaoDatum& d, int max_support);
/// Every normal form with at most max_syllables syllables whose tuples are
/// supported on positions ≤ max_support, shortest first.
std::vector<DeltaWord> enumerate_words(const NagaoDatum& d, int max_syllables, int max_support);
/// Visits the same words in the same order without storing them; stops and
/// returns true as soon as visit returns true.
bool for_each_word(const NagaoDatum& d, int max_syllables, int max_support,
                   const std::function<bool(const DeltaWord&)>& visit);

/// Uniform syllable count in [0, max_syllables], then uniformly random
/// distinct-neighbour indices s and non-identity tuples.
DeltaWord sample_word(const NagaoDatum& d, std::mt19937& rng, int max_syllables, int max_support);

bool is_normal(const NagaoDatum& d, const DeltaWord& w);

DeltaWord delta_mul(const NagaoDatum& d, const DeltaWord& a, const DeltaWord& b);
DeltaWord delta_inv(const NagaoDatum& d, const DeltaWord& a);
/// γ w γ⁻¹ for γ ∈ Γ₀.
DeltaWord gamma0_conj(const NagaoDatum& d, int g, const DeltaWord& w);

GammaElement gamma_identity(const NagaoDatum& d);
GammaElement gamma_of(const NagaoDatum& d, const DeltaWord& w);
GammaElement gamma_of(int g0, DeltaWord w);
GammaElement gamma_mul(const NagaoDatum& d, const GammaElement& a, const GammaElement& b);
GammaElement gamma_inv(const NagaoDatum& d, const GammaElement& a);
bool in_delta(const NagaoDatum& d, const GammaElement& g);

/// Shortest representative of w·Stab_Δ(x_{i,s}). For i = 0 returns w.
DeltaWord canon_coset(const NagaoDatum& d, const DeltaWord& w, int i, int s);

nlohmann::json word_to_json(const DeltaWord& w);
DeltaWord word_from_json(const nlohmann::json& j);
std::string to_string(const DeltaWord& w);

}  // namespace nagao
