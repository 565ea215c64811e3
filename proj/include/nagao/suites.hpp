#pragma once

// Named invariant suites shared by the command-line tool and the acceptance
// runner. Each returns a Report keyed by (module, suite, rule).

#include <cstdint>
#include <string>
#include <vector>

#include "nagao/extension.hpp"
#include "nagao/report.hpp"

namespace nagao {

struct SuiteOptions {
  int radius = 6;
  /// Highest level examined; 0 selects the suite default.
  int level = 0;
  /// Sample count; 0 selects the suite default (exhaustive where supported).
  int samples = 0;
  uint32_t seed = 1;
};

/// degrees, transitivity, horoball, transport, li, extension, probes,
/// density, codist, biregular.
std::vector<std::string> suite_names();

/// Throws UnknownName.
Report run_suite(const std::string& name, const NagaoDatum& d, const SuiteOptions& opt = {});

/// Interior degrees follow the level law; info holds the degree histogram.
Report suite_degrees(const Tree& t, int radius);
/// |M_{i,j}| = q_i⋯q_j and U_{i,j} acts freely and transitively on it, for
/// 1 ≤ i ≤ j ≤ max_level.
Report suite_transitivity(const Tree& t, int max_level);
/// Every u ∈ U_i fixes HB(x_{i,s}) ∩ ball pointwise, on every ray s.
Report suite_horoball(const Tree& t, int radius, int max_level);
/// Transporter calculus at each level 1..max_level; samples = 0 is exhaustive.
Report suite_transport(const Tree& t, int radius, int max_level, int samples, uint32_t seed);
/// Every Δ-word with at most 3 syllables of support ≤ 3 lies in L_i, for
/// i = 1..max_level.
Report suite_li(const Tree& t, int radius, int max_level);
/// E(identity) = identity, E(δ|X) = δ for sampled δ, and both search orders
/// agree.
Report suite_extension(const Tree& t, int radius, int i, int samples, uint32_t seed);
/// Homomorphism probe on pairs of greedy automorphisms of Y_i, and the
/// commensuration probe on sampled words.
Report suite_probes(const Tree& t, int radius, int i, int pairs, int samples, uint32_t seed);
/// The density pipeline on every level-preserving isomorphism between the
/// level-≤-2 stars of Y₂ vertices within distance 2 of x₀.
Report suite_density(const Tree& t, int radius, int probe_samples, uint32_t seed);
/// One-sided codistance axioms and the level re-check.
Report suite_codist(const Tree& t, int radius);
/// Records biregularity; when not biregular, levels are recovered from
/// degrees on the radius ball inside a ball of twice the radius.
Report suite_biregular(const Tree& t, int radius);

/// The input datum with θ_h on U₂ shifted by one, h the last element of H₀.
NagaoDatum inject_action_fault(const NagaoDatum& d);

}  // namespace nagao
