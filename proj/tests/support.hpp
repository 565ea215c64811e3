#pragma once

// Seeded generators shared by the property tests.

#include <random>
#include <vector>

#include "nagao/tree.hpp"

namespace nagao::testing {

inline DeltaWord random_word(const NagaoDatum& d, std::mt19937& rng, int max_syllables,
                             int max_support) {
  std::uniform_int_distribution<int> len(0, max_syllables);
  std::uniform_int_distribution<int> pick_s(1, d.k());
  std::uniform_int_distribution<int> pick_j(1, max_support);
  DeltaWord w;
  const int n = len(rng);
  int prev = 0;
  while (static_cast<int>(w.length()) < n) {
    int s = pick_s(rng);
    if (s == prev) continue;
    Tuple t;
    const int entries = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int e = 0; e < entries; ++e) {
      const int j = pick_j(rng);
      const int order = d.root_group(j).order();
      const int u = std::uniform_int_distribution<int>(1, order - 1)(rng);
      t = tuple_mul(d, t, tuple_single(d, j, u));
    }
    if (t.empty()) continue;
    w.syllables.push_back(Syllable{s, t});
    prev = s;
  }
  return w;
}

inline GammaElement random_gamma(const NagaoDatum& d, std::mt19937& rng, int max_syllables,
                                 int max_support) {
  std::uniform_int_distribution<int> g(0, d.gamma0().order() - 1);
  const int g0 = g(rng);
  return gamma_of(g0, random_word(d, rng, max_syllables, max_support));
}

/// Every word with at most n syllables whose tuples are single entries at
/// positions ≤ max_support.
inline std::vector<DeltaWord> all_short_words(const NagaoDatum& d, int n, int max_support) {
  std::vector<DeltaWord> layer{DeltaWord{}}, out{DeltaWord{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<DeltaWord> next;
    for (const DeltaWord& w : layer) {
      for (int s = 1; s <= d.k(); ++s) {
        if (!w.empty() && w.syllables.back().s == s) continue;
        for (int j = 1; j <= max_support; ++j) {
          for (int u = 0; u < d.root_group(j).order(); ++u) {
            if (u == d.root_group(j).identity()) continue;
            DeltaWord x = w;
            x.syllables.push_back(Syllable{s, tuple_single(d, j, u)});
            next.push_back(std::move(x));
          }
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace nagao::testing
