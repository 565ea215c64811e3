#include <gtest/gtest.h>

#include <random>

#include "nagao/error.hpp"
#include "nagao/tree.hpp"
#include "support.hpp"

using namespace nagao;
using nagao::testing::all_short_words;
using nagao::testing::random_gamma;
using nagao::testing::random_word;

TEST(DeltaMul, IdentityAndCancellation) {
  NagaoDatum d = builtin("D0");
  DeltaWord u = root_word(d, 1, 1, 1);
  EXPECT_EQ(delta_mul(d, DeltaWord{}, u), u);
  EXPECT_TRUE(delta_mul(d, u, delta_inv(d, u)).empty());
}

TEST(DeltaMul, CascadingReduction) {
  NagaoDatum d = builtin("D0");
  DeltaWord a = delta_mul(d, root_word(d, 1, 1, 1), root_word(d, 2, 1, 1));
  DeltaWord b = delta_mul(d, root_word(d, 2, 1, 1), root_word(d, 1, 1, 1));
  EXPECT_EQ(a.length(), 2u);
  EXPECT_TRUE(delta_mul(d, a, b).empty());
  // The same cascade seen through the action on x₀.
  Tree t(d);
  EXPECT_EQ(t.act(a, t.act(b, base_vertex())), base_vertex());
}

TEST(DeltaInv, Examples) {
  NagaoDatum d = builtin("D3");
  EXPECT_TRUE(delta_inv(d, DeltaWord{}).empty());
  DeltaWord s = root_word(d, 2, 2, 1);
  EXPECT_EQ(delta_inv(d, s), root_word(d, 2, 2, 2));
  std::mt19937 rng(7);
  for (int n = 0; n < 200; ++n) {
    DeltaWord w = random_word(d, rng, 3, 4);
    EXPECT_TRUE(delta_mul(d, w, delta_inv(d, w)).empty());
    EXPECT_TRUE(delta_mul(d, delta_inv(d, w), w).empty());
  }
}

TEST(DeltaMul, AssociativeAndNormalOnBoundedWords) {
  NagaoDatum d = builtin("D0");
  std::vector<DeltaWord> words = all_short_words(d, 2, 2);
  std::mt19937 rng(11);
  for (int n = 0; n < 400; ++n) words.push_back(random_word(d, rng, 4, 3));
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  for (int n = 0; n < 3000; ++n) {
    const DeltaWord& a = words[pick(rng)];
    const DeltaWord& b = words[pick(rng)];
    const DeltaWord& c = words[pick(rng)];
    DeltaWord left = delta_mul(d, delta_mul(d, a, b), c);
    EXPECT_EQ(left, delta_mul(d, a, delta_mul(d, b, c)));
    EXPECT_TRUE(is_normal(d, left));
  }
}

TEST(Gamma0Conj, IdentityAndCosetPermutation) {
  NagaoDatum d = builtin("D0");
  DeltaWord w = root_word(d, 1, 3, 1);
  EXPECT_EQ(gamma0_conj(d, 0, w), w);
  // In C3 with trivial H₀, γ_s is element s-1 and the generator shifts s by one.
  for (int s = 1; s <= 3; ++s) {
    DeltaWord img = gamma0_conj(d, 1, root_word(d, s, 2, 1));
    ASSERT_EQ(img.length(), 1u);
    EXPECT_EQ(img.syllables[0].s, s % 3 + 1);
  }
}

TEST(Gamma0Conj, H0FixesFirstRay) {
  NagaoDatum d = builtin("D1");
  for (int h : d.h0().members()) {
    for (int j = 1; j <= 3; ++j) {
      DeltaWord w = root_word(d, 1, j, 1);
      DeltaWord img = gamma0_conj(d, h, w);
      EXPECT_EQ(img, w);
    }
  }
}

TEST(Gamma0Conj, IsAnAction) {
  for (const char* name : {"D1", "D2"}) {
    NagaoDatum d = builtin(name);
    std::mt19937 rng(3);
    const int n = d.gamma0().order();
    for (int rep = 0; rep < 100; ++rep) {
      DeltaWord w = random_word(d, rng, 3, 3);
      const int g = static_cast<int>(rng() % n), gp = static_cast<int>(rng() % n);
      EXPECT_EQ(gamma0_conj(d, d.gamma0().mul(g, gp), w),
                gamma0_conj(d, g, gamma0_conj(d, gp, w)));
      // Conjugation is a homomorphism of Δ.
      DeltaWord v = random_word(d, rng, 3, 3);
      EXPECT_EQ(gamma0_conj(d, g, delta_mul(d, w, v)),
                delta_mul(d, gamma0_conj(d, g, w), gamma0_conj(d, g, v)));
    }
  }
}

TEST(GammaMul, Examples) {
  NagaoDatum d = builtin("D1");
  DeltaWord w = root_word(d, 2, 1, 1), v = root_word(d, 3, 2, 1);
  EXPECT_EQ(gamma_mul(d, gamma_of(d, w), gamma_of(d, v)), gamma_of(d, delta_mul(d, w, v)));
  for (int g = 0; g < d.gamma0().order(); ++g) {
    EXPECT_EQ(gamma_mul(d, gamma_of(g, {}), gamma_of(d.gamma0().inv(g), {})), gamma_identity(d));
  }
}

TEST(GammaMul, AssociativityAndInverse) {
  NagaoDatum d = builtin("D1");
  std::mt19937 rng(5);
  for (int n = 0; n < 100; ++n) {
    GammaElement a = random_gamma(d, rng, 3, 3), b = random_gamma(d, rng, 3, 3),
                 c = random_gamma(d, rng, 3, 3);
    EXPECT_EQ(gamma_mul(d, gamma_mul(d, a, b), c), gamma_mul(d, a, gamma_mul(d, b, c)));
    EXPECT_EQ(gamma_mul(d, a, gamma_inv(d, a)), gamma_identity(d));
  }
}

TEST(CanonCoset, Examples) {
  NagaoDatum d = builtin("D0");
  EXPECT_TRUE(canon_coset(d, {}, 3, 1).empty());

  Tuple t = tuple_mul(d, tuple_single(d, 1, 1), tuple_single(d, 4, 1));
  DeltaWord w = syllable_word(1, t);
  DeltaWord c = canon_coset(d, w, 2, 1);
  EXPECT_EQ(c, root_word(d, 1, 4, 1));
  Tree tree(d);
  EXPECT_EQ(tree.act(w, ray_vertex(1, 2)), tree.act(c, ray_vertex(1, 2)));

  DeltaWord ends_in_2 = delta_mul(d, root_word(d, 1, 1, 1), root_word(d, 2, 1, 1));
  EXPECT_EQ(canon_coset(d, ends_in_2, 2, 1), ends_in_2);
}

TEST(CanonCoset, IdempotentAndStabilizerWitness) {
  NagaoDatum d = builtin("D3");
  std::mt19937 rng(9);
  for (int n = 0; n < 300; ++n) {
    DeltaWord w = random_word(d, rng, 3, 5);
    const int i = static_cast<int>(rng() % 5) + 1, s = static_cast<int>(rng() % d.k()) + 1;
    DeltaWord c = canon_coset(d, w, i, s);
    EXPECT_EQ(canon_coset(d, c, i, s), c);
    // c⁻¹w lies in U_{1,s} × … × U_{i,s}: one syllable at s with support ≤ i.
    DeltaWord stab = delta_mul(d, delta_inv(d, c), w);
    if (!stab.empty()) {
      ASSERT_EQ(stab.length(), 1u);
      EXPECT_EQ(stab.syllables[0].s, s);
      EXPECT_LE(stab.syllables[0].t.max_index(), i);
    }
  }
}

// Γ₀ ∩ Δ = 1: non-empty words move x₀.
TEST(Levi, NonEmptyWordsMoveBase) {
  NagaoDatum d = builtin("D1");
  Tree t(d);
  for (const DeltaWord& w : all_short_words(d, 3, 2)) {
    if (w.empty()) continue;
    EXPECT_NE(t.act(w, base_vertex()), base_vertex());
  }
}

TEST(WordJson, RoundTrip) {
  NagaoDatum d = builtin("D3");
  std::mt19937 rng(1);
  for (int n = 0; n < 50; ++n) {
    DeltaWord w = random_word(d, rng, 4, 6);
    EXPECT_EQ(word_from_json(word_to_json(w)), w);
  }
  EXPECT_THROW(word_from_json(nlohmann::json::parse(R"([{"s":1}])")), Error);
}
