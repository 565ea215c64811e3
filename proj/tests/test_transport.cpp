#include <gtest/gtest.h>

#include <random>

#include "nagao/error.hpp"
#include "nagao/transport.hpp"
#include "support.hpp"

using namespace nagao;

TEST(DeltaXY, Examples) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  const VertexAddress x1 = ray_vertex(1, 1);
  EXPECT_TRUE(delta_xy(t, x1, x1).empty());
  const DeltaWord u = root_word(d, 1, 2, 1);
  EXPECT_EQ(delta_xy(t, x1, t.act(u, x1)), u);
  // Uniqueness: no other word in W₂ with ≤ 2 syllables moves x₁ there.
  for (const auto& w : nagao::testing::all_short_words(d, 2, 4)) {
    bool in_w2 = w.length() <= 1;
    if (!w.empty()) in_w2 &= w.syllables[0].s == 1 && w.syllables[0].t.entries.front().first >= 2;
    if (in_w2 && w != u) EXPECT_NE(t.act(w, x1), t.act(u, x1));
  }
}

TEST(DeltaXY, Errors) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  auto code = [&](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([&] { delta_xy(t, ray_vertex(1, 1), ray_vertex(2, 1)); }),
            ErrorCode::NotSameHorosphere);
  EXPECT_EQ(code([&] { delta_xy(t, base_vertex(), base_vertex()); }), ErrorCode::LevelZeroBase);
  TruncatedTree b = t.ball(base_vertex(), 1);
  EXPECT_EQ(code([&] { delta_xy(t, b, ray_vertex(1, 2), ray_vertex(1, 2)); }),
            ErrorCode::NotInTruncation);
  EXPECT_EQ(code([&] { gamma_xy(t, ray_vertex(1, 1), ray_vertex(1, 2)); }), ErrorCode::LevelMismatch);
}

TEST(DeltaXY, InverseOnSamples) {
  NagaoDatum d = builtin("D3");
  Tree t(d);
  std::mt19937 rng(4);
  int checked = 0;
  while (checked < 50) {
    VertexAddress x = t.act(nagao::testing::random_word(d, rng, 3, 4), ray_vertex(2, 2));
    DeltaWord up = syllable_word(x.s, tuple_single(d, 3 + static_cast<int>(rng() % 3), 1));
    VertexAddress y = t.act(delta_mul(d, x.w, delta_mul(d, up, delta_inv(d, x.w))), x);
    EXPECT_EQ(delta_xy(t, y, x), delta_inv(d, delta_xy(t, x, y)));
    ++checked;
  }
}

TEST(GammaXY, IdentityAndInDelta) {
  NagaoDatum d = builtin("D1");
  Tree t(d);
  const VertexAddress x = t.act(root_word(d, 2, 1, 1), ray_vertex(3, 2));
  EXPECT_EQ(gamma_xy(t, x, x), gamma_identity(d));
  const VertexAddress y = t.act(root_word(d, 1, 4, 1), x);
  EXPECT_TRUE(in_delta(d, gamma_xy(t, x, y)));
  EXPECT_FALSE(in_delta(d, gamma_xy(t, ray_vertex(1, 2), ray_vertex(2, 2))));
}

TEST(Tau, IdentityAndAdjacent) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 5);
  ComponentGraph g(b, 1);
  for (int a = 0; a < g.size(); ++a) {
    EXPECT_TRUE(tau(t, g, a, a).empty());
    for (int c : g.neighbors(a)) {
      Witness w = g.witness(a, c);
      EXPECT_EQ(tau(t, g, a, c), delta_xy(t, w.x, w.y));
    }
  }
  EXPECT_THROW(tau_along(t, g, {0, 0}), Error);
}

TEST(VerifyTransport, ExhaustiveD0) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 5);
  for (int i : {1, 2}) {
    Report rep = verify_transport(t, b, i);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    for (const auto& [key, r] : rep.rules()) EXPECT_GT(r.checked, 0) << std::get<2>(key);
  }
}

TEST(VerifyTransport, SampledD2) {
  NagaoDatum d = builtin("D2");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 4);
  TransportOptions opt;
  opt.exhaustive = false;
  opt.samples = 200;
  opt.seed = 17;
  for (int i : {1, 2}) {
    Report rep = verify_transport(t, b, i, opt);
    EXPECT_TRUE(rep.passed()) << rep.summary();
  }
}

TEST(VerifyTransport, DetectsCorruptedAction) {
  NagaoDatum d = builtin("D1").with_action_override(2, 2, {1, 0});
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 4);
  Report rep = verify_transport(t, b, 1);
  EXPECT_FALSE(rep.passed());
  bool has_witness = false;
  for (const auto& [key, r] : rep.rules()) has_witness |= r.failed > 0 && !r.counterexample.is_null();
  EXPECT_TRUE(has_witness);
}

TEST(VerifyTransport, Deterministic) {
  NagaoDatum d = builtin("D2");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 3);
  TransportOptions opt;
  opt.exhaustive = false;
  opt.samples = 50;
  EXPECT_EQ(verify_transport(t, b, 1, opt).to_json(), verify_transport(t, b, 1, opt).to_json());
}
