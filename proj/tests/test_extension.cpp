#include <gtest/gtest.h>

#include <random>

#include "nagao/error.hpp"
#include "nagao/extension.hpp"
#include "support.hpp"

using namespace nagao;

namespace {

ErrorCode code_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

// ψ on the star of x₁: fixes x₁ and x₂, swaps the two level-0 neighbours.
TreeMap swap_at_x1(const Tree& t) {
  const auto nb = t.neighbors(ray_vertex(1, 1));  // x₂, then the two level-0 vertices
  TreeMap psi;
  psi.set(nb[0], nb[0]);
  psi.set(ray_vertex(1, 1), ray_vertex(1, 1));
  psi.set(nb[1], nb[2]);
  psi.set(nb[2], nb[1]);
  return psi;
}

bool automorphism_of_ball(const Tree& t, const TruncatedTree& ball, const TreeMap& h) {
  if (h.size() != ball.size() || !h.is_isomorphism(t)) return false;
  // Distances from the image of the centre are preserved.
  const VertexAddress c = h.at(ball.center());
  for (const auto& v : ball.vertices())
    if (t.distance(c, h.at(v)) != t.distance(ball.center(), v)) return false;
  return true;
}

}  // namespace

TEST(TreeMap, InverseComposeAndJson) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 3);
  const DeltaWord w = root_word(d, 2, 1, 1);
  TreeMap h = action_map(t, w, b.vertices());
  EXPECT_TRUE(h.is_isomorphism(t));
  EXPECT_TRUE(h.level_preserving());
  EXPECT_TRUE(compose(h.inverse(), h).is_identity());
  EXPECT_EQ(compose(h.inverse(), h).size(), b.size());
  EXPECT_EQ(TreeMap::from_json(h.to_json()), h);
  EXPECT_EQ(code_of([] { TreeMap::from_json(nlohmann::json::object()); }), ErrorCode::ParseError);

  TreeMap collapse;
  collapse.set(base_vertex(), base_vertex());
  collapse.set(ray_vertex(1, 1), base_vertex());
  EXPECT_FALSE(collapse.injective());
  EXPECT_EQ(code_of([&] { collapse.inverse(); }), ErrorCode::NotIsomorphism);

  TreeMap broken;  // adjacent vertices sent to non-adjacent ones
  broken.set(base_vertex(), base_vertex());
  broken.set(ray_vertex(1, 1), ray_vertex(1, 3));
  EXPECT_FALSE(broken.is_isomorphism(t));
}

TEST(GreedyExtend, IdentityOnRay) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TreeMap psi = identity_map({base_vertex(), ray_vertex(1, 1), ray_vertex(1, 2)});
  TreeMap h = greedy_extend(t, psi, base_vertex(), 4);
  EXPECT_EQ(h.size(), t.ball(base_vertex(), 4).size());
  EXPECT_TRUE(h.is_identity());
}

TEST(GreedyExtend, SwapBelowX1) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 4);
  const TreeMap psi = swap_at_x1(t);
  TreeMap h = greedy_extend(t, psi, base_vertex(), 4);
  EXPECT_TRUE(automorphism_of_ball(t, b, h));
  EXPECT_TRUE(h.level_preserving());
  EXPECT_FALSE(h.is_identity());
  for (const auto& [x, y] : psi.pairs()) EXPECT_EQ(h.at(x), y);
  // Deterministic, and a shuffled run is a different valid extension.
  EXPECT_EQ(greedy_extend(t, psi, base_vertex(), 4), h);
  GreedyOptions opt;
  opt.shuffle_seed = 5;
  TreeMap h2 = greedy_extend(t, psi, base_vertex(), 4, opt);
  EXPECT_TRUE(automorphism_of_ball(t, b, h2));
  EXPECT_TRUE(h2.level_preserving());
}

TEST(GreedyExtend, StaysInsideComponent) {
  NagaoDatum d = builtin("D3");
  Tree t(d);
  GreedyOptions opt;
  opt.max_level = 2;
  TreeMap h = greedy_extend(t, identity_map({base_vertex()}), base_vertex(), 6, opt);
  TruncatedTree b = t.ball(base_vertex(), 6);
  EXPECT_EQ(h.domain(), component(b, base_vertex(), 2).vertices);
}

TEST(GreedyExtend, Errors) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TreeMap up;
  up.set(base_vertex(), ray_vertex(1, 1));
  EXPECT_EQ(code_of([&] { greedy_extend(t, up, base_vertex(), 3); }), ErrorCode::NotLevelPreserving);
  TreeMap gap = identity_map({base_vertex(), ray_vertex(1, 2)});
  EXPECT_EQ(code_of([&] { greedy_extend(t, gap, base_vertex(), 3); }), ErrorCode::NotIsomorphism);
  TreeMap far = identity_map({ray_vertex(1, 5)});
  EXPECT_EQ(code_of([&] { greedy_extend(t, far, base_vertex(), 3); }), ErrorCode::NotInTruncation);
  EXPECT_EQ(code_of([&] { greedy_extend(t, TreeMap{}, base_vertex(), 3); }), ErrorCode::NotIsomorphism);
}

TEST(CheckLi, IdentityAndDelta) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 5);
  for (int i : {1, 2}) {
    LiChecker chk(t, b, i);
    LiCertificate id = chk.check(identity_map(b.vertices()));
    EXPECT_TRUE(id.valid);
    EXPECT_GT(id.condition_b.checked, 0);
    for (const DeltaWord& w : nagao::testing::all_short_words(d, 2, 3)) {
      LiCertificate c = chk.check(action_map(t, w, b.vertices()));
      EXPECT_TRUE(c.valid) << to_string(w) << c.to_json().dump();
    }
  }
}

// A level-preserving automorphism fixing x₁ that swaps two horoball branches
// below a level-2 vertex of HB(x₁): γ_{x₁,x₁} is trivial, so (a) must fail.
TEST(CheckLi, DetectsHoroballPermutation) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 6);
  const VertexAddress z = t.act(root_word(d, 1, 3, 1), ray_vertex(1, 2));
  const auto zn = t.neighbors(z);  // up, then two level-1 children
  TreeMap psi;
  for (const auto& v : b.vertices()) {
    const auto path = t.geodesic(v, z);
    const bool below = path.size() >= 2 && (path[path.size() - 2] == zn[1] || path[path.size() - 2] == zn[2]) &&
                       v != zn[1] && v != zn[2];
    if (!below) psi.set(v, v);
  }
  psi.set(zn[1], zn[2]);
  psi.set(zn[2], zn[1]);
  TreeMap h = greedy_extend(t, psi, base_vertex(), 6);
  ASSERT_EQ(h.size(), b.size());
  LiCertificate c = check_Li(t, b, 1, h);
  EXPECT_FALSE(c.valid);
  EXPECT_GT(c.condition_a.failed, 0);
  EXPECT_FALSE(c.condition_a.counterexample.is_null());
}

TEST(ExtendE, IdentityAndUniqueness) {
  for (const char* name : {"D0", "D3"}) {
    NagaoDatum d = builtin(name);
    Tree t(d);
    TruncatedTree b = t.ball(base_vertex(), 5);
    std::mt19937 rng(9);
    for (int i : {1, 2}) {
      const auto x = base_component(b, i);
      EXPECT_TRUE(extend_E(t, b, i, identity_map(x)).is_identity());
      for (int n = 0; n < 10; ++n) {
        const DeltaWord w = nagao::testing::random_word(d, rng, 3, 3);
        const TreeMap h = action_map(t, w, x);
        const TreeMap e = extend_E(t, b, i, h);
        EXPECT_EQ(e, action_map(t, w, b.vertices())) << to_string(w);
        EXPECT_EQ(extend_E(t, b, i, h, {.reverse_order = true}), e);
        ExtensionEvaluator lazy(t, i, h);
        for (const auto& v : b.vertices()) EXPECT_EQ(lazy(v), e.at(v));
      }
    }
  }
}

TEST(ExtendE, ExtendsNontrivialAutomorphism) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 6);
  GreedyOptions opt;
  opt.max_level = 2;
  const TreeMap g = greedy_extend(t, swap_at_x1(t), base_vertex(), 6, opt);
  const TreeMap e = extend_E(t, b, 2, g);
  EXPECT_TRUE(e.level_preserving());
  EXPECT_TRUE(e.injective());
  for (const auto& [x, y] : g.pairs()) EXPECT_EQ(e.at(x), y);
  EXPECT_TRUE(check_Li(t, b, 2, e).valid);
  EXPECT_EQ(extend_E(t, b, 2, g, {.reverse_order = true}), e);
}

TEST(ExtendE, Errors) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 4);
  TreeMap up;
  up.set(base_vertex(), ray_vertex(1, 1));
  EXPECT_EQ(code_of([&] { extend_E(t, b, 1, up); }), ErrorCode::InputNotLevelPreserving);
  EXPECT_EQ(code_of([&] { extend_E(t, b, 1, identity_map({ray_vertex(1, 2)})); }),
            ErrorCode::InputNotLevelPreserving);
  // Two components at level 1.
  const VertexAddress other = t.act(root_word(d, 1, 2, 1), ray_vertex(1, 1));
  EXPECT_EQ(code_of([&] { extend_E(t, b, 1, identity_map({base_vertex(), other})); }), ErrorCode::NotInGraph);
  // h known only on x₀: propagation needs the rest of X.
  const TreeMap tiny = identity_map({base_vertex()});
  EXPECT_EQ(code_of([&] { extend_E(t, b, 1, tiny); }), ErrorCode::TruncationExceeded);
  const TreeMap partial = extend_E(t, b, 1, tiny, {.allow_partial = true});
  EXPECT_TRUE(partial.contains(base_vertex()));
  EXPECT_LT(partial.size(), b.size());
  ExtensionEvaluator lazy(t, 1, tiny);
  EXPECT_FALSE(lazy.try_eval(ray_vertex(2, 1)).has_value());
  EXPECT_EQ(code_of([&] { lazy(ray_vertex(2, 1)); }), ErrorCode::TruncationExceeded);
}

TEST(HomomorphismProbe, DeltaAndGreedyPairs) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 6);
  const auto y1 = base_component(b, 1);
  const TreeMap id = identity_map(y1);
  RuleResult trivial = homomorphism_probe(t, b, 1, id, id);
  EXPECT_EQ(trivial.failed, 0);
  EXPECT_EQ(trivial.checked, static_cast<long>(b.size()));

  const TreeMap a = action_map(t, root_word(d, 1, 1, 1), y1);
  const TreeMap c = action_map(t, root_word(d, 2, 1, 1), y1);
  RuleResult r = homomorphism_probe(t, b, 1, a, c);
  EXPECT_EQ(r.failed, 0);
  EXPECT_GT(r.checked, 0);

  GreedyOptions opt;
  opt.max_level = 1;
  for (uint32_t seed = 1; seed <= 6; ++seed) {
    opt.shuffle_seed = seed;
    const TreeMap g = greedy_extend(t, identity_map({base_vertex()}), base_vertex(), 6, opt);
    opt.shuffle_seed = seed + 100;
    const TreeMap h = greedy_extend(t, identity_map({base_vertex()}), base_vertex(), 6, opt);
    RuleResult p = homomorphism_probe(t, b, 1, g, h);
    EXPECT_EQ(p.failed, 0) << p.counterexample.dump();
    EXPECT_GT(p.checked, 0);
  }
}

TEST(CommensurationProbe, IdentityAndDelta) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 5);
  const auto y1 = base_component(b, 1);
  std::mt19937 rng(2);
  std::vector<DeltaWord> samples;
  for (int n = 0; n < 8; ++n) samples.push_back(nagao::testing::random_word(d, rng, 3, 3));

  CommensurationResult id = commensuration_probe(t, b, 1, identity_map(y1), samples);
  ASSERT_TRUE(id.passed());
  for (const auto& s : id.samples)
    EXPECT_EQ(s.delta_prime, delta_mul(d, delta_inv(d, s.delta_j), s.delta));

  const DeltaWord d0 = delta_mul(d, root_word(d, 1, 1, 1), root_word(d, 2, 1, 1));  // in Δ₁
  CommensurationResult conj = commensuration_probe(t, b, 1, action_map(t, d0, y1), samples);
  ASSERT_TRUE(conj.passed());
  for (const auto& s : conj.samples) {
    const DeltaWord expect = delta_mul(
        d, delta_inv(d, d0), delta_mul(d, delta_inv(d, s.delta_j), delta_mul(d, s.delta, d0)));
    EXPECT_EQ(s.delta_prime, expect);
  }
  EXPECT_TRUE(conj.to_json()["passed"].get<bool>());
}

TEST(Density, LevelSelection) {
  EXPECT_EQ(select_level(builtin("D0")), 2);
  EXPECT_EQ(select_level(builtin("D1")), 2);
  EXPECT_EQ(select_level(builtin("D2")), 2);
  EXPECT_EQ(select_level(builtin("D3")), 3);
  EXPECT_EQ(component_degrees(builtin("D0"), 2), (std::vector<int>{3, 3, 2}));
  EXPECT_EQ(component_degrees(builtin("D3"), 3), (std::vector<int>{3, 3, 4, 2}));
}

TEST(Density, IdentityAndSwap) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 6);
  PipelineOptions opt;
  opt.samples = 4;

  std::vector<VertexAddress> star = t.neighbors(base_vertex());
  star.push_back(base_vertex());
  PipelineResult id = density_pipeline(t, b, identity_map(star), opt);
  EXPECT_EQ(id.i, 2);
  EXPECT_TRUE(id.extension.is_identity());
  EXPECT_TRUE(id.report.passed()) << id.report.summary();

  const TreeMap phi = swap_at_x1(t).restrict_to(t.neighbors(ray_vertex(1, 1)));
  TreeMap phi1 = phi;
  phi1.set(ray_vertex(1, 1), ray_vertex(1, 1));
  PipelineResult sw = density_pipeline(t, b, phi1, opt);
  EXPECT_EQ(sw.i, 2);
  EXPECT_TRUE(sw.certificate.valid);
  EXPECT_TRUE(sw.report.passed()) << sw.report.summary();
  EXPECT_FALSE(sw.extension.is_identity());
  for (const auto& [x, y] : phi1.pairs()) EXPECT_EQ(sw.extension.at(x), y);
}

TEST(Density, D3SelectsLevelThree) {
  NagaoDatum d = builtin("D3");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 5);
  PipelineOptions opt;
  opt.samples = 2;
  PipelineResult r = density_pipeline(t, b, identity_map({base_vertex(), ray_vertex(1, 1)}), opt);
  EXPECT_EQ(r.i, 3);
  EXPECT_TRUE(r.certificate.valid);
}

TEST(Density, Errors) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TruncatedTree b = t.ball(base_vertex(), 4);
  TreeMap up;
  up.set(base_vertex(), ray_vertex(1, 2));
  EXPECT_EQ(code_of([&] { density_pipeline(t, b, up); }), ErrorCode::NotLevelPreserving);
  TreeMap escape = identity_map({ray_vertex(1, 5)});
  EXPECT_EQ(code_of([&] { density_pipeline(t, b, escape); }), ErrorCode::CannotExtendInTruncation);
}

TEST(TypePreserving, IdentityAndDisjointBalls) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  const VertexAddress z1 = base_vertex();
  std::vector<VertexAddress> s1 = t.ball(z1, 1).vertices();
  TreeMap id = extend_type_preserving(t, identity_map(s1), z1, 1, 4);
  EXPECT_TRUE(id.is_identity() || id.is_isomorphism(t));
  for (const auto& v : s1) EXPECT_EQ(id.at(v), v);

  // B₁(x₀) onto B₁(z₂) for a level-2 vertex z₂ far from x₀.
  const TruncatedTree big = t.ball(z1, 6);
  VertexAddress z2 = z1;
  for (const auto& v : big.vertices())
    if (v.i == 2 && t.distance(z1, v) == 6) {
      z2 = v;
      break;
    }
  ASSERT_EQ(t.distance(z1, z2), 6);
  const auto n1 = t.neighbors(z1), n2 = t.neighbors(z2);
  TreeMap phi;
  phi.set(z1, z2);
  for (size_t k = 0; k < 3; ++k) phi.set(n1[k], n2[2 - k]);
  TreeMap f = extend_type_preserving(t, phi, z1, 1, 4);
  EXPECT_EQ(f.size(), t.ball(z1, 4).size());
  EXPECT_TRUE(f.is_isomorphism(t));
  EXPECT_TRUE(f.type_preserving());
  for (const auto& [x, y] : phi.pairs()) EXPECT_EQ(f.at(x), y);
}

TEST(TypePreserving, Errors) {
  NagaoDatum d = builtin("D0");
  Tree t(d);
  TreeMap odd;
  odd.set(base_vertex(), ray_vertex(1, 1));
  EXPECT_EQ(code_of([&] { extend_type_preserving(t, odd, base_vertex(), 0, 2); }), ErrorCode::TypeMismatch);
  NagaoDatum d3 = builtin("D3");
  Tree t3(d3);
  EXPECT_EQ(code_of([&] { extend_type_preserving(t3, identity_map({base_vertex()}), base_vertex(), 0, 2); }),
            ErrorCode::NotBiregular);
  EXPECT_EQ(code_of([&] {
              extend_type_preserving(t, identity_map(t.ball(base_vertex(), 2).vertices()), base_vertex(), 2, 1);
            }),
            ErrorCode::CannotTransportInTruncation);
}
