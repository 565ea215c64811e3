#include <gtest/gtest.h>

#include <set>

#include "nagao/datum.hpp"
#include "nagao/error.hpp"

using namespace nagao;

namespace {

ErrorCode code_of(const RawDatum& raw) {
  try {
    validate_datum(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "datum accepted";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(Builtins, IndicesAndDegrees) {
  NagaoDatum d0 = builtin("D0");
  EXPECT_EQ(d0.k(), 3);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(d0.q(i), 2);

  NagaoDatum d1 = builtin("D1");
  EXPECT_EQ(d1.k(), 3);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(d1.degree(i), 3);

  NagaoDatum d2 = builtin("D2");
  EXPECT_EQ(d2.k(), 7);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(d2.q(i), 6);
    EXPECT_EQ(d2.degree(i), 7);
  }

  NagaoDatum d3 = builtin("D3");
  EXPECT_EQ(d3.degree(0), 3);
  EXPECT_EQ(d3.degree(1), 3);
  EXPECT_EQ(d3.degree(2), 4);
  EXPECT_EQ(d3.degree(3), 3);
  EXPECT_EQ(d3.degree(4), 4);
}

TEST(Builtins, Biregularity) {
  EXPECT_TRUE(builtin("D0").profile().biregular);
  EXPECT_TRUE(builtin("D1").profile().biregular);
  EXPECT_TRUE(builtin("D2").profile().biregular);
  EXPECT_FALSE(builtin("D3").profile().biregular);
  EXPECT_THROW(builtin("D9"), Error);
}

TEST(Validate, Rejections) {
  RawDatum raw = builtin_raw("D0");
  raw.gamma0 = cyclic_group(2).table();
  EXPECT_EQ(code_of(raw), ErrorCode::IndexTooSmall);

  raw = builtin_raw("D0");
  raw.period = {RawDatum::Root{cyclic_group(1).table(), std::nullopt}};
  EXPECT_EQ(code_of(raw), ErrorCode::RootGroupTooSmall);

  raw = builtin_raw("D0");
  raw.period.clear();
  EXPECT_EQ(code_of(raw), ErrorCode::BadSchedule);

  // S3 with H₀ = ⟨(0 1)⟩ acting on C4 by a non-automorphism.
  raw = builtin_raw("D1");
  GroupAction bad;
  bad.images[0] = {0, 1, 2, 3};
  bad.images[2] = {0, 2, 1, 3};
  raw.period = {RawDatum::Root{cyclic_group(4).table(), bad}};
  EXPECT_EQ(code_of(raw), ErrorCode::BadAction);

  raw = builtin_raw("D1");
  raw.h0 = {0, 3};  // a 3-cycle without its square
  EXPECT_EQ(code_of(raw), ErrorCode::NotSubgroup);
}

TEST(Validate, JsonRoundTrip) {
  for (const std::string& name : builtin_names()) {
    RawDatum raw = builtin_raw(name);
    nlohmann::json j = raw_datum_to_json(raw);
    NagaoDatum d = validate_datum(raw_datum_from_json(j));
    EXPECT_EQ(d.k(), builtin(name).k());
    EXPECT_EQ(d.profile().q, builtin(name).profile().q);
  }
  EXPECT_THROW(raw_datum_from_json(nlohmann::json{{"h0", {0}}}), Error);
}

TEST(GammaI, Orders) {
  EXPECT_EQ(gamma_i(builtin("D0"), 2).order(), 4);
  EXPECT_EQ(gamma_i(builtin("D1"), 1).order(), 4);
  EXPECT_EQ(gamma_i(builtin("D2"), 2).order(), 216);

  // D0 at i = 2 is C2 × C2: every element squares to the identity.
  FiniteGroup g = gamma_i(builtin("D0"), 2).to_group();
  for (int a = 0; a < g.order(); ++a) EXPECT_EQ(g.mul(a, a), g.identity());
}

// Unique factorisation h·u₁⋯u_i and pairwise commuting root groups.
TEST(GammaI, FactorisationAndCommutation) {
  for (const std::string& name : builtin_names()) {
    NagaoDatum d = builtin(name);
    for (int i = 1; i <= 4; ++i) {
      SemidirectProduct g(d, i);
      if (g.order() > 20000) continue;
      std::set<long> products;
      for (long code = 0; code < g.order(); ++code) {
        auto [hi, u] = g.decode(code);
        long x = g.embed_h0(d.h0().members()[hi]);
        for (int j = 1; j <= i; ++j) x = g.mul(x, g.embed_root(j, u[j - 1]));
        EXPECT_EQ(x, code);
        products.insert(x);
      }
      EXPECT_EQ(static_cast<long>(products.size()), g.order());
      for (int j = 1; j <= i; ++j)
        for (int jp = j + 1; jp <= i; ++jp)
          for (int a = 0; a < d.root_group(j).order(); ++a)
            for (int b = 0; b < d.root_group(jp).order(); ++b)
              EXPECT_EQ(g.mul(g.embed_root(j, a), g.embed_root(jp, b)),
                        g.mul(g.embed_root(jp, b), g.embed_root(j, a)));
    }
  }
}

TEST(GammaI, SemidirectIsAGroup) {
  FiniteGroup g = gamma_i(builtin("D1"), 2).to_group();
  EXPECT_EQ(g.order(), 8);
  NagaoDatum d2 = builtin("D2");
  SemidirectProduct sp(d2, 1);
  for (long a = 0; a < sp.order(); ++a) EXPECT_EQ(sp.mul(a, sp.inv(a)), sp.identity());
}
