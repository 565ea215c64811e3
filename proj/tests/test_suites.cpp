#include <gtest/gtest.h>

#include "nagao/error.hpp"
#include "nagao/suites.hpp"

using namespace nagao;

TEST(Suites, AllPassOnSmallBalls) {
  SuiteOptions opt;
  opt.radius = 4;
  opt.samples = 5;
  for (const std::string& name : suite_names()) {
    if (name == "density") continue;  // covered by the acceptance runner
    for (const char* datum : {"D0", "D3"}) {
      const Report rep = run_suite(name, builtin(datum), opt);
      EXPECT_TRUE(rep.passed()) << name << " " << datum << "\n" << rep.summary();
      long checked = 0;
      for (const auto& [key, r] : rep.rules()) checked += r.checked;
      EXPECT_GT(checked, 0) << name << " " << datum;
    }
  }
}

TEST(Suites, DegreesOfD2AreSeven) {
  SuiteOptions opt;
  opt.radius = 4;
  const Report rep = run_suite("degrees", builtin("D2"), opt);
  ASSERT_TRUE(rep.passed());
  const auto& info = rep.rules().begin()->second.info;
  EXPECT_EQ(info["degree_histogram"].size(), 1u);
  EXPECT_TRUE(info["degree_histogram"].contains("7"));
}

TEST(Suites, FaultIsDetected) {
  SuiteOptions opt;
  opt.radius = 4;
  for (const char* datum : {"D0", "D1"}) {
    const Report rep = run_suite("transport", inject_action_fault(builtin(datum)), opt);
    EXPECT_FALSE(rep.passed()) << datum;
  }
}

TEST(Suites, Deterministic) {
  SuiteOptions opt;
  opt.radius = 4;
  opt.samples = 4;
  EXPECT_EQ(run_suite("probes", builtin("D0"), opt).to_json().dump(),
            run_suite("probes", builtin("D0"), opt).to_json().dump());
}

TEST(Suites, UnknownName) {
  EXPECT_THROW(run_suite("nope", builtin("D0")), Error);
}
