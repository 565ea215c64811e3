#pragma once

// Per-rule verification summary shared by all suites: how many instances
// were checked, how many failed, and the first counterexample.

#include <map>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

namespace nagao {

struct RuleResult {
  long checked = 0;
  long failed = 0;
  long skipped = 0;  // instances that left the truncation
  nlohmann::json counterexample;  // null until the first failure
  nlohmann::json info;            // rule-specific extras
};

class Report {
 public:
  using Key = std::tuple<std::string, std::string, std::string>;  // module, suite, rule

  RuleResult& rule(const std::string& module, const std::string& suite, const std::string& name);

  /// Records one instance; the witness is only built on the first failure.
  template <class Witness>
  bool check(RuleResult& r, bool ok, Witness&& witness) {
    ++r.checked;
    if (!ok) {
      if (r.failed++ == 0) r.counterexample = witness();
    }
    return ok;
  }
  bool check(RuleResult& r, bool ok) {
    return check(r, ok, [] { return nlohmann::json("no witness recorded"); });
  }

  void merge(const Report& other);
  bool passed() const;
  long failures() const;
  const std::map<Key, RuleResult>& rules() const { return rules_; }

  nlohmann::json to_json() const;
  /// One line per rule.
  std::string summary() const;

 private:
  std::map<Key, RuleResult> rules_;
};

}  // namespace nagao
