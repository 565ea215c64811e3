#include "nagao/report.hpp"

#include <sstream>

namespace nagao {

RuleResult& Report::rule(const std::string& module, const std::string& suite,
                         const std::string& name) {
  return rules_[Key{module, suite, name}];
}

void Report::merge(const Report& other) {
  for (const auto& [key, r] : other.rules_) {
    RuleResult& mine = rules_[key];
    if (mine.failed == 0 && r.failed > 0) mine.counterexample = r.counterexample;
    mine.checked += r.checked;
    mine.failed += r.failed;
    mine.skipped += r.skipped;
    if (!r.info.is_null()) mine.info = r.info;
  }
}

bool Report::passed() const { return failures() == 0; }

long Report::failures() const {
  long n = 0;
  for (const auto& [key, r] : rules_) n += r.failed;
  return n;
}

nlohmann::json Report::to_json() const {
  nlohmann::json out;
  out["passed"] = passed();
  out["rules"] = nlohmann::json::array();
  for (const auto& [key, r] : rules_) {
    nlohmann::json j{{"module", std::get<0>(key)},
                     {"suite", std::get<1>(key)},
                     {"rule", std::get<2>(key)},
                     {"checked", r.checked},
                     {"failed", r.failed},
                     {"skipped", r.skipped},
                     {"pass", r.failed == 0}};
    if (r.failed) j["counterexample"] = r.counterexample;
    if (!r.info.is_null()) j["info"] = r.info;
    out["rules"].push_back(std::move(j));
  }
  return out;
}

std::string Report::summary() const {
  std::ostringstream out;
  for (const auto& [key, r] : rules_) {
    out << (r.failed ? "FAIL " : "ok   ") << std::get<0>(key) << '/' << std::get<1>(key) << '/'
        << std::get<2>(key) << "  checked=" << r.checked << " failed=" << r.failed;
    if (r.skipped) out << " skipped=" << r.skipped;
    out << '\n';
  }
  return out.str();
}

}  // namespace nagao
