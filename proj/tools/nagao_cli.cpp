// Batch front end: validate data, export balls, run invariant suites, extend
// partial isomorphisms and export codistance tables.
//
// Exit codes: 0 pass, 1 probe or suite failure, 2 invalid input,
// 3 truncation limit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nagao/error.hpp"
#include "nagao/suites.hpp"
#include "nagao/twincodist.hpp"

using namespace nagao;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInvalid = 2, kTruncation = 3 };

struct RunConfig {
  std::string datum = "D0";
  int radius = 6;
  int level = 0;
  uint32_t seed = 1;
  int samples = 0;
  std::string out;
  std::string format = "json";
  std::vector<std::string> suites;
  std::string phi_file;
  bool fault = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

NagaoDatum load_datum(const RunConfig& cfg) {
  for (const auto& name : builtin_names())
    if (cfg.datum == name) return builtin(name);
  return validate_datum(raw_datum_from_json(read_json_file(cfg.datum)));
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInTruncation:
    case ErrorCode::TruncationExceeded:
    case ErrorCode::CannotExtendInTruncation:
    case ErrorCode::CannotTransportInTruncation:
      return kTruncation;
    default:
      return kInvalid;
  }
}

// Writes to <out>/<stem>.<ext> when --out is set, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& stem, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::filesystem::create_directories(cfg.out);
  const std::string ext = cfg.format == "dot" && stem == "tree" ? ".dot" : ".json";
  std::ofstream(std::filesystem::path(cfg.out) / (stem + ext)) << text << '\n';
}

void emit(const RunConfig& cfg, const std::string& stem, const json& j) { emit(cfg, stem, j.dump(2)); }

int cmd_validate(const RunConfig& cfg) {
  const NagaoDatum d = load_datum(cfg);
  const LevelProfile p = d.profile();
  emit(cfg, "validate",
       json{{"datum", d.name()}, {"valid", true}, {"k", p.k}, {"q", p.q}, {"biregular", p.biregular}});
  return kPass;
}

int cmd_tree(const RunConfig& cfg) {
  const NagaoDatum d = load_datum(cfg);
  const Tree t(d);
  const TruncatedTree b = t.ball(base_vertex(), cfg.radius);
  if (cfg.format == "dot")
    emit(cfg, "tree", b.to_dot());
  else
    emit(cfg, "tree", b.to_json());
  return kPass;
}

int cmd_suite(const RunConfig& cfg) {
  NagaoDatum d = load_datum(cfg);
  if (cfg.fault) d = inject_action_fault(d);
  SuiteOptions opt;
  opt.radius = cfg.radius;
  opt.level = cfg.level;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  const std::vector<std::string> names = cfg.suites.empty() ? suite_names() : cfg.suites;
  Report rep;
  for (const auto& name : names) rep.merge(run_suite(name, d, opt));
  std::cerr << rep.summary();
  emit(cfg, "suite", json{{"datum", d.name()}, {"passed", rep.passed()}, {"report", rep.to_json()}});
  return rep.passed() ? kPass : kFail;
}

int cmd_extend(const RunConfig& cfg) {
  const NagaoDatum d = load_datum(cfg);
  const Tree t(d);
  const TreeMap phi = TreeMap::from_json(read_json_file(cfg.phi_file));
  for (const auto& [x, y] : phi.pairs()) {
    t.require_canonical(x);
    t.require_canonical(y);
  }
  const TruncatedTree b = t.ball(base_vertex(), cfg.radius);
  PipelineOptions opt;
  if (cfg.samples > 0) opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  const PipelineResult r = density_pipeline(t, b, phi, opt);
  std::cerr << r.report.summary();
  emit(cfg, "extend", r.to_json());
  return r.certificate.valid && r.report.passed() ? kPass : kFail;
}

int cmd_codist(const RunConfig& cfg) {
  const NagaoDatum d = load_datum(cfg);
  const Tree t(d);
  const TruncatedTree b = t.ball(base_vertex(), cfg.radius);
  CodistanceTable table = synthesize_codistance(t, b);
  if (cfg.fault && table.values.count(ray_vertex(1, 2))) table.values[ray_vertex(1, 2)] += 2;
  Report rep = verify_codist(table, b);
  rep.rule("twincodist", d.name() + "/rho=" + std::to_string(cfg.radius), "codist.level_matches_bfs") =
      check_levels_bfs(t, table, b);
  std::cerr << rep.summary();
  emit(cfg, "codist", json{{"table", table.to_json()}, {"passed", rep.passed()}, {"report", rep.to_json()}});
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nagao lattice toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--datum", cfg.datum, "Builtin name (D0..D3) or datum JSON file");
    sub->add_option("--radius", cfg.radius, "Ball radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Seed for all sampling");
    sub->add_option("--out", cfg.out, "Output directory (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--level", cfg.level, "Level bound i (0: suite default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", cfg.samples, "Sample count (0: default)")->check(CLI::NonNegativeNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "Validate a datum");
  common(validate);
  CLI::App* tree = app.add_subcommand("tree", "Export the ball around x0");
  common(tree);
  CLI::App* suite = app.add_subcommand("suite", "Run invariant suites");
  common(suite);
  sampling(suite);
  suite->add_option("--suite", cfg.suites, "Suites to run (default: all)")
      ->check(CLI::IsMember(suite_names()));
  suite->add_flag("--fault", cfg.fault, "Corrupt the U_2 action before running");
  CLI::App* extend = app.add_subcommand("extend", "Run the density pipeline on a partial isomorphism");
  common(extend);
  sampling(extend);
  extend->add_option("--phi", cfg.phi_file, "JSON list of [source, target] address pairs")->required();
  CLI::App* codist = app.add_subcommand("codist", "Synthesize and verify the codistance table");
  common(codist);
  codist->add_flag("--fault", cfg.fault, "Corrupt one table value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInvalid;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*tree) return cmd_tree(cfg);
    if (*suite) return cmd_suite(cfg);
    if (*extend) return cmd_extend(cfg);
    if (*codist) return cmd_codist(cfg);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    emit(cfg, "error", json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
    return exit_for(e.code());
  }
  return kInvalid;
}
