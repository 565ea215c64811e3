#include "nagao/suites.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "nagao/error.hpp"
#include "nagao/twincodist.hpp"

namespace nagao {

using nlohmann::json;

namespace {

std::string label(const Tree& t, int radius) {
  return t.datum().name() + "/rho=" + std::to_string(radius);
}

std::string label(const Tree& t, int radius, int i) {
  return label(t, radius) + "/i=" + std::to_string(i);
}

// Tuples supported on positions i..j.
std::vector<Tuple> tuples_between(const NagaoDatum& d, int i, int j) {
  std::vector<Tuple> out{Tuple{}};
  for (int r = i; r <= j; ++r) {
    std::vector<Tuple> next;
    for (const Tuple& e : out)
      for (int u = 0; u < d.q(r); ++u) next.push_back(tuple_mul(d, e, tuple_single(d, r, u)));
    out = std::move(next);
  }
  return out;
}

// Random level-preserving automorphism of Y_i around x₀ fixing x₀.
TreeMap shuffled_greedy(const Tree& t, int i, int radius, uint32_t seed) {
  GreedyOptions g;
  g.max_level = i;
  g.shuffle_seed = seed;
  return greedy_extend(t, identity_map({base_vertex()}), base_vertex(), radius, g);
}

void accumulate(RuleResult& into, const RuleResult& r) {
  into.checked += r.checked;
  into.skipped += r.skipped;
  if (r.failed > 0 && into.failed == 0) into.counterexample = r.counterexample;
  into.failed += r.failed;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"degrees", "transitivity", "horoball", "transport", "li",
          "extension", "probes", "density", "codist", "biregular"};
}

Report suite_degrees(const Tree& t, int radius) {
  const NagaoDatum& d = t.datum();
  const TruncatedTree b = t.ball(base_vertex(), radius);
  Report rep;
  RuleResult& law = rep.rule("tree", label(t, radius), "degree.law");
  std::map<int, long> histogram;
  for (size_t n = 0; n < b.size(); ++n) {
    const int idx = static_cast<int>(n);
    if (!b.interior(idx)) continue;
    const int deg = static_cast<int>(b.adjacent(idx).size());
    ++histogram[deg];
    rep.check(law, deg == d.degree(b.level(idx)), [&] {
      return json{{"vertex", to_string(b.vertex(idx))}, {"degree", deg}, {"expected", d.degree(b.level(idx))}};
    });
  }
  json h = json::object();
  for (const auto& [deg, count] : histogram) h[std::to_string(deg)] = count;
  law.info = {{"degree_histogram", h}, {"ball_size", b.size()}};
  return rep;
}

Report suite_transitivity(const Tree& t, int max_level) {
  const NagaoDatum& d = t.datum();
  Report rep;
  const std::string suite = t.datum().name() + "/levels<=" + std::to_string(max_level);
  RuleResult& size = rep.rule("tree", suite, "M.size");
  RuleResult& free = rep.rule("tree", suite, "M.free");
  RuleResult& trans = rep.rule("tree", suite, "M.transitive");
  for (int i = 1; i <= max_level; ++i) {
    for (int j = i; j <= max_level; ++j) {
      // M_{i,j}: level-(i-1) vertices at distance j-i+1 below x_j.
      const TruncatedTree b = t.ball(ray_vertex(1, j), j - i + 1);
      std::set<VertexAddress> m;
      for (size_t v = 0; v < b.size(); ++v)
        if (b.depth(static_cast<int>(v)) == j - i + 1 && b.level(static_cast<int>(v)) == i - 1)
          m.insert(b.vertex(static_cast<int>(v)));
      long expected = 1;
      for (int r = i; r <= j; ++r) expected *= d.q(r);
      const json where{{"i", i}, {"j", j}};
      rep.check(size, static_cast<long>(m.size()) == expected, [&] {
        json w = where;
        w["size"] = m.size();
        w["expected"] = expected;
        return w;
      });
      if (m.empty()) continue;
      const std::vector<Tuple> group = tuples_between(d, i, j);
      std::set<VertexAddress> orbit;
      for (const Tuple& e : group) orbit.insert(t.act(syllable_word(1, e), *m.begin()));
      rep.check(free, orbit.size() == group.size(), [&] { return where; });
      rep.check(trans, orbit == m, [&] { return where; });
    }
  }
  return rep;
}

Report suite_horoball(const Tree& t, int radius, int max_level) {
  const NagaoDatum& d = t.datum();
  const TruncatedTree b = t.ball(base_vertex(), radius);
  Report rep;
  RuleResult& fixed = rep.rule("horo", label(t, radius), "horoball.fixed_by_root_group");
  RuleResult& moves = rep.rule("horo", label(t, radius), "horoball.root_group_moves_below");
  for (int s = 1; s <= d.k(); ++s) {
    for (int i = 1; i <= max_level; ++i) {
      const VertexAddress x = ray_vertex(s, i);
      if (!b.contains(x)) continue;
      const HoroballView hb = horoball(b, x);
      const std::vector<VertexAddress> nb = t.neighbors(x);
      for (int u = 1; u < d.q(i); ++u) {
        const DeltaWord w = root_word(d, s, i, u);
        for (const auto& v : hb.vertices)
          rep.check(fixed, t.act(w, v) == v, [&] {
            return json{{"word", to_string(w)}, {"base", to_string(x)}, {"vertex", to_string(v)}};
          });
        rep.check(moves, t.act(w, nb.back()) != nb.back(), [&] { return json{{"word", to_string(w)}}; });
      }
    }
  }
  return rep;
}

Report suite_transport(const Tree& t, int radius, int max_level, int samples, uint32_t seed) {
  const TruncatedTree b = t.ball(base_vertex(), radius);
  TransportOptions opt;
  opt.exhaustive = samples == 0;
  if (samples > 0) opt.samples = samples;
  opt.seed = seed;
  Report rep;
  for (int i = 1; i <= max_level; ++i) rep.merge(verify_transport(t, b, i, opt));
  return rep;
}

Report suite_li(const Tree& t, int radius, int max_level) {
  const NagaoDatum& d = t.datum();
  const TruncatedTree b = t.ball(base_vertex(), radius);
  const std::vector<DeltaWord> words = enumerate_words(d, 3, 3);
  Report rep;
  for (int i = 1; i <= max_level; ++i) {
    RuleResult& r = rep.rule("extension", label(t, radius, i), "Li.delta_words");
    RuleResult a, bb;
    const LiChecker chk(t, b, i);
    for (const DeltaWord& w : words) {
      const LiCertificate c = chk.check(action_map(t, w, b.vertices()));
      accumulate(a, c.condition_a);
      accumulate(bb, c.condition_b);
      rep.check(r, c.valid, [&] { return json{{"word", to_string(w)}, {"certificate", c.to_json()}}; });
    }
    r.info = {{"words", words.size()},
              {"condition_a_checked", a.checked},
              {"condition_b_checked", bb.checked},
              {"condition_b_skipped", bb.skipped}};
  }
  return rep;
}

Report suite_extension(const Tree& t, int radius, int i, int samples, uint32_t seed) {
  const NagaoDatum& d = t.datum();
  const TruncatedTree b = t.ball(base_vertex(), radius);
  const std::vector<VertexAddress> x = base_component(b, i);
  const std::string suite = label(t, radius, i);
  Report rep;
  RuleResult& id = rep.rule("extension", suite, "E.identity");
  RuleResult& act = rep.rule("extension", suite, "E.delta_restriction");
  RuleResult& order = rep.rule("extension", suite, "E.order_independent");
  RuleResult& lazy = rep.rule("extension", suite, "E.lazy_matches_search");

  const TreeMap e_id = extend_E(t, b, i, identity_map(x));
  rep.check(id, e_id.is_identity() && e_id.size() == b.size());

  std::mt19937 rng(seed);
  for (int n = 0; n < samples; ++n) {
    const DeltaWord w = sample_word(d, rng, 3, 3);
    const TreeMap h = action_map(t, w, x);
    const TreeMap e = extend_E(t, b, i, h);
    const json witness{{"word", to_string(w)}};
    rep.check(act, e == action_map(t, w, b.vertices()), [&] { return witness; });
    ExtendOptions rev;
    rev.reverse_order = true;
    rep.check(order, extend_E(t, b, i, h, rev) == e, [&] { return witness; });
    const ExtensionEvaluator ev(t, i, h);
    bool same = true;
    for (const auto& v : b.vertices()) same = same && ev.try_eval(v) == e.at(v);
    rep.check(lazy, same, [&] { return witness; });
  }
  return rep;
}

Report suite_probes(const Tree& t, int radius, int i, int pairs, int samples, uint32_t seed) {
  const NagaoDatum& d = t.datum();
  const TruncatedTree b = t.ball(base_vertex(), radius);
  const int outer = radius + PipelineOptions{}.margin;
  const std::string suite = label(t, radius, i);
  Report rep;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<uint32_t> pick(1, 1u << 30);

  RuleResult& hom = rep.rule("extension", suite, "probe.homomorphism");
  RuleResult points;
  for (int n = 0; n < pairs; ++n) {
    const uint32_t s1 = pick(rng), s2 = pick(rng);
    const RuleResult p = homomorphism_probe(t, b, i, shuffled_greedy(t, i, outer, s1), shuffled_greedy(t, i, outer, s2));
    accumulate(points, p);
    rep.check(hom, p.failed == 0 && p.checked > 0, [&] {
      return json{{"seeds", {s1, s2}}, {"checked", p.checked}, {"counterexample", p.counterexample}};
    });
  }
  hom.info = {{"points_checked", points.checked}, {"points_skipped", points.skipped}};

  RuleResult& comm = rep.rule("extension", suite, "probe.commensuration");
  std::vector<DeltaWord> words;
  for (int n = 0; n < samples; ++n) words.push_back(sample_word(d, rng, 3, 3));
  const uint32_t gs = pick(rng);
  const CommensurationResult cr = commensuration_probe(t, b, i, shuffled_greedy(t, i, outer, gs), words);
  for (const auto& s : cr.samples)
    rep.check(comm, s.found, [&] { return json{{"delta", to_string(s.delta)}, {"g_seed", gs}}; });
  comm.info = cr.to_json();
  return rep;
}

Report suite_density(const Tree& t, int radius, int probe_samples, uint32_t seed) {
  const TruncatedTree b = t.ball(base_vertex(), radius);
  const TruncatedTree near = t.ball(base_vertex(), 2);
  std::vector<VertexAddress> centres;
  for (const auto& v : near.vertices()) {
    const auto path = t.path_to_base(v);
    if (std::all_of(path.begin(), path.end(), [](const VertexAddress& p) { return p.i <= 2; }))
      centres.push_back(v);
  }
  auto star = [&](const VertexAddress& c) {
    std::vector<VertexAddress> s;
    for (const auto& n : t.neighbors(c))
      if (n.i <= 2) s.push_back(n);
    return s;
  };

  PipelineOptions po;
  po.samples = probe_samples;
  po.seed = seed;
  Report rep;
  RuleResult& r = rep.rule("extension", label(t, radius, 2), "density.pipeline");
  for (const auto& c1 : centres) {
    for (const auto& c2 : centres) {
      if (c1.i != c2.i) continue;
      const auto s1 = star(c1), s2 = star(c2);
      if (s1.size() != s2.size()) continue;
      std::vector<size_t> perm(s2.size());
      for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
      do {
        TreeMap phi;
        phi.set(c1, c2);
        bool lp = true;
        for (size_t k = 0; k < s1.size(); ++k) {
          phi.set(s1[k], s2[perm[k]]);
          lp = lp && s1[k].i == s2[perm[k]].i;
        }
        if (!lp) continue;
        const PipelineResult pr = density_pipeline(t, b, phi, po);
        rep.check(r, pr.i == 2 && pr.certificate.valid && pr.report.passed(), [&] {
          return json{{"phi", phi.to_json()}, {"i", pr.i}, {"report", pr.report.to_json()}};
        });
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  r.info = {{"centres", centres.size()}, {"isomorphisms", r.checked}};
  return rep;
}

Report suite_codist(const Tree& t, int radius) {
  const TruncatedTree b = t.ball(base_vertex(), radius);
  const CodistanceTable table = synthesize_codistance(t, b);
  Report rep = verify_codist(table, b);
  rep.rule("twincodist", label(t, radius), "codist.level_matches_bfs") = check_levels_bfs(t, table, b);
  return rep;
}

Report suite_biregular(const Tree& t, int radius) {
  const NagaoDatum& d = t.datum();
  Report rep;
  const bool bireg = is_biregular(d);
  // Oracle: the degree of a level depends only on its parity.
  const int span = d.prefix_length() + 2 * d.period_length() + 2;
  bool pattern = true;
  for (int l = 1; l + 2 <= span; ++l) pattern = pattern && d.degree(l) == d.degree(l + 2);
  pattern = pattern && d.degree(0) == d.degree(2);
  RuleResult& flag = rep.rule("tree", label(t, radius), "biregular.matches_degree_pattern");
  rep.check(flag, bireg == pattern, [&] { return json{{"is_biregular", bireg}, {"pattern", pattern}}; });
  flag.info = {{"biregular", bireg}};
  if (bireg) return rep;

  RuleResult& lv = rep.rule("tree", label(t, radius), "levels.from_degrees");
  const TruncatedTree outer = t.ball(base_vertex(), 2 * radius);
  const LevelReconstruction rec = level_from_degrees(outer, d, radius);
  for (size_t n = 0; n < outer.size(); ++n) {
    const int idx = static_cast<int>(n);
    if (outer.depth(idx) > radius) continue;
    rep.check(lv, rec.levels[n] == outer.level(idx), [&] {
      return json{{"vertex", to_string(outer.vertex(idx))},
                  {"reconstructed", rec.levels[n] ? json(*rec.levels[n]) : json(nullptr)}};
    });
  }
  lv.info = {{"outer_radius", 2 * radius}, {"ambiguous", rec.ambiguous}};
  return rep;
}

Report run_suite(const std::string& name, const NagaoDatum& d, const SuiteOptions& opt) {
  const Tree t(d);
  auto level = [&](int dflt) { return opt.level > 0 ? opt.level : dflt; };
  auto samples = [&](int dflt) { return opt.samples > 0 ? opt.samples : dflt; };
  if (name == "degrees") return suite_degrees(t, opt.radius);
  if (name == "transitivity") return suite_transitivity(t, level(3));
  if (name == "horoball") return suite_horoball(t, opt.radius, level(3));
  if (name == "transport") return suite_transport(t, opt.radius, level(2), opt.samples, opt.seed);
  if (name == "li") return suite_li(t, opt.radius, level(2));
  if (name == "extension") return suite_extension(t, opt.radius, level(2), samples(50), opt.seed);
  if (name == "probes") return suite_probes(t, opt.radius, level(1), 20, samples(30), opt.seed);
  if (name == "density") return suite_density(t, opt.radius, samples(3), opt.seed);
  if (name == "codist") return suite_codist(t, opt.radius);
  if (name == "biregular") return suite_biregular(t, opt.radius);
  throw Error(ErrorCode::UnknownName, "suite " + name);
}

NagaoDatum inject_action_fault(const NagaoDatum& d) {
  const int h = d.h0().members().back();
  const int order = d.root_group(2).order();
  std::vector<int> images(order);
  for (int u = 0; u < order; ++u) images[u] = (d.act_root(h, 2, u) + 1) % order;
  return d.with_action_override(2, h, std::move(images));
}

}  // namespace nagao
