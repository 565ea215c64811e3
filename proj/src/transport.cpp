#include "nagao/transport.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "nagao/error.hpp"

namespace nagao {

DeltaWord delta_xy(const Tree& t, const VertexAddress& x, const VertexAddress& y) {
  if (x.i == 0 || y.i == 0) throw Error(ErrorCode::LevelZeroBase, to_string(x));
  if (x.i != y.i) throw Error(ErrorCode::NotSameHorosphere, to_string(x) + " vs " + to_string(y));
  t.require_canonical(x);
  t.require_canonical(y);
  const NagaoDatum& d = t.datum();
  // Move x to x_{i,s} ∈ F; there y must become (s, t).x_{i,s} with t supported above i.
  const DeltaWord winv = delta_inv(d, x.w);
  const VertexAddress y0 = t.act(winv, y);
  const bool ok = y0.s == x.s && (y0.w.empty() || (y0.w.length() == 1 && y0.w.syllables[0].s == x.s));
  if (!ok) throw Error(ErrorCode::NotSameHorosphere, to_string(x) + " vs " + to_string(y));
  return delta_mul(d, delta_mul(d, x.w, y0.w), winv);
}

DeltaWord delta_xy(const Tree& t, const TruncatedTree& ball, const VertexAddress& x,
                   const VertexAddress& y) {
  ball.at(x);
  ball.at(y);
  return delta_xy(t, x, y);
}

GammaElement gamma_x(const NagaoDatum& d, const VertexAddress& x) {
  if (x.i == 0) return gamma_of(d, x.w);
  // δ_x γ_s = γ_s (γ_s⁻¹ δ_x γ_s)
  const int gs = d.rep(x.s);
  return gamma_of(gs, gamma0_conj(d, d.gamma0().inv(gs), x.w));
}

GammaElement gamma_xy(const Tree& t, const VertexAddress& x, const VertexAddress& y) {
  if (x.i != y.i) {
    throw Error(ErrorCode::LevelMismatch, to_string(x) + " vs " + to_string(y));
  }
  const NagaoDatum& d = t.datum();
  return gamma_mul(d, gamma_x(d, y), gamma_inv(d, gamma_x(d, x)));
}

DeltaWord tau_between(const Tree& t, const VertexAddress& a, const VertexAddress& b, int i) {
  if (a.i > i || b.i > i) throw Error(ErrorCode::LevelTooHigh, to_string(a) + ", " + to_string(b));
  const NagaoDatum& d = t.datum();
  DeltaWord out;
  const std::vector<VertexAddress> path = t.geodesic(a, b);
  const VertexAddress* last_low = &path.front();
  bool crossed = false;
  for (const VertexAddress& v : path) {
    if (v.i > i) {
      crossed = true;
      continue;
    }
    if (crossed) out = delta_mul(d, delta_xy(t, *last_low, v), out);
    crossed = false;
    last_low = &v;
  }
  return out;
}

DeltaWord tau_along(const Tree& t, const ComponentGraph& g, const std::vector<int>& path) {
  DeltaWord out;
  for (size_t n = 0; n + 1 < path.size(); ++n) {
    const Witness w = g.witness(path[n], path[n + 1]);
    out = delta_mul(t.datum(), delta_xy(t, w.x, w.y), out);
  }
  return out;
}

DeltaWord tau(const Tree& t, const ComponentGraph& g, int x, int y) {
  return tau_along(t, g, g.geodesic(x, y));
}

namespace {

using nlohmann::json;

json addr(const VertexAddress& v) { return to_string(v); }

DeltaWord random_delta(const NagaoDatum& d, std::mt19937& rng, int max_syllables, int max_support) {
  DeltaWord w;
  const int n = std::uniform_int_distribution<int>(1, max_syllables)(rng);
  while (static_cast<int>(w.length()) < n) {
    const int s = std::uniform_int_distribution<int>(1, d.k())(rng);
    const int j = std::uniform_int_distribution<int>(1, max_support)(rng);
    const int u = std::uniform_int_distribution<int>(1, d.root_group(j).order() - 1)(rng);
    w = delta_mul(d, w, root_word(d, s, j, u));
  }
  return w;
}

// Random element of U_{1,s} × … × U_{i,s}, the Δ-stabilizer of x_{i,s}.
DeltaWord random_stabilizer(const NagaoDatum& d, std::mt19937& rng, int s, int i) {
  Tuple t;
  for (int j = 1; j <= i; ++j) {
    const int u = std::uniform_int_distribution<int>(0, d.root_group(j).order() - 1)(rng);
    t = tuple_mul(d, t, tuple_single(d, j, u));
  }
  return syllable_word(s, std::move(t));
}

}  // namespace

Report verify_transport(const Tree& t, const TruncatedTree& ball, int i,
                        const TransportOptions& opt) {
  const NagaoDatum& d = t.datum();
  const std::string suite =
      d.name() + "/rho=" + std::to_string(ball.radius()) + "/i=" + std::to_string(i);
  Report rep;
  std::mt19937 rng(opt.seed);

  // Level-i vertices of the ball grouped by horosphere.
  std::vector<VertexAddress> level_i;
  for (const auto& v : ball.vertices())
    if (v.i == i) level_i.push_back(v);
  std::sort(level_i.begin(), level_i.end());
  std::vector<std::vector<VertexAddress>> spheres;
  {
    std::map<VertexAddress, int> sphere_of;
    for (const auto& v : level_i) {
      if (sphere_of.count(v)) continue;
      spheres.push_back(horosphere(ball, v));
      for (const auto& y : spheres.back()) sphere_of[y] = static_cast<int>(spheres.size()) - 1;
    }
  }
  std::vector<DeltaWord> conj;
  for (int n = 0; n < opt.conjugators; ++n) conj.push_back(random_delta(d, rng, 3, i + 2));

  // Instances: (x, y, z) in one horosphere.
  std::vector<std::array<VertexAddress, 3>> triples;
  if (opt.exhaustive) {
    for (const auto& hs : spheres)
      for (const auto& x : hs)
        for (const auto& y : hs)
          for (const auto& z : hs) triples.push_back({x, y, z});
  } else {
    std::vector<size_t> nontrivial;
    for (size_t n = 0; n < spheres.size(); ++n)
      if (spheres[n].size() > 1) nontrivial.push_back(n);
    for (int n = 0; n < opt.samples && !nontrivial.empty(); ++n) {
      const auto& hs = spheres[nontrivial[rng() % nontrivial.size()]];
      triples.push_back({hs[rng() % hs.size()], hs[rng() % hs.size()], hs[rng() % hs.size()]});
    }
  }

  RuleResult& d1 = rep.rule("transport", suite, "delta.moves_x_to_y");
  RuleResult& d2 = rep.rule("transport", suite, "delta.equivariance");
  RuleResult& d3 = rep.rule("transport", suite, "delta.inverse");
  RuleResult& d4 = rep.rule("transport", suite, "delta.cocycle");
  RuleResult& dw = rep.rule("transport", suite, "delta.well_defined");
  for (const auto& [x, y, z] : triples) {
    const DeltaWord dxy = delta_xy(t, x, y);
    const DeltaWord dyz = delta_xy(t, y, z);
    const DeltaWord dxz = delta_xy(t, x, z);
    auto w3 = [&] { return json{{"x", addr(x)}, {"y", addr(y)}, {"z", addr(z)}}; };
    rep.check(d1, t.act(dxy, x) == y, w3);
    rep.check(d3, delta_xy(t, y, x) == delta_inv(d, dxy), w3);
    rep.check(d4, delta_mul(d, dyz, dxy) == dxz, w3);
    const DeltaWord h = conj[rng() % conj.size()];
    rep.check(d2,
              delta_mul(d, delta_mul(d, h, dxy), delta_inv(d, h)) ==
                  delta_xy(t, t.act(h, x), t.act(h, y)),
              [&] { return json{{"x", addr(x)}, {"y", addr(y)}, {"h", to_string(h)}}; });
    for (int alt = 0; alt < 3; ++alt) {
      const DeltaWord w = delta_mul(d, x.w, random_stabilizer(d, rng, x.s, i));
      const DeltaWord winv = delta_inv(d, w);
      const DeltaWord z0 = t.act(winv, y).w;
      rep.check(dw, delta_mul(d, delta_mul(d, w, z0), winv) == dxy, w3);
    }
  }

  // γ-rules on arbitrary level-i pairs.
  std::vector<std::array<VertexAddress, 3>> gtriples;
  if (opt.exhaustive) {
    for (const auto& x : level_i)
      for (const auto& y : level_i)
        for (const auto& z : level_i) gtriples.push_back({x, y, z});
  } else {
    for (int n = 0; n < opt.samples; ++n)
      gtriples.push_back({level_i[rng() % level_i.size()], level_i[rng() % level_i.size()],
                          level_i[rng() % level_i.size()]});
  }
  RuleResult& g1 = rep.rule("transport", suite, "gamma.moves_x_to_y");
  RuleResult& g2 = rep.rule("transport", suite, "gamma.inverse");
  RuleResult& g3 = rep.rule("transport", suite, "gamma.cocycle");
  RuleResult& g4 = rep.rule("transport", suite, "gamma.in_delta_on_orbits");
  RuleResult& gr = rep.rule("transport", suite, "gamma.restriction");
  for (const auto& [x, y, z] : gtriples) {
    auto w3 = [&] { return json{{"x", addr(x)}, {"y", addr(y)}, {"z", addr(z)}}; };
    const GammaElement gxy = gamma_xy(t, x, y);
    rep.check(g1, t.act(gxy, x) == y, w3);
    rep.check(g2, gamma_xy(t, y, x) == gamma_inv(d, gxy), w3);
    rep.check(g3, gamma_mul(d, gamma_xy(t, y, z), gxy) == gamma_xy(t, x, z), w3);
    // y ∈ Δ.x is witnessed by an explicit word.
    const DeltaWord carry = delta_mul(d, y.w, delta_inv(d, x.w));
    if (t.act(carry, x) == y) rep.check(g4, in_delta(d, gxy), w3);
  }
  // Restriction lemma: for x' ∈ HS(x) and y' = γ_{x,y}(x'), γ_{x,y} and
  // γ_{x',y'} agree on HB(x) ∩ ball.
  std::vector<std::array<VertexAddress, 3>> rtriples;
  if (opt.exhaustive) {
    for (const auto& hs : spheres)
      for (const auto& x : hs)
        for (const auto& y : level_i)
          for (const auto& xp : hs) rtriples.push_back({x, y, xp});
  } else {
    for (const auto& [x, y, xp] : triples) rtriples.push_back({x, level_i[rng() % level_i.size()], xp});
  }
  std::map<VertexAddress, std::vector<VertexAddress>> horoballs;
  for (const auto& [x, y, xp] : rtriples) {
    const GammaElement gxy = gamma_xy(t, x, y);
    const VertexAddress yp = t.act(gxy, xp);
    const GammaElement g2xy = gamma_xy(t, xp, yp);
    bool same = true;
    VertexAddress bad;
    auto hb = horoballs.find(x);
    if (hb == horoballs.end()) hb = horoballs.emplace(x, horoball(ball, x).vertices).first;
    for (const auto& v : hb->second) {
      if (t.act(gxy, v) != t.act(g2xy, v)) {
        same = false;
        bad = v;
        break;
      }
    }
    rep.check(gr, same, [&] {
      return json{{"x", addr(x)}, {"y", addr(y)}, {"x'", addr(xp)}, {"at", addr(bad)}};
    });
  }
  gr.info = json{{"radius", ball.radius()}};

  // τ-rules on the component graph.
  ComponentGraph g(ball, i);
  const int n = g.size();
  std::vector<std::pair<int, int>> pairs;
  if (opt.exhaustive) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    for (int m = 0; m < opt.samples; ++m) pairs.emplace_back(rng() % n, rng() % n);
  }
  std::map<std::pair<int, int>, DeltaWord> taus;
  auto tau_of = [&](int a, int b) -> const DeltaWord& {
    auto it = taus.find({a, b});
    if (it == taus.end()) it = taus.emplace(std::make_pair(a, b), tau(t, g, a, b)).first;
    return it->second;
  };
  RuleResult& tg = rep.rule("transport", suite, "graph.unique_geodesic");
  RuleResult& t1 = rep.rule("transport", suite, "tau.maps_X_onto_Y");
  RuleResult& t2 = rep.rule("transport", suite, "tau.equivariance");
  RuleResult& t3 = rep.rule("transport", suite, "tau.inverse");
  RuleResult& t4 = rep.rule("transport", suite, "tau.cocycle");
  RuleResult& tp = rep.rule("transport", suite, "tau.path_independence");
  RuleResult& ts = rep.rule("transport", suite, "tau.symbolic_matches_graph");
  for (const auto& [a, b] : pairs) {
    const Component& X = g.node(a);
    const Component& Y = g.node(b);
    auto w2 = [&] { return json{{"X", addr(X.anchor)}, {"Y", addr(Y.anchor)}}; };
    const std::vector<int> geo = g.geodesic(a, b);
    rep.check(tg, g.is_geodesic(geo) && geo == g.geodesic_from_tree(a, b), w2);
    const DeltaWord& txy = tau_of(a, b);
    rep.check(ts, txy == tau_between(t, X.anchor, Y.anchor, i), w2);
    rep.check(t3, tau_of(b, a) == delta_inv(d, txy), w2);
    // τ(X) ⊆ Y and τ⁻¹(Y) ⊆ X as far as the ball sees.
    bool onto = true;
    for (const auto& v : X.vertices) {
      const int idx = ball.find(t.act(txy, v));
      if (idx < 0) {
        ++t1.skipped;
        continue;
      }
      onto &= g.node_of(ball.vertex(idx)) == b;
    }
    const DeltaWord tinv = delta_inv(d, txy);
    for (const auto& v : Y.vertices) {
      const int idx = ball.find(t.act(tinv, v));
      if (idx < 0) {
        ++t1.skipped;
        continue;
      }
      onto &= g.node_of(ball.vertex(idx)) == a;
    }
    rep.check(t1, onto, w2);
    const DeltaWord& h = conj[rng() % conj.size()];
    rep.check(t2,
              delta_mul(d, delta_mul(d, h, txy), delta_inv(d, h)) ==
                  tau_between(t, t.act(h, X.anchor), t.act(h, Y.anchor), i),
              [&] { return json{{"X", addr(X.anchor)}, {"Y", addr(Y.anchor)}, {"h", to_string(h)}}; });
    const int c = opt.exhaustive ? -1 : static_cast<int>(rng() % n);
    for (int z = (c < 0 ? 0 : c); z < (c < 0 ? n : c + 1); ++z) {
      rep.check(t4, delta_mul(d, tau_of(b, z), txy) == tau_of(a, z), [&] {
        return json{{"X", addr(X.anchor)}, {"Y", addr(Y.anchor)}, {"Z", addr(g.node(z).anchor)}};
      });
    }
    // A random walk from X, then the geodesic back to Y: any path gives τ_{X,Y}.
    std::vector<int> walk{a};
    const int steps = static_cast<int>(rng() % 6);
    for (int m = 0; m < steps && !g.neighbors(walk.back()).empty(); ++m) {
      const auto& nb = g.neighbors(walk.back());
      walk.push_back(nb[rng() % nb.size()]);
    }
    const std::vector<int> back = g.geodesic(walk.back(), b);
    walk.insert(walk.end(), back.begin() + 1, back.end());
    rep.check(tp, tau_along(t, g, walk) == txy, w2);
  }
  return rep;
}

}  // namespace nagao
