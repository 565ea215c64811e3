#include "nagao/extension.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "nagao/error.hpp"

namespace nagao {

using nlohmann::json;

// ---------------------------------------------------------------- TreeMap

const VertexAddress* TreeMap::get(const VertexAddress& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

const VertexAddress& TreeMap::at(const VertexAddress& x) const {
  auto it = map_.find(x);
  if (it == map_.end()) throw Error(ErrorCode::NotInTruncation, "map undefined at " + to_string(x));
  return it->second;
}

std::vector<VertexAddress> TreeMap::domain() const {
  std::vector<VertexAddress> out;
  out.reserve(map_.size());
  for (const auto& [x, y] : map_) out.push_back(x);
  return out;
}

std::vector<VertexAddress> TreeMap::image() const {
  std::vector<VertexAddress> out;
  out.reserve(map_.size());
  for (const auto& [x, y] : map_) out.push_back(y);
  std::sort(out.begin(), out.end());
  return out;
}

bool TreeMap::injective() const {
  const auto img = image();
  return std::adjacent_find(img.begin(), img.end()) == img.end();
}

bool TreeMap::level_preserving() const {
  return std::all_of(map_.begin(), map_.end(), [](const auto& p) { return p.first.i == p.second.i; });
}

bool TreeMap::type_preserving() const {
  return std::all_of(map_.begin(), map_.end(),
                     [](const auto& p) { return p.first.i % 2 == p.second.i % 2; });
}

bool TreeMap::is_isomorphism(const Tree& t) const {
  if (!injective()) return false;
  std::map<VertexAddress, VertexAddress> inv;
  for (const auto& [x, y] : map_) inv[y] = x;
  for (const auto& [x, y] : map_) {
    for (const auto& n : t.neighbors(x)) {
      const VertexAddress* hn = get(n);
      if (hn && !t.adjacent(y, *hn)) return false;
    }
    for (const auto& m : t.neighbors(y)) {
      auto it = inv.find(m);
      if (it != inv.end() && !t.adjacent(x, it->second)) return false;
    }
  }
  return true;
}

bool TreeMap::connected(const Tree& t) const {
  if (map_.empty()) return true;
  std::set<VertexAddress> seen{map_.begin()->first};
  std::vector<VertexAddress> stack{map_.begin()->first};
  while (!stack.empty()) {
    const VertexAddress v = stack.back();
    stack.pop_back();
    for (const auto& n : t.neighbors(v))
      if (contains(n) && seen.insert(n).second) stack.push_back(n);
  }
  return seen.size() == map_.size();
}

bool TreeMap::is_identity() const {
  return std::all_of(map_.begin(), map_.end(), [](const auto& p) { return p.first == p.second; });
}

TreeMap TreeMap::inverse() const {
  TreeMap out;
  for (const auto& [x, y] : map_) {
    if (out.contains(y)) throw Error(ErrorCode::NotIsomorphism, "not injective at " + to_string(y));
    out.set(y, x);
  }
  return out;
}

TreeMap TreeMap::restrict_to(const std::vector<VertexAddress>& vertices) const {
  TreeMap out;
  for (const auto& v : vertices)
    if (const VertexAddress* y = get(v)) out.set(v, *y);
  return out;
}

json TreeMap::to_json() const {
  json out = json::array();
  for (const auto& [x, y] : map_) out.push_back({address_to_json(x), address_to_json(y)});
  return out;
}

TreeMap TreeMap::from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "map must be a list of address pairs");
  TreeMap out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::ParseError, "expected [source, target]");
    const VertexAddress x = address_from_json(p[0]);
    if (out.contains(x)) throw Error(ErrorCode::ParseError, "duplicate source " + to_string(x));
    out.set(x, address_from_json(p[1]));
  }
  return out;
}

TreeMap compose(const TreeMap& a, const TreeMap& b) {
  TreeMap out;
  for (const auto& [x, y] : b.pairs())
    if (const VertexAddress* z = a.get(y)) out.set(x, *z);
  return out;
}

TreeMap identity_map(const std::vector<VertexAddress>& vertices) {
  TreeMap out;
  for (const auto& v : vertices) out.set(v, v);
  return out;
}

TreeMap action_map(const Tree& t, const DeltaWord& w, const std::vector<VertexAddress>& vertices) {
  TreeMap out;
  for (const auto& v : vertices) out.set(v, t.act(w, v));
  return out;
}

TreeMap action_map(const Tree& t, const GammaElement& g, const std::vector<VertexAddress>& vertices) {
  TreeMap out;
  for (const auto& v : vertices) out.set(v, t.act(g, v));
  return out;
}

std::vector<VertexAddress> base_component(const TruncatedTree& ball, int i) {
  return component(ball, ball.center(), i).vertices;
}

// ---------------------------------------------------------- greedy_extend

TreeMap greedy_extend(const Tree& t, const TreeMap& psi, const VertexAddress& center, int radius,
                      const GreedyOptions& opt) {
  if (psi.empty()) throw Error(ErrorCode::NotIsomorphism, "empty partial map");
  if (opt.mode == MatchMode::Level && !psi.level_preserving())
    throw Error(ErrorCode::NotLevelPreserving, "input changes levels");
  if (opt.mode == MatchMode::Type && !psi.type_preserving())
    throw Error(ErrorCode::TypeMismatch, "input changes types");
  if (!psi.is_isomorphism(t) || !psi.connected(t))
    throw Error(ErrorCode::NotIsomorphism, "input is not an isomorphism between subtrees");

  const TruncatedTree ball = t.ball(center, radius);
  auto allowed = [&](const VertexAddress& v) { return opt.max_level < 0 || v.i <= opt.max_level; };
  for (const auto& [x, y] : psi.pairs()) {
    if (!ball.contains(x)) throw Error(ErrorCode::NotInTruncation, to_string(x));
    if (!allowed(x) || !allowed(y))
      throw Error(ErrorCode::NotInTruncation, to_string(x) + " lies above the level bound");
  }

  std::mt19937 rng(opt.shuffle_seed);
  TreeMap h = psi;
  std::set<VertexAddress> used;
  for (const auto& [x, y] : psi.pairs()) used.insert(y);
  std::deque<VertexAddress> queue;
  for (const auto& [x, y] : psi.pairs()) queue.push_back(x);
  while (!queue.empty()) {
    const VertexAddress v = queue.front();
    queue.pop_front();
    std::vector<VertexAddress> todo;
    for (const auto& n : t.neighbors(v))
      if (ball.contains(n) && allowed(n) && !h.contains(n)) todo.push_back(n);
    if (todo.empty()) continue;
    std::vector<VertexAddress> free;
    for (const auto& m : t.neighbors(h.at(v)))
      if (allowed(m) && !used.count(m)) free.push_back(m);
    std::sort(todo.begin(), todo.end());
    std::sort(free.begin(), free.end());
    if (opt.shuffle_seed != 0) std::shuffle(free.begin(), free.end(), rng);
    for (const auto& n : todo) {
      auto it = std::find_if(free.begin(), free.end(), [&](const VertexAddress& m) {
        return t.degree(m) == t.degree(n) && (opt.mode == MatchMode::Type || m.i == n.i);
      });
      if (it == free.end()) {
        throw Error(opt.mode == MatchMode::Type ? ErrorCode::TypeMismatch : ErrorCode::NotIsomorphism,
                    "no compatible neighbour of " + to_string(h.at(v)) + " for " + to_string(n));
      }
      h.set(n, *it);
      used.insert(*it);
      free.erase(it);
      queue.push_back(n);
    }
  }
  return h;
}

// ------------------------------------------------------------------- L_i

json LiCertificate::to_json() const {
  auto rule = [](const RuleResult& r) {
    json j{{"checked", r.checked}, {"failed", r.failed}, {"skipped", r.skipped}};
    if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
    return j;
  };
  return {{"i", i},
          {"radius", radius},
          {"valid", valid},
          {"condition_a", rule(condition_a)},
          {"condition_b", rule(condition_b)}};
}

LiChecker::LiChecker(const Tree& t, const TruncatedTree& ball, int i) : t_(&t), ball_(&ball), i_(i) {
  std::set<VertexAddress> covered;
  std::vector<VertexAddress> level_i;
  for (const auto& v : ball.vertices())
    if (v.i == i) level_i.push_back(v);
  std::sort(level_i.begin(), level_i.end());
  for (const auto& x : level_i) {
    if (covered.count(x)) continue;
    HoroballView hb = horoball(ball, x);
    covered.insert(hb.horosphere.begin(), hb.horosphere.end());
    spheres_.push_back({std::move(hb.horosphere), std::move(hb.vertices)});
  }

  const ComponentGraph g(ball, i);
  const std::vector<VertexAddress> x0 = component(ball, ball.center(), i).vertices;
  for (const Component& c : g.nodes()) {
    Transfer tr{c.anchor, {}, 0};
    const DeltaWord tau = tau_between(t, ball.center(), c.anchor, i);
    for (const auto& p : x0) {
      VertexAddress q = t.act(tau, p);
      if (ball.contains(q))
        tr.points.emplace_back(p, std::move(q));
      else
        ++tr.skipped;
    }
    transfers_.push_back(std::move(tr));
  }
}

LiCertificate LiChecker::check(const TreeMap& h) const {
  LiCertificate cert;
  cert.i = i_;
  cert.radius = ball_->radius();
  Report rep;  // only used for its witness bookkeeping
  RuleResult& a = cert.condition_a;
  RuleResult& b = cert.condition_b;

  for (const Sphere& sp : spheres_) {
    for (const auto& x : sp.level_i) {
      const VertexAddress* hx = h.get(x);
      if (!hx || hx->i != x.i) {
        rep.check(a, false, [&] { return json{{"x", to_string(x)}, {"reason", "h(x) missing or off level"}}; });
        continue;
      }
      const GammaElement g = gamma_xy(*t_, x, *hx);
      for (const auto& v : sp.ball_part) {
        const VertexAddress* hv = h.get(v);
        if (!hv) {
          ++a.skipped;
          continue;
        }
        const VertexAddress expect = t_->act(g, v);
        rep.check(a, expect == *hv, [&] {
          return json{{"x", to_string(x)}, {"h(x)", to_string(*hx)}, {"v", to_string(v)},
                      {"h(v)", to_string(*hv)}, {"gamma(v)", to_string(expect)}};
        });
      }
    }
  }

  const VertexAddress* hx0 = h.get(ball_->center());
  for (const Transfer& tr : transfers_) {
    b.skipped += tr.skipped;
    const VertexAddress* hy = h.get(tr.anchor);
    if (!hx0 || !hy || hx0->i > i_ || hy->i > i_) {
      rep.check(b, false, [&] { return json{{"component", to_string(tr.anchor)}, {"reason", "image undefined"}}; });
      continue;
    }
    const DeltaWord tau = tau_between(*t_, *hx0, *hy, i_);
    for (const auto& [p, q] : tr.points) {
      const VertexAddress* hp = h.get(p);
      const VertexAddress* hq = h.get(q);
      if (!hp || !hq) {
        ++b.skipped;
        continue;
      }
      const VertexAddress got = t_->act(tau, *hp);
      rep.check(b, got == *hq, [&] {
        return json{{"component", to_string(tr.anchor)}, {"p", to_string(p)},
                    {"h(tau(p))", to_string(*hq)}, {"tau'(h(p))", to_string(got)}};
      });
    }
  }
  cert.valid = a.failed == 0 && b.failed == 0 && a.checked > 0;
  return cert;
}

LiCertificate check_Li(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& h) {
  return LiChecker(t, ball, i).check(h);
}

// --------------------------------------------------------------- E(h)

namespace {

void require_input(const TreeMap& h, int i) {
  if (h.empty()) throw Error(ErrorCode::InputNotLevelPreserving, "empty input");
  for (const auto& [x, y] : h.pairs()) {
    if (x.i != y.i) throw Error(ErrorCode::InputNotLevelPreserving, to_string(x) + " -> " + to_string(y));
    if (x.i > i) throw Error(ErrorCode::InputNotLevelPreserving, to_string(x) + " lies above level i");
  }
}

}  // namespace

TreeMap extend_E(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& h,
                 const ExtendOptions& opt) {
  require_input(h, i);
  const NagaoDatum& d = t.datum();
  const ComponentGraph g(ball, i);
  int x_node = -1;
  for (const auto& [x, y] : h.pairs()) {
    if (!ball.contains(x)) continue;
    const int n = g.node_of(x);
    if (x_node < 0) x_node = n;
    if (n != x_node) throw Error(ErrorCode::NotInGraph, "input spans several components");
  }
  if (x_node < 0) throw Error(ErrorCode::NotInGraph, "input misses the ball");

  // E|_A = τ_{Y,A'} ∘ h ∘ τ_{A,X}.
  std::vector<DeltaWord> tau_ax(g.size()), tau_ya(g.size());
  std::vector<bool> visited(g.size(), false);
  TreeMap e;
  std::set<VertexAddress> spheres_done;

  auto missing = [&](const VertexAddress& v) {
    if (!opt.allow_partial)
      throw Error(ErrorCode::TruncationExceeded, "input needed beyond the ball for " + to_string(v));
  };

  std::deque<int> queue{x_node};
  visited[x_node] = true;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (const auto& v : g.node(a).vertices) {
      const VertexAddress* hp = h.get(t.act(tau_ax[a], v));
      if (hp)
        e.set(v, t.act(tau_ya[a], *hp));
      else
        missing(v);
    }
    for (const auto& x : g.node(a).vertices) {
      if (x.i != i || spheres_done.count(x) || !e.contains(x)) continue;
      const HoroballView hb = horoball(ball, x);
      spheres_done.insert(hb.horosphere.begin(), hb.horosphere.end());
      const GammaElement gx = gamma_xy(t, x, e.at(x));
      for (const auto& v : hb.vertices)
        if (v.i > i) e.set(v, t.act(gx, v));
    }
    std::vector<int> next = g.neighbors(a);
    if (opt.reverse_order) std::reverse(next.begin(), next.end());
    for (int z : next) {
      if (visited[z]) continue;
      Witness w = g.witness(a, z);
      if (a > z) std::swap(w.x, w.y);
      const VertexAddress* ex = e.get(w.x);
      if (!ex) continue;
      const VertexAddress ez = t.act(gamma_xy(t, w.x, *ex), w.y);
      tau_ax[z] = delta_mul(d, tau_ax[a], delta_xy(t, w.y, w.x));
      tau_ya[z] = delta_mul(d, delta_xy(t, *ex, ez), tau_ya[a]);
      visited[z] = true;
      queue.push_back(z);
    }
  }
  if (!opt.allow_partial && e.size() != ball.size())
    throw Error(ErrorCode::TruncationExceeded, "propagation did not reach every ball vertex");
  return e;
}

ExtensionEvaluator::ExtensionEvaluator(const Tree& t, int i, TreeMap h)
    : t_(&t), i_(i), h_(std::move(h)) {
  require_input(h_, i_);
  anchor_ = h_.pairs().begin()->first;
}

std::optional<VertexAddress> ExtensionEvaluator::try_eval(const VertexAddress& v) const {
  const Tree& t = *t_;
  const NagaoDatum& d = t.datum();
  DeltaWord tau_zx, tau_yz;
  auto eval_low = [&](const VertexAddress& p) -> std::optional<VertexAddress> {
    const VertexAddress* hp = h_.get(t.act(tau_zx, p));
    if (!hp) return std::nullopt;
    return t.act(tau_yz, *hp);
  };
  const std::vector<VertexAddress> path = t.geodesic(anchor_, v);
  size_t last_low = 0;
  bool crossed = false;
  for (size_t n = 1; n < path.size(); ++n) {
    const VertexAddress& p = path[n];
    if (p.i > i_) {
      crossed = true;
      continue;
    }
    if (crossed) {
      const VertexAddress& x = path[last_low];
      const auto ex = eval_low(x);
      if (!ex) return std::nullopt;
      const VertexAddress ez = t.act(gamma_xy(t, x, *ex), p);
      tau_zx = delta_mul(d, tau_zx, delta_xy(t, p, x));
      tau_yz = delta_mul(d, delta_xy(t, *ex, ez), tau_yz);
    }
    crossed = false;
    last_low = n;
  }
  if (v.i <= i_) return eval_low(v);
  const VertexAddress& x = path[last_low];
  const auto ex = eval_low(x);
  if (!ex) return std::nullopt;
  return t.act(gamma_xy(t, x, *ex), v);
}

VertexAddress ExtensionEvaluator::operator()(const VertexAddress& v) const {
  auto out = try_eval(v);
  if (!out) throw Error(ErrorCode::TruncationExceeded, "input needed beyond its domain for " + to_string(v));
  return *out;
}

// ---------------------------------------------------------------- probes

RuleResult homomorphism_probe(const Tree& t, const TruncatedTree& ball, int i, const TreeMap& g,
                              const TreeMap& h) {
  RuleResult r;
  Report rep;
  const TreeMap gh = compose(g, h);
  if (gh.empty()) {
    rep.check(r, false, [] { return json("g∘h has empty domain"); });
    return r;
  }
  const ExtensionEvaluator eg(t, i, g), eh(t, i, h), egh(t, i, gh);
  for (const auto& v : ball.vertices()) {
    const auto lhs = egh.try_eval(v);
    const auto mid = eh.try_eval(v);
    const auto rhs = mid ? eg.try_eval(*mid) : std::nullopt;
    if (!lhs || !rhs) {
      ++r.skipped;
      continue;
    }
    rep.check(r, *lhs == *rhs, [&] {
      return json{{"v", to_string(v)}, {"E(gh)(v)", to_string(*lhs)}, {"E(g)E(h)(v)", to_string(*rhs)}};
    });
  }
  return r;
}

bool CommensurationResult::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.found; });
}

json CommensurationResult::to_json() const {
  json rows = json::array();
  for (const auto& s : samples) {
    json row{{"delta", to_string(s.delta)}, {"found", s.found},     {"checked", s.checked},
             {"skipped", s.skipped},        {"tried", s.tried}};
    if (s.found) {
      row["delta_j"] = to_string(s.delta_j);
      row["delta_prime"] = to_string(s.delta_prime);
      row["delta_prime_length"] = s.delta_prime.length();
    }
    rows.push_back(std::move(row));
  }
  return {{"bound", bound},
          {"passed", passed()},
          {"distinct_delta_j", distinct_delta_j},
          {"status", "sample-verified, not a finite-index certificate"},
          {"samples", std::move(rows)}};
}

CommensurationResult commensuration_probe(const Tree& t, const TruncatedTree& ball, int i,
                                          const TreeMap& g, const std::vector<DeltaWord>& samples,
                                          const CommensurationOptions& opt) {
  const NagaoDatum& d = t.datum();
  CommensurationResult out;
  out.bound = opt.bound;
  const ExtensionEvaluator eg(t, i, g);
  const ExtensionEvaluator eg_inv(t, i, g.inverse());

  // E(g) on the ball, once.
  std::vector<std::optional<VertexAddress>> eg_ball(ball.size());
  for (size_t n = 0; n < ball.size(); ++n) eg_ball[n] = eg.try_eval(ball.vertex(static_cast<int>(n)));
  if (!eg_ball[0]) {
    for (const auto& delta : samples) {
      CommensurationSample row;
      row.delta = delta;
      out.samples.push_back(std::move(row));
    }
    return out;
  }

  std::set<DeltaWord> used;
  for (const DeltaWord& delta : samples) {
    CommensurationSample row;
    row.delta = delta;
    // Candidates δ_j ∈ Δ_i, shortest first.
    for_each_word(d, opt.bound, i, [&](const DeltaWord& dj) {
      if (++row.tried > opt.max_candidates) return true;
      const DeltaWord eps = delta_mul(d, delta_inv(d, dj), delta);
      const auto f0 = eg_inv.try_eval(t.act(eps, *eg_ball[0]));
      if (!f0) return false;
      const DeltaWord dprime = f0->w;
      long checked = 0, skipped = 0;
      bool ok = true;
      for (size_t n = 0; n < ball.size() && ok; ++n) {
        const VertexAddress& v = ball.vertex(static_cast<int>(n));
        std::optional<VertexAddress> fv;
        if (eg_ball[n]) fv = eg_inv.try_eval(t.act(eps, *eg_ball[n]));
        if (!fv) {
          if (ball.depth(static_cast<int>(n)) <= opt.min_radius) ok = false;
          ++skipped;
          continue;
        }
        ok = *fv == t.act(dprime, v);
        ++checked;
      }
      if (!ok) return false;
      row.found = true;
      row.delta_j = dj;
      row.delta_prime = dprime;
      row.checked = checked;
      row.skipped = skipped;
      used.insert(dj);
      return true;
    });
    out.samples.push_back(std::move(row));
  }
  out.distinct_delta_j = used.size();
  return out;
}

// ------------------------------------------------------------- density

std::vector<int> component_degrees(const NagaoDatum& d, int i) {
  std::vector<int> out;
  for (int j = 0; j < i; ++j) out.push_back(d.degree(j));
  out.push_back(i == 0 ? 0 : d.q(i));
  return out;
}

namespace {

bool biregular_degrees(const std::vector<int>& deg) {
  for (size_t j = 2; j < deg.size(); ++j)
    if (deg[j] != deg[j - 2]) return false;
  return true;
}

// Highest level on the geodesic from x₀, i.e. the least i with v ∈ Y_i.
int component_level(const Tree& t, const VertexAddress& v) {
  int top = 0;
  for (const auto& p : t.path_to_base(v)) top = std::max(top, p.i);
  return top;
}

}  // namespace

int select_level(const NagaoDatum& d) {
  if (is_biregular(d)) return 2;
  for (int l = 0;; ++l)
    if (d.q(l) != d.q(l + 2)) return l + 3;
}

json PipelineResult::to_json() const {
  return {{"i", i},
          {"g", g.to_json()},
          {"extension", extension.to_json()},
          {"certificate", certificate.to_json()},
          {"report", report.to_json()}};
}

PipelineResult density_pipeline(const Tree& t, const TruncatedTree& ball, const TreeMap& phi,
                                const PipelineOptions& opt) {
  const NagaoDatum& d = t.datum();
  if (phi.empty()) throw Error(ErrorCode::NotIsomorphism, "empty map");
  if (!phi.level_preserving()) throw Error(ErrorCode::NotLevelPreserving, "input changes levels");
  if (!phi.is_isomorphism(t) || !phi.connected(t))
    throw Error(ErrorCode::NotIsomorphism, "input is not an isomorphism between subtrees");
  if (ball.center() != base_vertex())
    throw Error(ErrorCode::CannotExtendInTruncation, "the ball must be centred at the base vertex");
  for (const auto& [x, y] : phi.pairs()) {
    if (!ball.contains(x) || !ball.contains(y))
      throw Error(ErrorCode::CannotExtendInTruncation, to_string(x) + " -> " + to_string(y) + " leaves the ball");
  }

  PipelineResult res;
  res.i = select_level(d);
  for (const auto& [x, y] : phi.pairs())
    res.i = std::max({res.i, component_level(t, x), component_level(t, y)});
  const int i = res.i;
  const std::string suite = d.name() + "/rho=" + std::to_string(ball.radius()) + "/i=" + std::to_string(i);
  Report& rep = res.report;

  const std::vector<int> deg = component_degrees(d, i);
  rep.check(rep.rule("extension", suite, "pipeline.component_not_biregular"), !biregular_degrees(deg),
            [&] { return json{{"degrees", deg}}; });

  try {
    GreedyOptions gopt;
    gopt.max_level = i;
    res.g = greedy_extend(t, phi, ball.center(), ball.radius() + std::max(opt.margin, 0), gopt);
    res.extension = extend_E(t, ball, i, res.g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInTruncation || e.code() == ErrorCode::TruncationExceeded)
      throw Error(ErrorCode::CannotExtendInTruncation, e.what());
    throw;
  }

  RuleResult& restrict_rule = rep.rule("extension", suite, "pipeline.extends_phi");
  for (const auto& [x, y] : phi.pairs()) {
    const VertexAddress* ex = res.extension.get(x);
    rep.check(restrict_rule, ex && *ex == y, [&] { return json{{"x", to_string(x)}}; });
  }
  RuleResult& g_rule = rep.rule("extension", suite, "pipeline.extends_g");
  for (const auto& [x, y] : res.g.pairs()) {
    if (!ball.contains(x)) continue;
    const VertexAddress* ex = res.extension.get(x);
    rep.check(g_rule, ex && *ex == y, [&] { return json{{"x", to_string(x)}}; });
  }

  res.certificate = check_Li(t, ball, i, res.extension);
  rep.rule("extension", suite, "Li.condition_a") = res.certificate.condition_a;
  rep.rule("extension", suite, "Li.condition_b") = res.certificate.condition_b;

  if (opt.samples > 0) {
    std::mt19937 rng(opt.seed);
    std::vector<DeltaWord> samples;
    for (int n = 0; n < opt.samples; ++n) samples.push_back(sample_word(d, rng, 3, 3));
    const CommensurationResult cr = commensuration_probe(t, ball, i, res.g, samples, opt.commensuration);
    RuleResult& c = rep.rule("extension", suite, "probe.commensuration");
    for (const auto& s : cr.samples)
      rep.check(c, s.found, [&] { return json{{"delta", to_string(s.delta)}}; });
    c.info = cr.to_json();
  }
  return res;
}

// ------------------------------------------------------ type-preserving

TreeMap extend_type_preserving(const Tree& t, const TreeMap& phi, const VertexAddress& z1, int s,
                               int radius) {
  const NagaoDatum& d = t.datum();
  if (!is_biregular(d)) throw Error(ErrorCode::NotBiregular, d.name());
  if (!phi.contains(z1)) throw Error(ErrorCode::NotIsomorphism, "centre outside the domain");
  const VertexAddress z2 = phi.at(z1);
  if (z1.i % 2 != z2.i % 2) throw Error(ErrorCode::TypeMismatch, to_string(z1) + " -> " + to_string(z2));
  if (!phi.type_preserving()) throw Error(ErrorCode::TypeMismatch, "input changes types");
  if (!phi.is_isomorphism(t)) throw Error(ErrorCode::NotIsomorphism, "input is not an isomorphism");
  {
    std::vector<VertexAddress> ball1 = t.ball(z1, s).vertices();
    std::sort(ball1.begin(), ball1.end());
    if (ball1 != phi.domain()) throw Error(ErrorCode::NotIsomorphism, "domain is not the ball B_s(z1)");
  }
  if (radius < s) throw Error(ErrorCode::CannotTransportInTruncation, "radius below the input radius");

  TreeMap base = phi;
  if (s == 0) {
    GreedyOptions topt;
    topt.mode = MatchMode::Type;
    base = greedy_extend(t, phi, z1, 1, topt);
    s = 1;
  }

  // A terminal vertex v₁ and its neighbour u₁ inside B_s(z₁).
  VertexAddress v1;
  bool have = false;
  for (const auto& [x, y] : base.pairs()) {
    if (t.distance(z1, x) == s) {
      v1 = x;
      have = true;
      break;
    }
  }
  if (!have) throw Error(ErrorCode::CannotTransportInTruncation, "no terminal vertex");
  const VertexAddress u1 = t.geodesic(v1, z1)[1];
  const VertexAddress v2 = base.at(v1), u2 = base.at(u1);

  int n = std::max(2 * s, 1);
  if (n % 2 != v1.i % 2) ++n;
  const VertexAddress xn = ray_vertex(1, n);
  const VertexAddress xn1 = n - 1 == 0 ? base_vertex() : ray_vertex(1, n - 1);

  GreedyOptions topt;
  topt.mode = MatchMode::Type;
  auto transport = [&](const VertexAddress& v, const VertexAddress& u) {
    TreeMap seed;
    seed.set(v, xn);
    seed.set(u, xn1);
    return greedy_extend(t, seed, v, s + radius, topt);
  };
  const TreeMap f1 = transport(v1, u1);
  const TreeMap f2 = transport(v2, u2);

  // ψ = f₂ φ f₁⁻¹ on T₁ = f₁(S₁) fixes x_n and x_{n-1}.
  const TreeMap psi = compose(f2, compose(base, f1.inverse()));
  if (psi.size() != base.size() || !psi.level_preserving())
    throw Error(ErrorCode::CannotTransportInTruncation, "transported map is not level-preserving");
  const TreeMap g = greedy_extend(t, psi, f1.at(z1), radius);

  const TreeMap f = compose(f2.inverse(), compose(g, f1));
  const std::vector<VertexAddress> target = t.ball(z1, radius).vertices();
  TreeMap out = f.restrict_to(target);
  if (out.size() != target.size())
    throw Error(ErrorCode::CannotTransportInTruncation, "conjugated map misses part of the ball");
  return out;
}

}  // namespace nagao
