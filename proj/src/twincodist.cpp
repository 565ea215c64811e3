#include "nagao/twincodist.hpp"

#include <deque>

#include "nagao/error.hpp"

namespace nagao {

using nlohmann::json;

int CodistanceTable::value(const VertexAddress& v) const {
  const auto it = values.find(v);
  if (it == values.end()) throw Error(ErrorCode::NotInTruncation, to_string(v));
  return it->second;
}

json CodistanceTable::to_json() const {
  json vals = json::object();
  for (const auto& [v, m] : values) vals[to_string(v)] = m;
  return {{"base", base_tag}, {"datum", datum}, {"radius", radius}, {"values", std::move(vals)}};
}

CodistanceTable synthesize_codistance(const Tree& t, const TruncatedTree& ball) {
  CodistanceTable out;
  out.datum = t.datum().name();
  out.radius = ball.radius();
  for (const auto& v : ball.vertices()) out.values[v] = v.i;
  return out;
}

Report verify_codist(const CodistanceTable& table, const TruncatedTree& ball) {
  const std::string suite = table.datum + "/rho=" + std::to_string(ball.radius());
  Report rep;
  RuleResult& total = rep.rule("twincodist", suite, "codist.total");
  RuleResult& step = rep.rule("twincodist", suite, "codist.neighbours_differ_by_one");
  RuleResult& unique = rep.rule("twincodist", suite, "codist.unique_increase");

  for (const auto& v : ball.vertices())
    rep.check(total, table.values.count(v) > 0, [&] { return json{{"vertex", to_string(v)}}; });
  if (total.failed > 0) return rep;

  for (size_t n = 0; n < ball.size(); ++n) {
    const int idx = static_cast<int>(n);
    if (!ball.interior(idx)) continue;
    const VertexAddress& x = ball.vertex(idx);
    const int m = table.value(x);
    int up = 0;
    for (int a : ball.adjacent(idx)) {
      const int mv = table.value(ball.vertex(a));
      if (mv == m + 1) ++up;
      rep.check(step, mv == m + 1 || mv == m - 1, [&] {
        return json{{"vertex", to_string(x)}, {"value", m}, {"neighbour", to_string(ball.vertex(a))},
                    {"neighbour_value", mv}};
      });
    }
    if (m > 0)
      rep.check(unique, up == 1,
                [&] { return json{{"vertex", to_string(x)}, {"value", m}, {"increasing_neighbours", up}}; });
  }
  return rep;
}

RuleResult check_levels_bfs(const Tree& t, const CodistanceTable& table, const TruncatedTree& ball) {
  RuleResult r;
  std::vector<int> level(ball.size(), 0);
  std::vector<bool> seen(ball.size(), false);
  // Only differences are determined by the walk; anchor at the centre's level.
  level[0] = ball.center().i;
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const VertexAddress& x = ball.vertex(u);
    // Every edge at a level-0 vertex goes up.
    const std::optional<VertexAddress> upv = x.i > 0 ? std::optional(t.up(x)) : std::nullopt;
    for (int a : ball.adjacent(u)) {
      if (seen[a]) continue;
      seen[a] = true;
      level[a] = level[u] + (!upv || *upv == ball.vertex(a) ? 1 : -1);
      queue.push_back(a);
    }
  }
  for (size_t n = 0; n < ball.size(); ++n) {
    const VertexAddress& v = ball.vertex(static_cast<int>(n));
    const auto it = table.values.find(v);
    const bool ok = it != table.values.end() && it->second == level[n];
    ++r.checked;
    if (!ok && r.failed++ == 0)
      r.counterexample = json{{"vertex", to_string(v)}, {"bfs_level", level[n]},
                              {"value", it == table.values.end() ? json(nullptr) : json(it->second)}};
  }
  return r;
}

std::vector<VertexAddress> infinite_star(const Tree& t, const TruncatedTree& ball) {
  std::vector<VertexAddress> out;
  if (ball.contains(base_vertex())) out.push_back(base_vertex());
  // x_{i,s} is at distance i from x₀.
  const int reach = t.distance(ball.center(), base_vertex()) + ball.radius();
  for (int s = 1; s <= t.datum().k(); ++s)
    for (int i = 1; i <= reach; ++i)
      if (ball.contains(ray_vertex(s, i))) out.push_back(ray_vertex(s, i));
  return out;
}

}  // namespace nagao
