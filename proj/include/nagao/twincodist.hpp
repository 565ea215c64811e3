#pragma once

// The codistance from a fixed negative vertex v₋, realised as the level
// function, with the one-sided codistance axioms checked on a ball; vertex
// types and the infinite star of x₀.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nagao/report.hpp"
#include "nagao/tree.hpp"

namespace nagao {

struct CodistanceTable {
  std::string base_tag = "v-";
  std::string datum;  // used to label reports
  int radius = 0;
  std::map<VertexAddress, int> values;

  /// Throws NotInTruncation.
  int value(const VertexAddress& v) const;
  /// {"base": tag, "datum": name, "radius": ρ, "values": {address: value}}.
  nlohmann::json to_json() const;
};

/// values(x) = ℓ(x) on the ball.
CodistanceTable synthesize_codistance(const Tree& t, const TruncatedTree& ball);

/// For every interior vertex with value m: all neighbours have value m ± 1,
/// and exactly one has m + 1 when m > 0. Also checks the table is total.
Report verify_codist(const CodistanceTable& table, const TruncatedTree& ball);

/// Levels recomputed by breadth-first search from the centre, stepping +1
/// along up-edges and −1 otherwise, compared with the table.
RuleResult check_levels_bfs(const Tree& t, const CodistanceTable& table, const TruncatedTree& ball);

/// x₀ and the vertices x_{i,s} of the k level-increasing rays through the
/// neighbours of x₀ that lie in the ball.
std::vector<VertexAddress> infinite_star(const Tree& t, const TruncatedTree& ball);

/// Level parity.
inline int vertex_type(const VertexAddress& v) { return v.i % 2; }

}  // namespace nagao
