#include "nagao/horo.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "nagao/error.hpp"

namespace nagao {

std::vector<VertexAddress> level_increasing_ray(const Tree& t, const VertexAddress& x, int len) {
  if (x.i == 0) throw Error(ErrorCode::LevelZeroBase, to_string(x));
  t.require_canonical(x);
  std::vector<VertexAddress> ray{x};
  for (int j = 0; j < len; ++j) ray.push_back(t.up(ray.back()));
  return ray;
}

bool same_horosphere(const Tree& t, const VertexAddress& x, const VertexAddress& y) {
  if (x.i != y.i || x.i == 0) return false;
  // Climbing only strips a final syllable of index s. Once neither address
  // ends in one, the rays are w.x_{j,s} for all further j and meet iff
  // (w, s) agree.
  auto settled = [](const VertexAddress& v) {
    return v.w.empty() || v.w.syllables.back().s != v.s;
  };
  VertexAddress a = x, b = y;
  while (a != b && !(settled(a) && settled(b))) {
    a = t.up(a);
    b = t.up(b);
  }
  return a.w == b.w && a.s == b.s;
}

namespace {

// Union-find over ball indices restricted to edges accepted by keep(u, v).
template <class Keep>
std::vector<int> label_components(const TruncatedTree& ball, Keep keep) {
  std::vector<int> parent(ball.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v = 1; v < static_cast<int>(ball.size()); ++v) {
    const int p = ball.parent(v);
    if (keep(p, v)) parent[find(v)] = find(p);
  }
  std::vector<int> label(ball.size());
  for (int v = 0; v < static_cast<int>(ball.size()); ++v) label[v] = find(v);
  return label;
}

std::vector<int> flood(const TruncatedTree& ball, int start, auto keep_vertex) {
  std::vector<int> out{start};
  std::vector<bool> seen(ball.size(), false);
  seen[start] = true;
  for (size_t n = 0; n < out.size(); ++n) {
    for (int x : ball.adjacent(out[n])) {
      if (!seen[x] && keep_vertex(x)) {
        seen[x] = true;
        out.push_back(x);
      }
    }
  }
  return out;
}

}  // namespace

HoroballView horoball(const TruncatedTree& ball, const VertexAddress& x) {
  if (x.i == 0) throw Error(ErrorCode::LevelZeroBase, to_string(x));
  const int start = ball.at(x);
  HoroballView view;
  view.base = x;
  view.radius = ball.radius();
  for (int v : flood(ball, start, [&](int y) { return ball.level(y) >= x.i; })) {
    view.vertices.push_back(ball.vertex(v));
    if (ball.level(v) == x.i) view.horosphere.push_back(ball.vertex(v));
  }
  std::sort(view.vertices.begin(), view.vertices.end());
  std::sort(view.horosphere.begin(), view.horosphere.end());
  return view;
}

std::vector<VertexAddress> horosphere(const TruncatedTree& ball, const VertexAddress& x) {
  return horoball(ball, x).horosphere;
}

Component component(const TruncatedTree& ball, const VertexAddress& x, int i) {
  if (x.i > i) throw Error(ErrorCode::LevelTooHigh, to_string(x) + " above level " + std::to_string(i));
  const int start = ball.at(x);
  Component c;
  c.i = i;
  for (int v : flood(ball, start, [&](int y) { return ball.level(y) <= i; })) {
    c.vertices.push_back(ball.vertex(v));
  }
  std::sort(c.vertices.begin(), c.vertices.end());
  c.anchor = c.vertices.front();
  return c;
}

ComponentGraph::ComponentGraph(const TruncatedTree& ball, int i) : ball_(&ball), i_(i) {
  const int n = static_cast<int>(ball.size());
  std::vector<int> low = label_components(
      ball, [&](int u, int v) { return ball.level(u) <= i && ball.level(v) <= i; });
  std::vector<int> high = label_components(
      ball, [&](int u, int v) { return ball.level(u) >= i && ball.level(v) >= i; });

  std::map<int, std::vector<VertexAddress>> members;
  for (int v = 0; v < n; ++v)
    if (ball.level(v) <= i) members[low[v]].push_back(ball.vertex(v));
  for (auto& [root, vs] : members) {
    std::sort(vs.begin(), vs.end());
    nodes_.push_back(Component{i, vs.front(), std::move(vs)});
  }
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Component& a, const Component& b) { return a.anchor < b.anchor; });

  std::map<int, int> node_of_root;
  for (int idx = 0; idx < size(); ++idx) node_of_root[low[ball.at(nodes_[idx].anchor)]] = idx;
  node_of_vertex_.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (ball.level(v) <= i) node_of_vertex_[v] = node_of_root.at(low[v]);

  // Level-i vertices of one horoball lie in pairwise distinct components and
  // are pairwise adjacent in 𝒢_i.
  std::map<int, std::vector<int>> horospheres;
  for (int v = 0; v < n; ++v)
    if (ball.level(v) == i) horospheres[high[v]].push_back(v);
  adj_.assign(size(), {});
  for (const auto& [root, hs] : horospheres) {
    for (size_t a = 0; a < hs.size(); ++a) {
      for (size_t b = a + 1; b < hs.size(); ++b) {
        int na = node_of_vertex_[hs[a]], nb = node_of_vertex_[hs[b]];
        VertexAddress xa = ball.vertex(hs[a]), xb = ball.vertex(hs[b]);
        if (na > nb) {
          std::swap(na, nb);
          std::swap(xa, xb);
        }
        witness_.emplace(std::make_pair(na, nb), Witness{xa, xb});
        adj_[na].push_back(nb);
        adj_[nb].push_back(na);
      }
    }
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool ComponentGraph::adjacent(int a, int b) const {
  return witness_.count({std::min(a, b), std::max(a, b)}) > 0;
}

int ComponentGraph::node_of(const VertexAddress& v) const {
  const int idx = ball_->find(v);
  if (idx < 0 || node_of_vertex_[idx] < 0) throw Error(ErrorCode::NotInGraph, to_string(v));
  return node_of_vertex_[idx];
}

int ComponentGraph::find_anchor(const VertexAddress& v) const {
  const int idx = ball_->find(v);
  if (idx < 0 || node_of_vertex_[idx] < 0) return -1;
  const int node = node_of_vertex_[idx];
  return nodes_[node].anchor == v ? node : -1;
}

Witness ComponentGraph::witness(int a, int b) const {
  auto it = witness_.find({std::min(a, b), std::max(a, b)});
  if (it == witness_.end()) {
    throw Error(ErrorCode::NotInGraph, "components " + std::to_string(a) + " and " +
                                           std::to_string(b) + " are not adjacent");
  }
  if (a < b) return it->second;
  return Witness{it->second.y, it->second.x};
}

std::vector<int> ComponentGraph::geodesic(int a, int b) const {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw Error(ErrorCode::NotInGraph, "node index");
  std::vector<int> prev(size(), -2);
  std::deque<int> queue{a};
  prev[a] = -1;
  while (!queue.empty() && prev[b] == -2) {
    const int v = queue.front();
    queue.pop_front();
    for (int x : adj_[v]) {
      if (prev[x] == -2) {
        prev[x] = v;
        queue.push_back(x);
      }
    }
  }
  std::vector<int> path;
  for (int v = b; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> ComponentGraph::geodesic_from_tree(int a, int b) const {
  std::vector<int> path;
  for (const VertexAddress& v : ball_->geodesic(nodes_[a].anchor, nodes_[b].anchor)) {
    if (v.i > i_) continue;
    const int node = node_of(v);
    if (path.empty() || path.back() != node) path.push_back(node);
  }
  return path;
}

bool ComponentGraph::is_geodesic(const std::vector<int>& path) const {
  for (size_t j = 0; j + 1 < path.size(); ++j)
    if (!adjacent(path[j], path[j + 1])) return false;
  for (size_t j = 0; j + 2 < path.size(); ++j)
    if (path[j + 2] == path[j] || adjacent(path[j], path[j + 2])) return false;
  return true;
}

size_t ComponentGraph::edge_count() const { return witness_.size(); }

std::string ComponentGraph::to_dot() const {
  std::ostringstream out;
  out << "graph G" << i_ << " {\n";
  for (int n = 0; n < size(); ++n) {
    out << "  c" << n << " [label=\"" << to_string(nodes_[n].anchor) << " (" << nodes_[n].vertices.size()
        << ")\"];\n";
  }
  for (const auto& [key, w] : witness_) {
    out << "  c" << key.first << " -- c" << key.second << " [label=\"" << to_string(w.x) << " ~ "
        << to_string(w.y) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nagao
