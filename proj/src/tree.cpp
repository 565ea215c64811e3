#include "nagao/tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <sstream>

#include "nagao/error.hpp"

namespace nagao {

std::strong_ordering VertexAddress::operator<=>(const VertexAddress& o) const {
  if (auto c = w.length() <=> o.w.length(); c != 0) return c;
  if (auto c = w <=> o.w; c != 0) return c;
  if (auto c = i <=> o.i; c != 0) return c;
  return s <=> o.s;
}

size_t VertexHash::operator()(const VertexAddress& v) const noexcept {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<uint64_t>(v.i) * 131 + static_cast<uint64_t>(v.s));
  for (const Syllable& syl : v.w.syllables) {
    mix(static_cast<uint64_t>(syl.s) | 0x100u);
    for (const auto& [j, u] : syl.t.entries) mix((static_cast<uint64_t>(j) << 20) ^ u);
  }
  return static_cast<size_t>(h);
}

VertexAddress base_vertex() { return VertexAddress{}; }

VertexAddress ray_vertex(int s, int i) { return i == 0 ? base_vertex() : VertexAddress{{}, s, i}; }

std::string to_string(const VertexAddress& v) {
  std::ostringstream out;
  out << to_string(v.w) << ".x[" << v.i;
  if (v.i > 0) out << ',' << v.s;
  out << ']';
  return out.str();
}

nlohmann::json address_to_json(const VertexAddress& v) {
  return {{"w", word_to_json(v.w)}, {"s", v.s}, {"i", v.i}};
}

VertexAddress address_from_json(const nlohmann::json& j) {
  try {
    VertexAddress v;
    v.w = word_from_json(j.at("w"));
    v.i = j.at("i").get<int>();
    v.s = v.i == 0 ? 0 : j.at("s").get<int>();
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("vertex address: ") + e.what());
  }
}

bool Tree::is_canonical(const VertexAddress& v) const {
  if (v.i < 0 || !is_normal(*d_, v.w)) return false;
  if (v.i == 0) return v.s == 0;
  if (v.s < 1 || v.s > d_->k()) return false;
  return canon_coset(*d_, v.w, v.i, v.s) == v.w;
}

void Tree::require_canonical(const VertexAddress& v) const {
  if (!is_canonical(v)) throw Error(ErrorCode::NonCanonicalAddress, to_string(v));
}

namespace {

VertexAddress make_address(const NagaoDatum& d, const DeltaWord& w, int s, int i) {
  if (i == 0) return VertexAddress{w, 0, 0};
  return VertexAddress{canon_coset(d, w, i, s), s, i};
}

}  // namespace

VertexAddress Tree::up(const VertexAddress& v) const {
  return make_address(*d_, v.w, v.s, v.i + 1);
}

std::vector<VertexAddress> Tree::neighbors(const VertexAddress& v) const {
  require_canonical(v);
  std::vector<VertexAddress> out;
  if (v.i == 0) {
    out.reserve(d_->k());
    for (int s = 1; s <= d_->k(); ++s) out.push_back(make_address(*d_, v.w, s, 1));
    return out;
  }
  const FiniteGroup& ui = d_->root_group(v.i);
  out.reserve(ui.order() + 1);
  out.push_back(up(v));
  for (int u = 0; u < ui.order(); ++u) {
    out.push_back(make_address(*d_, delta_mul(*d_, v.w, root_word(*d_, v.s, v.i, u)), v.s, v.i - 1));
  }
  return out;
}

bool Tree::adjacent(const VertexAddress& a, const VertexAddress& b) const {
  if (std::abs(a.i - b.i) != 1) return false;
  const VertexAddress& low = a.i < b.i ? a : b;
  const VertexAddress& high = a.i < b.i ? b : a;
  if (low.i > 0) return up(low) == high;
  // low at level 0: high = low.w.x_{1,s}
  return make_address(*d_, low.w, high.s, 1) == high;
}

VertexAddress Tree::toward_base(const VertexAddress& v) const {
  if (v.i == 0) {
    if (v.w.empty()) throw std::logic_error("x0 has no step toward itself");
    // Reached from w.x_{1,s'} where s' is the index of the last syllable.
    return make_address(*d_, v.w, v.w.syllables.back().s, 1);
  }
  if (!v.w.empty() && v.w.syllables.back().s == v.s) return up(v);
  return make_address(*d_, v.w, v.s, v.i - 1);
}

std::vector<VertexAddress> Tree::path_to_base(const VertexAddress& v) const {
  std::vector<VertexAddress> path{v};
  while (!(path.back().i == 0 && path.back().w.empty())) path.push_back(toward_base(path.back()));
  return path;
}

std::vector<VertexAddress> Tree::geodesic(const VertexAddress& a, const VertexAddress& b) const {
  std::vector<VertexAddress> pa = path_to_base(a);
  std::vector<VertexAddress> pb = path_to_base(b);
  while (pa.size() >= 2 && pb.size() >= 2 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
    pa.pop_back();
    pb.pop_back();
  }
  // pa.back() == pb.back() is the meeting vertex.
  pb.pop_back();
  pa.insert(pa.end(), pb.rbegin(), pb.rend());
  return pa;
}

int Tree::distance(const VertexAddress& a, const VertexAddress& b) const {
  return static_cast<int>(geodesic(a, b).size()) - 1;
}

VertexAddress Tree::act(const GammaElement& g, const VertexAddress& v) const {
  // γδ.(wγ_s.x_i) = conj(γ, δw) γ_{s'} h.x_i with γγ_s = γ_{s'}h, and h fixes x_i.
  DeltaWord w = gamma0_conj(*d_, g.g0, delta_mul(*d_, g.w, v.w));
  if (v.i == 0) return VertexAddress{std::move(w), 0, 0};
  const int s2 = d_->cosets().coset_of(d_->gamma0().mul(g.g0, d_->rep(v.s)));
  return make_address(*d_, w, s2, v.i);
}

VertexAddress Tree::act(const DeltaWord& w, const VertexAddress& v) const {
  if (v.i == 0) return VertexAddress{delta_mul(*d_, w, v.w), 0, 0};
  return make_address(*d_, delta_mul(*d_, w, v.w), v.s, v.i);
}

TruncatedTree Tree::ball(const VertexAddress& center, int radius) const {
  require_canonical(center);
  TruncatedTree t;
  t.radius_ = radius;
  t.vertices_.push_back(center);
  t.adj_.emplace_back();
  t.depth_.push_back(0);
  t.parent_.push_back(-1);
  t.degree_.push_back(degree(center));
  t.index_.emplace(center, 0);
  for (size_t idx = 0; idx < t.vertices_.size(); ++idx) {
    if (t.depth_[idx] == radius) continue;
    const VertexAddress v = t.vertices_[idx];
    for (VertexAddress& n : neighbors(v)) {
      auto it = t.index_.find(n);
      if (it != t.index_.end()) continue;  // the parent
      const int id = static_cast<int>(t.vertices_.size());
      t.index_.emplace(n, id);
      t.degree_.push_back(degree(n));
      t.vertices_.push_back(std::move(n));
      t.adj_.emplace_back();
      t.depth_.push_back(t.depth_[idx] + 1);
      t.parent_.push_back(static_cast<int>(idx));
      t.adj_[idx].push_back(id);
      t.adj_[id].push_back(static_cast<int>(idx));
    }
  }
  return t;
}

int TruncatedTree::find(const VertexAddress& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

int TruncatedTree::at(const VertexAddress& v) const {
  const int idx = find(v);
  if (idx < 0) throw Error(ErrorCode::NotInTruncation, to_string(v));
  return idx;
}

size_t TruncatedTree::edge_count() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }

std::vector<VertexAddress> TruncatedTree::geodesic(const VertexAddress& a,
                                                   const VertexAddress& b) const {
  int x = at(a), y = at(b);
  std::vector<VertexAddress> front, back;
  while (x != y) {
    if (depth_[x] >= depth_[y]) {
      front.push_back(vertices_[x]);
      x = parent_[x];
    } else {
      back.push_back(vertices_[y]);
      y = parent_[y];
    }
  }
  front.push_back(vertices_[x]);
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

int TruncatedTree::distance(const VertexAddress& a, const VertexAddress& b) const {
  return static_cast<int>(geodesic(a, b).size()) - 1;
}

nlohmann::json TruncatedTree::to_json() const {
  nlohmann::json j;
  j["center"] = address_to_json(center());
  j["radius"] = radius_;
  j["vertices"] = nlohmann::json::array();
  j["edges"] = nlohmann::json::array();
  for (size_t idx = 0; idx < vertices_.size(); ++idx) {
    j["vertices"].push_back({{"id", idx},
                             {"address", address_to_json(vertices_[idx])},
                             {"level", vertices_[idx].i},
                             {"depth", depth_[idx]}});
    if (parent_[idx] >= 0) j["edges"].push_back({parent_[idx], idx});
  }
  return j;
}

std::string TruncatedTree::to_dot() const {
  std::ostringstream out;
  out << "graph ball {\n  rankdir=BT;\n";
  int max_level = 0;
  for (const auto& v : vertices_) max_level = std::max(max_level, v.i);
  for (int l = 0; l <= max_level; ++l) {
    out << "  { rank=same;";
    for (size_t idx = 0; idx < vertices_.size(); ++idx) {
      if (vertices_[idx].i == l) out << " v" << idx << ';';
    }
    out << " }\n";
  }
  for (size_t idx = 0; idx < vertices_.size(); ++idx) {
    out << "  v" << idx << " [label=\"" << to_string(vertices_[idx]) << "\"];\n";
  }
  for (size_t idx = 0; idx < vertices_.size(); ++idx) {
    if (parent_[idx] >= 0) out << "  v" << parent_[idx] << " -- v" << idx << ";\n";
  }
  out << "}\n";
  return out.str();
}

UniformPiece uniform_piece(const Tree& tree, int i, int radius) {
  const NagaoDatum& d = tree.datum();
  UniformPiece piece;
  piece.i = i;
  TruncatedTree ball = tree.ball(base_vertex(), radius);
  // Y_i ∩ ball: flood from x₀ through vertices of level ≤ i (balls are convex).
  std::vector<bool> seen(ball.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    piece.vertices.push_back(ball.vertex(v));
    for (int n : ball.adjacent(v)) {
      if (!seen[n] && ball.level(n) <= i) {
        seen[n] = true;
        queue.push_back(n);
      }
    }
  }
  std::sort(piece.vertices.begin(), piece.vertices.end());
  for (int s = 1; s <= d.k(); ++s) {
    for (int j = 1; j <= i; ++j) {
      const FiniteGroup& u = d.root_group(j);
      for (int x = 0; x < u.order(); ++x) {
        if (x != u.identity()) piece.generators.push_back(root_word(d, s, j, x));
      }
    }
  }
  piece.fundamental_domain.push_back(base_vertex());
  for (int s = 1; s <= d.k(); ++s) {
    for (int l = 1; l <= std::min(i, radius); ++l) piece.fundamental_domain.push_back(ray_vertex(s, l));
  }
  return piece;
}

bool is_biregular(const NagaoDatum& d) { return d.profile().biregular; }

LevelReconstruction level_from_degrees(const TruncatedTree& ball, const NagaoDatum& d,
                                       int inner_radius, int max_level) {
  using Mask = uint64_t;
  max_level = std::min(max_level, 62);
  const int n = static_cast<int>(ball.size());
  auto bit = [](int l) { return l < 0 ? Mask{0} : Mask{1} << l; };

  std::vector<Mask> dom(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int l = 0; l <= max_level; ++l) {
      if (d.degree(l) == ball.tree_degree(v)) dom[v] |= bit(l);
    }
  }

  auto supported = [&](int v, int l) {
    const auto& nbrs = ball.adjacent(v);
    const bool full = ball.interior(v);
    const Mask around = bit(l - 1) | bit(l + 1);
    int up_possible = 0, forced_up = 0;
    for (int x : nbrs) {
      if ((dom[x] & around) == 0) return false;
      if (l == 0 && (dom[x] & bit(1)) == 0) return false;
      if (dom[x] & bit(l + 1)) ++up_possible;
      if ((dom[x] & around) == bit(l + 1)) ++forced_up;
    }
    if (l == 0) return true;
    if (forced_up > 1) return false;
    return !full || up_possible >= 1;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      Mask keep = 0;
      for (Mask m = dom[v]; m; m &= m - 1) {
        const int l = std::countr_zero(m);
        if (supported(v, l)) keep |= bit(l);
      }
      if (keep != dom[v]) {
        dom[v] = keep;
        changed = true;
      }
      if (std::popcount(dom[v]) != 1) continue;
      const int l = std::countr_zero(dom[v]);
      const auto& nbrs = ball.adjacent(v);
      if (l == 0) {
        for (int x : nbrs) {
          if (dom[x] != bit(1)) {
            dom[x] &= bit(1);
            changed = true;
          }
        }
        continue;
      }
      int candidate = -1, up_possible = 0;
      bool some_forced = false;
      for (int x : nbrs) {
        if (dom[x] & bit(l + 1)) {
          ++up_possible;
          candidate = x;
        }
        if ((dom[x] & (bit(l - 1) | bit(l + 1))) == bit(l + 1)) some_forced = true;
      }
      if (ball.interior(v) && up_possible == 1 && (dom[candidate] & ~bit(l + 1))) {
        dom[candidate] &= bit(l + 1);
        changed = true;
      }
      if (some_forced) {
        for (int x : nbrs) {
          if ((dom[x] & (bit(l - 1) | bit(l + 1))) != bit(l + 1) && (dom[x] & bit(l + 1))) {
            dom[x] &= ~bit(l + 1);
            changed = true;
          }
        }
      }
    }
  }

  LevelReconstruction out;
  out.levels.resize(n);
  for (int v = 0; v < n; ++v) {
    if (std::popcount(dom[v]) == 1) {
      out.levels[v] = std::countr_zero(dom[v]);
    } else if (ball.depth(v) <= inner_radius) {
      out.ambiguous = true;
    }
  }
  return out;
}

}  // namespace nagao
