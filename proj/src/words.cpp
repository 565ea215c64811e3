#include "nagao/words.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "nagao/error.hpp"

namespace nagao {

int Tuple::at(int j) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(j, -1));
  return it != entries.end() && it->first == j ? it->second : -1;
}

Tuple tuple_mul(const NagaoDatum& d, const Tuple& a, const Tuple& b) {
  Tuple out;
  out.entries.reserve(a.entries.size() + b.entries.size());
  auto ia = a.entries.begin(), ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      out.entries.push_back(*ia++);
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      out.entries.push_back(*ib++);
    } else {
      const FiniteGroup& u = d.root_group(ia->first);
      const int p = u.mul(ia->second, ib->second);
      if (p != u.identity()) out.entries.emplace_back(ia->first, p);
      ++ia;
      ++ib;
    }
  }
  return out;
}

Tuple tuple_inv(const NagaoDatum& d, const Tuple& a) {
  Tuple out = a;
  for (auto& [j, u] : out.entries) u = d.root_group(j).inv(u);
  return out;
}

Tuple tuple_act(const NagaoDatum& d, int h, const Tuple& a) {
  Tuple out;
  out.entries.reserve(a.entries.size());
  for (const auto& [j, u] : a.entries) {
    const int img = d.act_root(h, j, u);
    if (img != d.root_group(j).identity()) out.entries.emplace_back(j, img);
  }
  return out;
}

Tuple tuple_single(const NagaoDatum& d, int j, int u) {
  Tuple t;
  if (u != d.root_group(j).identity()) t.entries.emplace_back(j, u);
  return t;
}

DeltaWord syllable_word(int s, Tuple t) {
  DeltaWord w;
  if (!t.empty()) w.syllables.push_back(Syllable{s, std::move(t)});
  return w;
}

DeltaWord root_word(const NagaoDatum& d, int s, int j, int u) {
  return syllable_word(s, tuple_single(d, j, u));
}

bool is_normal(const NagaoDatum& d, const DeltaWord& w) {
  for (size_t n = 0; n < w.syllables.size(); ++n) {
    const Syllable& syl = w.syllables[n];
    if (syl.s < 1 || syl.s > d.k() || syl.t.empty()) return false;
    if (n > 0 && w.syllables[n - 1].s == syl.s) return false;
    int prev = 0;
    for (const auto& [j, u] : syl.t.entries) {
      if (j <= prev) return false;
      if (u == d.root_group(j).identity()) return false;
      prev = j;
    }
  }
  return true;
}

DeltaWord delta_mul(const NagaoDatum& d, const DeltaWord& a, const DeltaWord& b) {
  DeltaWord out = a;
  for (const Syllable& syl : b.syllables) {
    if (!out.syllables.empty() && out.syllables.back().s == syl.s) {
      Tuple merged = tuple_mul(d, out.syllables.back().t, syl.t);
      if (merged.empty()) {
        out.syllables.pop_back();
      } else {
        out.syllables.back().t = std::move(merged);
      }
    } else {
      out.syllables.push_back(syl);
    }
  }
  return out;
}

DeltaWord delta_inv(const NagaoDatum& d, const DeltaWord& a) {
  DeltaWord out;
  out.syllables.reserve(a.syllables.size());
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
    out.syllables.push_back(Syllable{it->s, tuple_inv(d, it->t)});
  }
  return out;
}

DeltaWord gamma0_conj(const NagaoDatum& d, int g, const DeltaWord& w) {
  // γ γ_s v γ_s⁻¹ γ⁻¹ = γ_{s'} θ_h(v) γ_{s'}⁻¹ where γγ_s = γ_{s'} h.
  // Left multiplication permutes cosets, so distinct neighbours stay distinct.
  if (g == d.gamma0().identity()) return w;
  DeltaWord out;
  out.syllables.reserve(w.syllables.size());
  const auto& cosets = d.cosets();
  for (const Syllable& syl : w.syllables) {
    const int x = d.gamma0().mul(g, d.rep(syl.s));
    Tuple t = tuple_act(d, cosets.h_part(x), syl.t);
    if (t.empty()) continue;  // only reachable with a corrupted action
    out = delta_mul(d, out, syllable_word(cosets.coset_of(x), std::move(t)));
  }
  return out;
}

GammaElement gamma_identity(const NagaoDatum& d) { return {d.gamma0().identity(), {}}; }

GammaElement gamma_of(const NagaoDatum& d, const DeltaWord& w) {
  return {d.gamma0().identity(), w};
}

GammaElement gamma_of(int g0, DeltaWord w) { return {g0, std::move(w)}; }

GammaElement gamma_mul(const NagaoDatum& d, const GammaElement& a, const GammaElement& b) {
  // g w g' w' = g g' (g'⁻¹ w g') w'
  const int gg = d.gamma0().mul(a.g0, b.g0);
  return {gg, delta_mul(d, gamma0_conj(d, d.gamma0().inv(b.g0), a.w), b.w)};
}

GammaElement gamma_inv(const NagaoDatum& d, const GammaElement& a) {
  // (g w)⁻¹ = w⁻¹ g⁻¹ = g⁻¹ (g w⁻¹ g⁻¹)
  return {d.gamma0().inv(a.g0), gamma0_conj(d, a.g0, delta_inv(d, a.w))};
}

bool in_delta(const NagaoDatum& d, const GammaElement& g) {
  return g.g0 == d.gamma0().identity();
}

DeltaWord canon_coset(const NagaoDatum& d, const DeltaWord& w, int i, int s) {
  (void)d;
  if (i == 0 || w.empty() || w.syllables.back().s != s) return w;
  DeltaWord out = w;
  auto& entries = out.syllables.back().t.entries;
  entries.erase(entries.begin(),
                std::upper_bound(entries.begin(), entries.end(), std::make_pair(i, INT32_MAX)));
  if (entries.empty()) out.syllables.pop_back();
  return out;
}

nlohmann::json word_to_json(const DeltaWord& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Syllable& syl : w.syllables) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [j, u] : syl.t.entries) t[std::to_string(j)] = u;
    arr.push_back({{"s", syl.s}, {"t", t}});
  }
  return arr;
}

DeltaWord word_from_json(const nlohmann::json& j) {
  DeltaWord w;
  try {
    for (const auto& item : j) {
      Syllable syl;
      syl.s = item.at("s").get<int>();
      for (const auto& [key, value] : item.at("t").items()) {
        syl.t.entries.emplace_back(std::stoi(key), value.get<int>());
      }
      std::sort(syl.t.entries.begin(), syl.t.entries.end());
      w.syllables.push_back(std::move(syl));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("word: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, std::string("word key: ") + e.what());
  }
  return w;
}

std::string to_string(const DeltaWord& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (size_t n = 0; n < w.syllables.size(); ++n) {
    if (n) out << '.';
    out << '(' << w.syllables[n].s << ':';
    bool first = true;
    for (const auto& [j, u] : w.syllables[n].t.entries) {
      out << (first ? "" : ",") << 'u' << j << '=' << u;
      first = false;
    }
    out << ')';
  }
  return out.str();
}

std::vector<Tuple> enumerate_tuples(const NagaoDatum& d, int max_support) {
  std::vector<Tuple> all{Tuple{}};
  for (int j = 1; j <= max_support; ++j) {
    std::vector<Tuple> next;
    for (const Tuple& t : all)
      for (int u = 0; u < d.root_group(j).order(); ++u)
        next.push_back(tuple_mul(d, t, tuple_single(d, j, u)));
    all = std::move(next);
  }
  all.erase(all.begin());  // the empty tuple comes first
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

// Depth-first over words of exactly `remaining` more syllables.
bool visit_words(const NagaoDatum& d, const std::vector<Tuple>& tuples, DeltaWord& w, int remaining,
                 const std::function<bool(const DeltaWord&)>& visit) {
  if (remaining == 0) return visit(w);
  for (int s = 1; s <= d.k(); ++s) {
    if (!w.empty() && w.syllables.back().s == s) continue;
    for (const Tuple& t : tuples) {
      w.syllables.push_back(Syllable{s, t});
      const bool stop = visit_words(d, tuples, w, remaining - 1, visit);
      w.syllables.pop_back();
      if (stop) return true;
    }
  }
  return false;
}

}  // namespace

bool for_each_word(const NagaoDatum& d, int max_syllables, int max_support,
                   const std::function<bool(const DeltaWord&)>& visit) {
  const std::vector<Tuple> tuples = enumerate_tuples(d, max_support);
  DeltaWord w;
  for (int len = 0; len <= max_syllables; ++len)
    if (visit_words(d, tuples, w, len, visit)) return true;
  return false;
}

std::vector<DeltaWord> enumerate_words(const NagaoDatum& d, int max_syllables, int max_support) {
  std::vector<DeltaWord> out;
  for_each_word(d, max_syllables, max_support, [&](const DeltaWord& w) {
    out.push_back(w);
    return false;
  });
  return out;
}

DeltaWord sample_word(const NagaoDatum& d, std::mt19937& rng, int max_syllables, int max_support) {
  DeltaWord w;
  const int n = std::uniform_int_distribution<int>(0, max_syllables)(rng);
  while (static_cast<int>(w.length()) < n) {
    const int s = std::uniform_int_distribution<int>(1, d.k())(rng);
    if (!w.empty() && w.syllables.back().s == s) continue;
    Tuple t;
    for (int j = 1; j <= max_support; ++j) {
      const int u = std::uniform_int_distribution<int>(0, d.root_group(j).order() - 1)(rng);
      t = tuple_mul(d, t, tuple_single(d, j, u));
    }
    if (t.empty()) continue;
    w.syllables.push_back(Syllable{s, std::move(t)});
  }
  return w;
}

}  // namespace nagao
