#include "nagao/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nagao/error.hpp"

namespace nagao {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::IndexTooSmall: return "IndexTooSmall";
    case ErrorCode::RootGroupTooSmall: return "RootGroupTooSmall";
    case ErrorCode::BadAction: return "BadAction";
    case ErrorCode::BadSchedule: return "BadSchedule";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonCanonicalAddress: return "NonCanonicalAddress";
    case ErrorCode::NotInTruncation: return "NotInTruncation";
    case ErrorCode::LevelZeroBase: return "LevelZeroBase";
    case ErrorCode::LevelTooHigh: return "LevelTooHigh";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotSameHorosphere: return "NotSameHorosphere";
    case ErrorCode::NotInGraph: return "NotInGraph";
    case ErrorCode::NotLevelPreserving: return "NotLevelPreserving";
    case ErrorCode::NotIsomorphism: return "NotIsomorphism";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::InputNotLevelPreserving: return "InputNotLevelPreserving";
    case ErrorCode::CannotExtendInTruncation: return "CannotExtendInTruncation";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::CannotTransportInTruncation: return "CannotTransportInTruncation";
    case ErrorCode::NotBiregular: return "NotBiregular";
  }
  return "Unknown";
}

FiniteGroup FiniteGroup::from_table(const Table& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::BadTable, "empty table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) {
      throw Error(ErrorCode::BadTable, "row " + std::to_string(a) + " has wrong length");
    }
    for (int b = 0; b < n; ++b) {
      if (table[a][b] < 0 || table[a][b] >= n) {
        throw Error(ErrorCode::BadTable, "entry (" + std::to_string(a) + "," +
                                             std::to_string(b) + ") out of range");
      }
    }
  }

  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    std::copy(table[a].begin(), table[a].end(), g.table_.begin() + static_cast<size_t>(a) * n);
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "," +
                                                     std::to_string(b) + "," +
                                                     std::to_string(c) + ")");
        }
      }
    }
  }

  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool two_sided = true;
    for (int b = 0; b < n && two_sided; ++b) {
      two_sided = g.mul(a, b) == b && g.mul(b, a) == b;
    }
    if (two_sided) e = a;
  }
  if (e < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity");
  g.identity_ = e;

  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == e && g.mul(b, a) == e) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] < 0) throw Error(ErrorCode::NoInverse, "element " + std::to_string(a));
  }
  return g;
}

Table FiniteGroup::table() const {
  Table t(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a)
    for (int b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

FiniteGroup build_group(const Table& table) { return FiniteGroup::from_table(table); }

Subgroup Subgroup::of(const FiniteGroup& parent, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup h;
  h.mask_.assign(parent.order(), false);
  for (int m : members) {
    if (m < 0 || m >= parent.order()) {
      throw Error(ErrorCode::NotSubgroup, "member " + std::to_string(m) + " out of range");
    }
    h.mask_[m] = true;
  }
  if (!h.mask_[parent.identity()]) throw Error(ErrorCode::NotSubgroup, "identity missing");
  for (int a : members) {
    if (!h.mask_[parent.inv(a)]) {
      throw Error(ErrorCode::NotSubgroup, "inverse of " + std::to_string(a) + " missing");
    }
    for (int b : members) {
      if (!h.mask_[parent.mul(a, b)]) {
        throw Error(ErrorCode::NotSubgroup,
                    "product " + std::to_string(a) + "*" + std::to_string(b) + " missing");
      }
    }
  }
  h.members_ = std::move(members);
  return h;
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) { return of(parent, {parent.identity()}); }

Subgroup Subgroup::generated(const FiniteGroup& parent, const std::vector<int>& gens) {
  std::vector<int> members{parent.identity()};
  std::vector<bool> seen(parent.order(), false);
  seen[parent.identity()] = true;
  for (size_t idx = 0; idx < members.size(); ++idx) {
    for (int g : gens) {
      const int p = parent.mul(members[idx], g);
      if (!seen[p]) {
        seen[p] = true;
        members.push_back(p);
      }
    }
  }
  return of(parent, std::move(members));
}

CosetDecomposition::CosetDecomposition(const FiniteGroup& g, const Subgroup& h) {
  const int n = g.order();
  for (int m : h.members()) {
    if (m >= n) throw Error(ErrorCode::NotSubgroup, "subgroup does not belong to group");
  }
  coset_of_.assign(n, 0);
  h_part_.assign(n, -1);

  auto add_coset = [&](int rep) {
    reps_.push_back(rep);
    const int s = static_cast<int>(reps_.size());
    for (int m : h.members()) {
      const int x = g.mul(rep, m);
      coset_of_[x] = s;
      h_part_[x] = m;
    }
  };
  add_coset(g.identity());
  for (int x = 0; x < n; ++x) {
    if (coset_of_[x] == 0) add_coset(x);
  }
}

std::vector<int> coset_reps(const FiniteGroup& g, const Subgroup& h) {
  return CosetDecomposition(g, h).reps();
}

GroupAction GroupAction::trivial(const Subgroup& acting, const FiniteGroup& target) {
  GroupAction a;
  std::vector<int> id(target.order());
  std::iota(id.begin(), id.end(), 0);
  for (int h : acting.members()) a.images[h] = id;
  return a;
}

ActionReport validate_action(const FiniteGroup& parent, const Subgroup& acting,
                             const FiniteGroup& target, const GroupAction& action) {
  ActionReport report;
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };
  const int n = target.order();
  for (int h : acting.members()) {
    auto it = action.images.find(h);
    if (it == action.images.end() || static_cast<int>(it->second.size()) != n) {
      fail("missing or malformed image table for acting element " + std::to_string(h));
      continue;
    }
    const auto& img = it->second;
    std::vector<bool> hit(n, false);
    for (int u = 0; u < n; ++u) {
      if (img[u] < 0 || img[u] >= n) {
        fail("image out of range for h=" + std::to_string(h) + " u=" + std::to_string(u));
        continue;
      }
      hit[img[u]] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
      fail("h=" + std::to_string(h) + " is not a bijection");
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (img[target.mul(a, b)] != target.mul(img[a], img[b])) {
          fail("h=" + std::to_string(h) + " not multiplicative on (" + std::to_string(a) +
               "," + std::to_string(b) + ")");
          a = n;
          break;
        }
      }
    }
  }
  if (!report.valid) return report;

  for (int u = 0; u < n; ++u) {
    if (action.apply(parent.identity(), u) != u) {
      fail("identity moves " + std::to_string(u));
      break;
    }
  }
  for (int h1 : acting.members()) {
    for (int h2 : acting.members()) {
      const int h12 = parent.mul(h1, h2);
      for (int u = 0; u < n; ++u) {
        if (action.apply(h1, action.apply(h2, u)) != action.apply(h12, u)) {
          fail("composition fails at (" + std::to_string(h1) + "," + std::to_string(h2) +
               ") on " + std::to_string(u));
          return report;
        }
      }
    }
  }
  return report;
}

FiniteGroup cyclic_group(int n) {
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table(t);
}

FiniteGroup symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);

  const int order = static_cast<int>(perms.size());
  Table t(order, std::vector<int>(order));
  std::vector<int> c(n);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
  }
  return FiniteGroup::from_table(t);
}

FiniteGroup affine_group(int p) {
  const int order = p * (p - 1);
  Table t(order, std::vector<int>(order));
  for (int f = 0; f < order; ++f) {
    const int a = f / p + 1, b = f % p;
    for (int g = 0; g < order; ++g) {
      const int c = g / p + 1, d = g % p;
      // (a,b)∘(c,d): x ↦ a(cx+d)+b
      const int ac = (a * c) % p;
      const int e = (a * d + b) % p;
      t[f][g] = (ac - 1) * p + e;
    }
  }
  return FiniteGroup::from_table(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int nb = b.order();
  const int order = a.order() * nb;
  Table t(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup::from_table(t);
}

nlohmann::json group_to_json(const FiniteGroup& g) {
  return nlohmann::json{{"order", g.order()}, {"table", g.table()}};
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("table")) {
    throw Error(ErrorCode::ParseError, "group must be an object with a table");
  }
  Table t;
  try {
    t = j.at("table").get<Table>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("group table: ") + e.what());
  }
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(t.size())) {
    throw Error(ErrorCode::BadTable, "declared order does not match table size");
  }
  return FiniteGroup::from_table(t);
}

}  // namespace nagao
