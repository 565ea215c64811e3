#include "nagao/datum.hpp"

#include <algorithm>
#include <numeric>

#include "nagao/error.hpp"

namespace nagao {

NagaoDatum::NagaoDatum(std::string name, std::shared_ptr<const FiniteGroup> gamma0, Subgroup h0,
                       std::vector<RootGroup> prefix, std::vector<RootGroup> period)
    : name_(std::move(name)),
      gamma0_(std::move(gamma0)),
      h0_(std::move(h0)),
      cosets_(*gamma0_, h0_),
      prefix_(std::move(prefix)),
      period_(std::move(period)) {}

const RootGroup& NagaoDatum::root(int j) const {
  if (j < 1) throw std::out_of_range("root groups are indexed from 1");
  if (j <= prefix_length()) return prefix_[j - 1];
  return period_[(j - 1 - prefix_length()) % period_length()];
}

int NagaoDatum::q(int i) const {
  if (i == 0) return k() - 1;
  return root_group(i).order();
}

LevelProfile NagaoDatum::profile() const {
  LevelProfile p;
  p.k = k();
  const int n = prefix_length() + 2 * std::lcm(period_length(), 2) + 3;
  for (int i = 0; i < n; ++i) p.q.push_back(q(i));
  p.biregular = true;
  for (int i = 0; i + 2 < n; ++i) {
    if (p.q[i] != p.q[i + 2]) p.biregular = false;
  }
  return p;
}

namespace {

RootGroup make_root(const RawDatum::Root& r, const Subgroup& h0) {
  RootGroup root;
  root.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(r.group));
  root.action = r.action ? *r.action : GroupAction::trivial(h0, *root.group);
  return root;
}

}  // namespace

NagaoDatum NagaoDatum::unchecked(const RawDatum& raw) {
  auto g0 = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(raw.gamma0));
  Subgroup h0 = Subgroup::of(*g0, raw.h0);
  std::vector<RootGroup> prefix, period;
  for (const auto& r : raw.prefix) prefix.push_back(make_root(r, h0));
  for (const auto& r : raw.period) period.push_back(make_root(r, h0));
  if (period.empty()) throw Error(ErrorCode::BadSchedule, "period must be non-empty");
  return NagaoDatum(raw.name, std::move(g0), std::move(h0), std::move(prefix), std::move(period));
}

NagaoDatum NagaoDatum::with_action_override(int j, int h, std::vector<int> images) const {
  NagaoDatum copy = *this;
  RootGroup* target = nullptr;
  if (j <= prefix_length()) {
    target = &copy.prefix_[j - 1];
  } else {
    target = &copy.period_[(j - 1 - prefix_length()) % period_length()];
  }
  target->action.images[h] = std::move(images);
  return copy;
}

NagaoDatum validate_datum(const RawDatum& raw) {
  if (raw.period.empty()) {
    throw Error(ErrorCode::BadSchedule, "root schedule needs a non-empty period");
  }
  NagaoDatum d = NagaoDatum::unchecked(raw);
  if (d.k() < 3) {
    throw Error(ErrorCode::IndexTooSmall,
                "[Γ₀:H₀] = " + std::to_string(d.k()) + " gives q₀ = " +
                    std::to_string(d.k() - 1) + " < 2");
  }
  const int distinct = d.prefix_length() + d.period_length();
  for (int j = 1; j <= distinct; ++j) {
    const RootGroup& r = d.root(j);
    if (r.group->order() < 2) {
      throw Error(ErrorCode::RootGroupTooSmall, "|U_" + std::to_string(j) + "| < 2");
    }
    ActionReport rep = validate_action(d.gamma0(), d.h0(), *r.group, r.action);
    if (!rep.valid) {
      throw Error(ErrorCode::BadAction, "U_" + std::to_string(j) + ": " + rep.violations.front());
    }
  }
  return d;
}

RawDatum builtin_raw(const std::string& name) {
  RawDatum raw;
  raw.name = name;
  auto root = [](const FiniteGroup& g) { return RawDatum::Root{g.table(), std::nullopt}; };
  if (name == "D0") {
    raw.gamma0 = cyclic_group(3).table();
    raw.h0 = {0};
    raw.period = {root(cyclic_group(2))};
  } else if (name == "D1") {
    // S3 with H₀ = ⟨(0 1)⟩; (0 1) is the permutation [1,0,2], element 2 of the table.
    raw.gamma0 = symmetric_group(3).table();
    raw.h0 = {0, 2};
    raw.period = {root(cyclic_group(2))};
  } else if (name == "D2") {
    // AGL(1,7) with H₀ the stabilizer of 0, i.e. the maps x ↦ ax.
    raw.gamma0 = affine_group(7).table();
    raw.h0 = {0, 7, 14, 21, 28, 35};
    raw.period = {root(cyclic_group(6))};
  } else if (name == "D3") {
    raw.gamma0 = cyclic_group(3).table();
    raw.h0 = {0};
    raw.period = {root(cyclic_group(2)), root(cyclic_group(3))};
  } else {
    throw Error(ErrorCode::UnknownName, name);
  }
  return raw;
}

NagaoDatum builtin(const std::string& name) { return validate_datum(builtin_raw(name)); }

std::vector<std::string> builtin_names() { return {"D0", "D1", "D2", "D3"}; }

namespace {

RawDatum::Root root_from_json(const nlohmann::json& j) {
  RawDatum::Root r;
  const nlohmann::json& g = j.contains("group") ? j.at("group") : j;
  r.group = group_from_json(g).table();
  if (j.contains("action")) {
    GroupAction a;
    for (const auto& [key, value] : j.at("action").items()) {
      a.images[std::stoi(key)] = value.get<std::vector<int>>();
    }
    r.action = std::move(a);
  }
  return r;
}

nlohmann::json root_to_json(const RawDatum::Root& r) {
  nlohmann::json j{{"group", {{"order", r.group.size()}, {"table", r.group}}}};
  if (r.action) {
    nlohmann::json a = nlohmann::json::object();
    for (const auto& [h, img] : r.action->images) a[std::to_string(h)] = img;
    j["action"] = a;
  }
  return j;
}

}  // namespace

RawDatum raw_datum_from_json(const nlohmann::json& j) {
  RawDatum raw;
  try {
    raw.name = j.value("name", std::string("file"));
    raw.gamma0 = group_from_json(j.at("gamma0")).table();
    raw.h0 = j.at("h0").get<std::vector<int>>();
    const auto& roots = j.at("roots");
    if (roots.contains("prefix")) {
      for (const auto& r : roots.at("prefix")) raw.prefix.push_back(root_from_json(r));
    }
    if (roots.contains("period")) {
      for (const auto& r : roots.at("period")) raw.period.push_back(root_from_json(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, std::string("action key: ") + e.what());
  }
  return raw;
}

nlohmann::json raw_datum_to_json(const RawDatum& raw) {
  nlohmann::json j;
  j["name"] = raw.name;
  j["gamma0"] = {{"order", raw.gamma0.size()}, {"table", raw.gamma0}};
  j["h0"] = raw.h0;
  j["roots"]["prefix"] = nlohmann::json::array();
  j["roots"]["period"] = nlohmann::json::array();
  for (const auto& r : raw.prefix) j["roots"]["prefix"].push_back(root_to_json(r));
  for (const auto& r : raw.period) j["roots"]["period"].push_back(root_to_json(r));
  return j;
}

SemidirectProduct::SemidirectProduct(const NagaoDatum& d, int i) : d_(&d), levels_(i) {
  radix_.push_back(d.h0().order());
  for (int j = 1; j <= i; ++j) radix_.push_back(d.root_group(j).order());
  order_ = 1;
  for (int r : radix_) order_ *= r;
}

long SemidirectProduct::encode(int h_index, const std::vector<int>& u) const {
  long code = h_index;
  for (int j = 1; j <= levels_; ++j) code = code * radix_[j] + u[j - 1];
  return code;
}

std::pair<int, std::vector<int>> SemidirectProduct::decode(long code) const {
  std::vector<int> u(levels_);
  for (int j = levels_; j >= 1; --j) {
    u[j - 1] = static_cast<int>(code % radix_[j]);
    code /= radix_[j];
  }
  return {static_cast<int>(code), std::move(u)};
}

long SemidirectProduct::mul(long a, long b) const {
  // (h u)(h' u') = hh' · θ_{h'⁻¹}(u) u'
  auto [ha, ua] = decode(a);
  auto [hb, ub] = decode(b);
  const auto& members = d_->h0().members();
  const FiniteGroup& g0 = d_->gamma0();
  const int h = members[ha], hp = members[hb];
  const int hh = g0.mul(h, hp);
  const int hp_inv = g0.inv(hp);
  std::vector<int> u(levels_);
  for (int j = 1; j <= levels_; ++j) {
    const FiniteGroup& uj = d_->root_group(j);
    u[j - 1] = uj.mul(d_->act_root(hp_inv, j, ua[j - 1]), ub[j - 1]);
  }
  const int hh_index = static_cast<int>(
      std::lower_bound(members.begin(), members.end(), hh) - members.begin());
  return encode(hh_index, u);
}

long SemidirectProduct::identity() const {
  const auto& members = d_->h0().members();
  const int e = d_->gamma0().identity();
  const int e_index =
      static_cast<int>(std::lower_bound(members.begin(), members.end(), e) - members.begin());
  std::vector<int> u(levels_);
  for (int j = 1; j <= levels_; ++j) u[j - 1] = d_->root_group(j).identity();
  return encode(e_index, u);
}

long SemidirectProduct::inv(long a) const {
  // (h u)⁻¹ = u⁻¹ h⁻¹ = h⁻¹ · θ_h(u⁻¹)
  auto [ha, ua] = decode(a);
  const auto& members = d_->h0().members();
  const int h = members[ha];
  const int hinv = d_->gamma0().inv(h);
  std::vector<int> u(levels_);
  for (int j = 1; j <= levels_; ++j) {
    u[j - 1] = d_->act_root(h, j, d_->root_group(j).inv(ua[j - 1]));
  }
  const int idx = static_cast<int>(
      std::lower_bound(members.begin(), members.end(), hinv) - members.begin());
  return encode(idx, u);
}

long SemidirectProduct::embed_h0(int h) const {
  const auto& members = d_->h0().members();
  const int idx =
      static_cast<int>(std::lower_bound(members.begin(), members.end(), h) - members.begin());
  auto [e, u] = decode(identity());
  (void)e;
  return encode(idx, u);
}

long SemidirectProduct::embed_root(int j, int x) const {
  auto [e, u] = decode(identity());
  u[j - 1] = x;
  return encode(e, u);
}

FiniteGroup SemidirectProduct::to_group() const {
  const int n = static_cast<int>(order_);
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = static_cast<int>(mul(a, b));
  return FiniteGroup::from_table(t);
}

SemidirectProduct gamma_i(const NagaoDatum& d, int i) { return SemidirectProduct(d, i); }

}  // namespace nagao
