#include "fist/rules.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fist {

RuleSet::RuleSet(int width_dest, int width_src)
    : width_dest_(width_dest), width_src_(width_src) {}

void RuleSet::note_dest(const Prefix& d) {
  if (std::find(dest_order_.begin(), dest_order_.end(), d) ==
      dest_order_.end())
    dest_order_.push_back(d);
  if (!defaults_.count(d)) defaults_.emplace(d, std::nullopt);
}

void RuleSet::add_rule(const Prefix& dest, const Prefix& src, Action action) {
  if (dest.width() != width_dest_ || src.width() != width_src_)
    throw std::invalid_argument("rule width mismatch for (" + dest.str() +
                                ", " + src.str() + ")");
  if (src.length() == 0) {
    set_default(dest, std::move(action));
    return;
  }
  const auto key = std::make_pair(dest, src);
  if (rule_index_.count(key))
    throw std::invalid_argument("duplicate rule (" + dest.str() + ", " +
                                src.str() + ")");
  rule_index_.emplace(key, rules_.size());
  rules_.push_back(Rule{dest, src, std::move(action)});
  note_dest(dest);
  if (std::find(src_order_.begin(), src_order_.end(), src) ==
      src_order_.end())
    src_order_.push_back(src);
}

void RuleSet::remove_rule(const Prefix& dest, const Prefix& src) {
  const auto it = rule_index_.find(std::make_pair(dest, src));
  if (it == rule_index_.end())
    throw std::invalid_argument("no such rule (" + dest.str() + ", " +
                                src.str() + ")");
  const std::size_t pos = it->second;
  rule_index_.erase(it);
  rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(pos));
  for (auto& [key, idx] : rule_index_)
    if (idx > pos) --idx;
}

bool RuleSet::has_rule(const Prefix& dest, const Prefix& src) const {
  return rule_index_.count(std::make_pair(dest, src)) != 0;
}

const Rule* RuleSet::find_rule(const Prefix& dest, const Prefix& src) const {
  const auto it = rule_index_.find(std::make_pair(dest, src));
  return it == rule_index_.end() ? nullptr : &rules_[it->second];
}

void RuleSet::set_rule_action(const Prefix& dest, const Prefix& src,
                              Action action) {
  const auto it = rule_index_.find(std::make_pair(dest, src));
  if (it == rule_index_.end())
    throw std::invalid_argument("no such rule (" + dest.str() + ", " +
                                src.str() + ")");
  rules_[it->second].action = std::move(action);
}

void RuleSet::set_default(const Prefix& dest, std::optional<Action> action) {
  if (dest.width() != width_dest_)
    throw std::invalid_argument("default width mismatch for " + dest.str());
  defaults_[dest] = std::move(action);
  if (std::find(dest_order_.begin(), dest_order_.end(), dest) ==
      dest_order_.end())
    dest_order_.push_back(dest);
}

std::optional<Action> RuleSet::default_action(const Prefix& dest) const {
  const auto it = defaults_.find(dest);
  return it == defaults_.end() ? std::nullopt : it->second;
}

std::vector<Rule> RuleSet::rules_for(const Prefix& dest) const {
  std::vector<Rule> out;
  for (const Rule& r : rules_)
    if (r.dest == dest) out.push_back(r);
  return out;
}

std::vector<Prefix> RuleSet::dest_prefixes() const {
  std::vector<Prefix> out;
  for (const Prefix& d : dest_order_) {
    const auto it = defaults_.find(d);
    const bool has_default = it != defaults_.end() && it->second.has_value();
    const bool has_rules =
        std::any_of(rules_.begin(), rules_.end(),
                    [&d](const Rule& r) { return r.dest == d; });
    if (has_default || has_rules) out.push_back(d);
  }
  return out;
}

std::vector<Prefix> RuleSet::src_prefixes() const {
  std::vector<Prefix> out;
  for (const Prefix& s : src_order_)
    if (std::any_of(rules_.begin(), rules_.end(),
                    [&s](const Rule& r) { return r.src == s; }))
      out.push_back(s);
  return out;
}

std::size_t RuleSet::default_count() const {
  std::size_t n = 0;
  for (const auto& [d, a] : defaults_)
    if (a) ++n;
  return n;
}

RuleSet RuleSet::parse(std::istream& in, int width) {
  RuleSet rs(width);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    try {
      std::string a, b, trailing;
      if (first == "default") {
        if (!(fields >> a >> b))
          throw std::invalid_argument("expected 'default <dest> <action>'");
        if (fields >> trailing)
          throw std::invalid_argument("trailing tokens");
        const Prefix dest = Prefix::parse(a, width);
        if (rs.defaults().count(dest) && rs.default_action(dest))
          throw std::invalid_argument("duplicate default for " + dest.str());
        rs.set_default(dest, b);
      } else {
        if (!(fields >> a >> b))
          throw std::invalid_argument("expected '<dest> <src> <action>'");
        if (fields >> trailing)
          throw std::invalid_argument("trailing tokens");
        rs.add_rule(Prefix::parse(first, width), Prefix::parse(a, width), b);
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return rs;
}

RuleSet RuleSet::load_file(const std::string& path, int width) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open rules file: " + path);
  try {
    return parse(in, width);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string RuleSet::serialize() const {
  std::ostringstream out;
  for (const Rule& r : rules_)
    out << r.dest.str() << ' ' << r.src.str() << ' ' << r.action << '\n';
  for (const auto& [d, a] : defaults_)
    if (a) out << "default " << d.str() << ' ' << *a << '\n';
  return out.str();
}

}  // namespace fist
