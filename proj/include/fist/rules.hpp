#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fist/prefix.hpp"

namespace fist {

using Action = std::string;

struct Rule {
  Prefix dest;
  Prefix src;
  Action action;
};

// A flat forwarding rule set plus a per-destination default next hop map.
// A rule whose source is the zero-length prefix is a default in disguise
// and is stored in the default map, never in the rule list, so each
// (dest, src) pair has exactly one meaning.
class RuleSet {
 public:
  RuleSet(int width_dest, int width_src);
  explicit RuleSet(int width) : RuleSet(width, width) {}

  int width_dest() const { return width_dest_; }
  int width_src() const { return width_src_; }

  // Throws std::invalid_argument on a duplicate (dest, src) pair, naming it.
  // A zero-length src routes to set_default (which may overwrite).
  void add_rule(const Prefix& dest, const Prefix& src, Action action);

  void remove_rule(const Prefix& dest, const Prefix& src);
  bool has_rule(const Prefix& dest, const Prefix& src) const;
  const Rule* find_rule(const Prefix& dest, const Prefix& src) const;
  void set_rule_action(const Prefix& dest, const Prefix& src, Action action);

  void set_default(const Prefix& dest, std::optional<Action> action);
  std::optional<Action> default_action(const Prefix& dest) const;

  const std::vector<Rule>& rules() const { return rules_; }
  const std::map<Prefix, std::optional<Action>>& defaults() const {
    return defaults_;
  }

  // Rules with the given destination, in insertion order.
  std::vector<Rule> rules_for(const Prefix& dest) const;

  // Destination prefixes that exist in the table: those of any rule plus
  // those with a concrete default. First-appearance order.
  std::vector<Prefix> dest_prefixes() const;
  // Distinct rule source prefixes, first-appearance order.
  std::vector<Prefix> src_prefixes() const;

  std::size_t default_count() const;  // defaults with a concrete action

  // One rule per line: "<dest> <src> <action>", defaults as
  // "default <dest> <action>", '#' comments. Errors carry line numbers.
  static RuleSet parse(std::istream& in, int width);
  static RuleSet load_file(const std::string& path, int width);
  std::string serialize() const;

 private:
  void note_dest(const Prefix& d);

  int width_dest_;
  int width_src_;
  std::vector<Rule> rules_;
  std::map<std::pair<Prefix, Prefix>, std::size_t> rule_index_;
  std::map<Prefix, std::optional<Action>> defaults_;
  std::vector<Prefix> dest_order_;
  std::vector<Prefix> src_order_;
};

}  // namespace fist
