#include "fist/oracle.hpp"

#include <set>
#include <stdexcept>

namespace fist {

int bits_for(std::uint64_t n) {
  if (n <= 2) return 1;
  int bits = 0;
  std::uint64_t capacity = 1;
  while (capacity < n) {
    capacity <<= 1;
    ++bits;
  }
  return bits;
}

OracleResult oracle_lookup(const RuleSet& rs, const Address& d,
                           const Address& s, AccessLedger* ledger) {
  if (d.width() != rs.width_dest() || s.width() != rs.width_src())
    throw std::invalid_argument("oracle lookup width mismatch");
  if (ledger) {
    ledger->charge_tcam_read(1);
    ledger->charge_sram_read(1);
  }

  // Longest matching destination among rule dests and concrete defaults.
  const Prefix* best_dest = nullptr;
  for (const Rule& r : rs.rules())
    if (r.dest.matches(d) && (!best_dest || r.dest.length() > best_dest->length()))
      best_dest = &r.dest;
  for (const auto& [dest, def] : rs.defaults())
    if (def && dest.matches(d) &&
        (!best_dest || dest.length() > best_dest->length()))
      best_dest = &dest;
  if (!best_dest) return {std::nullopt, LookupVia::kMiss};

  const Rule* best_rule = nullptr;
  for (const Rule& r : rs.rules())
    if (r.dest == *best_dest && r.src.matches(s) &&
        (!best_rule || r.src.length() > best_rule->src.length()))
      best_rule = &r;
  if (best_rule) return {best_rule->action, LookupVia::kRule};

  if (auto def = rs.default_action(*best_dest))
    return {std::move(def), LookupVia::kDefault};
  return {std::nullopt, LookupVia::kMiss};
}

AclCost acl_cost_model(const RuleSet& rs, int entry_width,
                       bool defaults_as_rules) {
  AclCost c;
  c.tcam_entries = rs.rules().size();
  std::set<Action> actions;
  for (const Rule& r : rs.rules()) actions.insert(r.action);
  if (defaults_as_rules) {
    for (const auto& [dest, def] : rs.defaults())
      if (def) {
        ++c.tcam_entries;
        actions.insert(*def);
      }
  }
  if (c.tcam_entries == 0) return c;
  c.tcam_bits = c.tcam_entries * 2 * static_cast<std::uint64_t>(entry_width);
  c.sram_bits =
      c.tcam_entries * static_cast<std::uint64_t>(bits_for(actions.size()));
  return c;
}

}  // namespace fist
