#pragma once

#include <cstdint>
#include <optional>

#include "fist/ledger.hpp"
#include "fist/rules.hpp"

namespace fist {

// Where a lookup answer came from. Tests rely on seeing exactly when the
// per-destination default was used versus a genuine miss.
enum class LookupVia { kRule, kDefault, kMiss };

struct OracleResult {
  std::optional<Action> action;
  LookupVia via = LookupVia::kMiss;

  bool operator==(const OracleResult& o) const { return action == o.action; }
};

// Reference two-dimensional match over the flat rule list: longest-match
// destination first, then longest-match source among rules sharing that
// destination, falling back to the destination's default. Deliberately
// O(|rules|) per call; this is the ground truth everything is tested
// against. When a ledger is given it is charged with the flat-table cost
// of one TCAM read and one SRAM read.
OracleResult oracle_lookup(const RuleSet& rs, const Address& d,
                           const Address& s,
                           AccessLedger* ledger = nullptr);

struct AclCost {
  std::uint64_t tcam_entries = 0;
  std::uint64_t tcam_bits = 0;
  std::uint64_t sram_bits = 0;
};

// Cost of holding the rule set as concatenated (dest, src) TCAM entries of
// double width. With defaults_as_rules, each concrete default counts as a
// wildcard-source entry.
AclCost acl_cost_model(const RuleSet& rs, int entry_width,
                       bool defaults_as_rules = false);

// Smallest number of bits that can address/encode n distinct values.
int bits_for(std::uint64_t n);

}  // namespace fist
