#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fist {

struct CycleCosts {
  // The SRAM cycle must stay below the TCAM cycle; values are configuration,
  // not measurements.
  double tcam_cycle_ns = 10.0;
  double sram_cycle_ns = 4.0;
  int cycles_per_mem_op = 1;
};

struct AccessTotals {
  std::uint64_t tcam_reads = 0;
  std::uint64_t tcam_writes = 0;  // entry writes plus slot moves
  std::uint64_t sram_reads = 0;
  // SRAM writes split by target structure. Bulk row/column initialization
  // is kept apart from per-domain cell writes so optimality checks compare
  // like with like.
  std::uint64_t sram_w_td = 0;
  std::uint64_t sram_w_td_bulk = 0;
  std::uint64_t sram_w_catalog = 0;
  std::uint64_t sram_w_narrow = 0;
  std::uint64_t sram_w_units = 0;
  std::uint64_t sram_w_mapping = 0;

  std::uint64_t sram_writes() const {
    return sram_w_td + sram_w_td_bulk + sram_w_catalog + sram_w_narrow +
           sram_w_units + sram_w_mapping;
  }

  AccessTotals& operator+=(const AccessTotals& o);
  AccessTotals operator-(const AccessTotals& o) const;
  bool operator==(const AccessTotals&) const = default;
};

// Monotone counters of every TCAM/SRAM touch, with optional per-operation
// snapshots. Mutation is confined to the thread running the charged
// operation; aggregate after quiescence.
class AccessLedger {
 public:
  CycleCosts costs;

  void charge_tcam_read(std::uint64_t n = 1) { totals_.tcam_reads += n; }
  void charge_tcam_write(std::uint64_t n = 1) { totals_.tcam_writes += n; }
  void charge_sram_read(std::uint64_t n = 1) { totals_.sram_reads += n; }
  void charge_td_write(std::uint64_t n = 1) { totals_.sram_w_td += n; }
  void charge_td_bulk_write(std::uint64_t n = 1) {
    totals_.sram_w_td_bulk += n;
  }
  void charge_catalog_write(std::uint64_t n = 1) {
    totals_.sram_w_catalog += n;
  }
  void charge_narrow_write(std::uint64_t n = 1) { totals_.sram_w_narrow += n; }
  void charge_unit_write(std::uint64_t n = 1) { totals_.sram_w_units += n; }
  void charge_mapping_write(std::uint64_t n = 1) {
    totals_.sram_w_mapping += n;
  }

  const AccessTotals& totals() const { return totals_; }

  // Records the delta since the previous snapshot (or construction).
  void snapshot(const std::string& label);
  const std::vector<std::pair<std::string, AccessTotals>>& snapshots() const {
    return snapshots_;
  }

  void reset();

 private:
  AccessTotals totals_;
  AccessTotals last_mark_;
  std::vector<std::pair<std::string, AccessTotals>> snapshots_;
};

struct LatencyEstimate {
  int tcam_cycles = 0;
  int sram_cycles = 0;
  double lookup_ns = 0.0;
  // Pipelined rate: one packet per TCAM cycle.
  double packets_per_sec = 0.0;
};

// Lookup cost per the pipeline model: 1 TCAM cycle plus 3 SRAM cycles,
// one more SRAM cycle when the deduplicated narrow store is in the path,
// 1 + 1 for the flat concatenated-entry baseline.
LatencyEstimate latency_estimate(const CycleCosts& costs, bool dedup,
                                 bool acl_baseline,
                                 bool double_tcam_request = false);

struct BudgetReport {
  double update_rate = 0;
  std::uint64_t src_count = 0;
  double worst_writes_per_sec = 0;
  double budget_writes_per_sec = 0;
  bool pass = false;
};

// Worst case: every update on a destination prefix rewrites one cell per
// source prefix.
BudgetReport sram_write_budget_check(double update_rate,
                                     std::uint64_t src_count,
                                     double sram_ops_per_sec);

}  // namespace fist
