#include "fist/ledger.hpp"

namespace fist {

AccessTotals& AccessTotals::operator+=(const AccessTotals& o) {
  tcam_reads += o.tcam_reads;
  tcam_writes += o.tcam_writes;
  sram_reads += o.sram_reads;
  sram_w_td += o.sram_w_td;
  sram_w_td_bulk += o.sram_w_td_bulk;
  sram_w_catalog += o.sram_w_catalog;
  sram_w_narrow += o.sram_w_narrow;
  sram_w_units += o.sram_w_units;
  sram_w_mapping += o.sram_w_mapping;
  return *this;
}

AccessTotals AccessTotals::operator-(const AccessTotals& o) const {
  AccessTotals d;
  d.tcam_reads = tcam_reads - o.tcam_reads;
  d.tcam_writes = tcam_writes - o.tcam_writes;
  d.sram_reads = sram_reads - o.sram_reads;
  d.sram_w_td = sram_w_td - o.sram_w_td;
  d.sram_w_td_bulk = sram_w_td_bulk - o.sram_w_td_bulk;
  d.sram_w_catalog = sram_w_catalog - o.sram_w_catalog;
  d.sram_w_narrow = sram_w_narrow - o.sram_w_narrow;
  d.sram_w_units = sram_w_units - o.sram_w_units;
  d.sram_w_mapping = sram_w_mapping - o.sram_w_mapping;
  return d;
}

void AccessLedger::snapshot(const std::string& label) {
  snapshots_.emplace_back(label, totals_ - last_mark_);
  last_mark_ = totals_;
}

void AccessLedger::reset() {
  totals_ = AccessTotals{};
  last_mark_ = AccessTotals{};
  snapshots_.clear();
}

LatencyEstimate latency_estimate(const CycleCosts& costs, bool dedup,
                                 bool acl_baseline, bool double_tcam_request) {
  LatencyEstimate e;
  e.tcam_cycles = double_tcam_request ? 2 : 1;
  if (acl_baseline) {
    e.sram_cycles = 1;
  } else {
    e.sram_cycles = dedup ? 4 : 3;
  }
  e.lookup_ns = (e.tcam_cycles * costs.tcam_cycle_ns +
                 e.sram_cycles * costs.sram_cycle_ns) *
                costs.cycles_per_mem_op;
  const double tcam_ns = e.tcam_cycles * costs.tcam_cycle_ns *
                         costs.cycles_per_mem_op;
  e.packets_per_sec = tcam_ns > 0 ? 1e9 / tcam_ns : 0.0;
  return e;
}

BudgetReport sram_write_budget_check(double update_rate,
                                     std::uint64_t src_count,
                                     double sram_ops_per_sec) {
  BudgetReport r;
  r.update_rate = update_rate;
  r.src_count = src_count;
  r.worst_writes_per_sec = update_rate * static_cast<double>(src_count);
  r.budget_writes_per_sec = sram_ops_per_sec;
  r.pass = r.worst_writes_per_sec <= sram_ops_per_sec;
  return r;
}

}  // namespace fist
