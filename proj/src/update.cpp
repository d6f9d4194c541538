#include <stdexcept>

#include "fist/colored_forest.hpp"
#include "fist/fist_table.hpp"

namespace fist {

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

void FistTable::ensure_dest(const Prefix& dest, AccessLedger* ledger) {
  if (dest_.find(dest)) return;
  charge_tcam(ledger, dest_layout_.insert(dest));
  if (ledger) ledger->charge_unit_write(1);
  dest_.insert(dest, DestUnit{});
}

void FistTable::ensure_row(const Prefix& dest, AccessLedger* ledger,
                           WriteLog* log, UpdateStats& stats) {
  DestUnit* unit = dest_.find(dest);
  if (unit->row) return;
  const std::uint32_t row = td_.alloc_row();
  // A fresh row reads as the destination's default: copy its index into
  // every assigned column when the wildcard sits in the source table,
  // leave every cell invalid otherwise.
  if (wildcard_in_src_table() && unit->default_index) {
    for (const std::uint32_t c : td_.cols()) {
      if (log)
        log->push_back(TdWrite{row, c, td_.get(row, c), *unit->default_index});
      td_.set(row, c, *unit->default_index);
      ++stats.bulk_writes;
      if (ledger) ledger->charge_td_bulk_write(1);
    }
  }
  unit->row = row;
  unit->indicator = true;
  if (ledger) ledger->charge_unit_write(1);
}

void FistTable::ensure_src(const Prefix& src, AccessLedger* ledger,
                           WriteLog* log, UpdateStats& stats) {
  if (src_.find(src)) return;
  // Parent over the stored set before src joins it; the new column starts
  // as a copy of the parent's column, which every destination already
  // agrees with for an unreferenced source prefix.
  const auto parent = src_.parent_of(src);
  charge_tcam(ledger, src_layout_.insert(src));
  if (ledger) ledger->charge_unit_write(1);
  const std::uint32_t col = td_.alloc_col();
  src_.insert(src, SrcUnit{col});
  if (parent) {
    const std::uint32_t pcol = src_.find(*parent)->col;
    for (const std::uint32_t r : td_.rows()) {
      const CellValue v = td_.get(r, pcol);
      if (!v) continue;  // fresh cells are already invalid
      if (log) log->push_back(TdWrite{r, col, td_.get(r, col), v});
      td_.set(r, col, v);
      ++stats.bulk_writes;
      if (ledger) ledger->charge_td_bulk_write(1);
    }
  }
}

std::size_t FistTable::write_cells(const Prefix& dest,
                                   const std::vector<Prefix>& srcs,
                                   CellValue v, AccessLedger* ledger,
                                   WriteLog* log) {
  const DestUnit* unit = dest_.find(dest);
  if (!unit || !unit->row) return 0;
  std::size_t n = 0;
  for (const Prefix& x : srcs) {
    const std::uint32_t c = src_.find(x)->col;
    if (log) log->push_back(TdWrite{*unit->row, c, td_.get(*unit->row, c), v});
    td_.set(*unit->row, c, v);
    if (ledger) ledger->charge_td_write(1);
    ++n;
  }
  return n;
}

void FistTable::cleanup_dest(const Prefix& dest, AccessLedger* ledger) {
  DestUnit* unit = dest_.find(dest);
  if (!unit) return;
  if (!rules_.rules_for(dest).empty()) return;
  if (rules_.default_action(dest)) {
    // Only the default remains. The prefix stays reachable; under the
    // non-homogeneous layout its row is reclaimed and the indicator
    // cleared.
    if (opts_.non_homogeneous && unit->row) {
      td_.free_row(*unit->row);
      unit->row.reset();
      unit->indicator = false;
      if (ledger) ledger->charge_unit_write(1);
    }
    return;
  }
  if (unit->row) td_.free_row(*unit->row);
  dest_.erase(dest);
  charge_tcam(ledger, dest_layout_.erase(dest));
}

void FistTable::cleanup_src(const Prefix& src, AccessLedger* ledger) {
  if (src.length() == 0) {
    cleanup_wildcard_col(ledger);
    return;
  }
  const SrcUnit* unit = src_.find(src);
  if (!unit) return;
  for (const Rule& r : rules_.rules())
    if (r.src == src) return;
  td_.free_col(unit->col);
  src_.erase(src);
  charge_tcam(ledger, src_layout_.erase(src));
}

void FistTable::cleanup_wildcard_col(AccessLedger* ledger) {
  const Prefix wc = Prefix::wildcard(width_src());
  const SrcUnit* unit = src_.find(wc);
  if (!unit || rules_.default_count() > 0) return;
  td_.free_col(unit->col);
  src_.erase(wc);
  charge_tcam(ledger, src_layout_.erase(wc));
}

// ---------------------------------------------------------------------------
// Default next hop paths (wildcard source)
// ---------------------------------------------------------------------------

UpdateStats FistTable::upsert_default(const Prefix& dest, const Action& action,
                                      AccessLedger* ledger, WriteLog* log) {
  UpdateStats stats;
  ensure_dest(dest, ledger);
  DestUnit* unit = dest_.find(dest);

  const std::optional<std::uint32_t> old_index = unit->default_index;
  unit->default_index = mapping_.intern(action, ledger);
  if (ledger) ledger->charge_unit_write(1);
  rules_.set_default(dest, action);
  if (old_index) mapping_.release(*old_index);

  if (opts_.isolation) {
    // The default lives only in the destination unit; no TD-table cell is
    // touched.
    if (!opts_.non_homogeneous) ensure_row(dest, ledger, log, stats);
    return stats;
  }

  const Prefix wc = Prefix::wildcard(width_src());
  ensure_src(wc, ledger, log, stats);
  if (!opts_.non_homogeneous || !rules_.rules_for(dest).empty())
    ensure_row(dest, ledger, log, stats);
  if (dest_.find(dest)->row)
    stats.domain_writes =
        write_cells(dest, domain_unchecked(*this, dest, wc),
                    CellValue(*dest_.find(dest)->default_index), ledger, log);
  return stats;
}

UpdateStats FistTable::remove_default(const Prefix& dest, AccessLedger* ledger,
                                      WriteLog* log) {
  UpdateStats stats;
  DestUnit* unit = dest_.find(dest);
  if (!unit || !unit->default_index)
    throw std::invalid_argument("no default stored for " + dest.str());

  if (!opts_.isolation && unit->row) {
    const Prefix wc = Prefix::wildcard(width_src());
    stats.domain_writes =
        write_cells(dest, domain(*this, dest, wc), CellValue{}, ledger, log);
  }
  mapping_.release(*unit->default_index);
  unit->default_index.reset();
  if (ledger) ledger->charge_unit_write(1);
  rules_.set_default(dest, std::nullopt);

  cleanup_wildcard_col(ledger);
  cleanup_dest(dest, ledger);
  return stats;
}

// ---------------------------------------------------------------------------
// Rule updates
// ---------------------------------------------------------------------------

UpdateStats FistTable::insert_rule(const Prefix& dest, const Prefix& src,
                                   const Action& action, AccessLedger* ledger,
                                   WriteLog* log) {
  assert_mutable();
  narrow_dirty_ = true;
  if (src.length() == 0) return upsert_default(dest, action, ledger, log);
  if (rules_.has_rule(dest, src))
    throw std::invalid_argument("duplicate rule (" + dest.str() + ", " +
                                src.str() + ")");
  UpdateStats stats;
  ensure_dest(dest, ledger);
  const std::uint32_t index = mapping_.intern(action, ledger);
  rules_.add_rule(dest, src, action);
  ensure_row(dest, ledger, log, stats);
  ensure_src(src, ledger, log, stats);
  stats.domain_writes = write_cells(
      dest, domain_unchecked(*this, dest, src), CellValue(index), ledger, log);
  return stats;
}

UpdateStats FistTable::delete_rule(const Prefix& dest, const Prefix& src,
                                   AccessLedger* ledger, WriteLog* log) {
  assert_mutable();
  narrow_dirty_ = true;
  if (src.length() == 0) return remove_default(dest, ledger, log);
  const Rule* rule = rules_.find_rule(dest, src);
  if (!rule)
    throw std::invalid_argument("no such rule (" + dest.str() + ", " +
                                src.str() + ")");
  UpdateStats stats;
  const std::uint32_t old_index = *mapping_.find(rule->action);

  // The domain while src is still black, and the value its cells take
  // afterwards: the parent's cell, or invalid without any stored ancestor.
  const std::vector<Prefix> dom = domain(*this, dest, src);
  CellValue newval;
  const DestUnit* unit = dest_.find(dest);
  if (unit->row) {
    if (const auto parent = src_.parent_of(src))
      newval = td_.get(*unit->row, src_.find(*parent)->col);
  }
  rules_.remove_rule(dest, src);
  stats.domain_writes = write_cells(dest, dom, newval, ledger, log);
  mapping_.release(old_index);

  cleanup_src(src, ledger);
  cleanup_dest(dest, ledger);
  return stats;
}

UpdateStats FistTable::update_rule(const Prefix& dest, const Prefix& src,
                                   const Action& action, AccessLedger* ledger,
                                   WriteLog* log) {
  assert_mutable();
  narrow_dirty_ = true;
  if (src.length() == 0) return upsert_default(dest, action, ledger, log);
  const Rule* rule = rules_.find_rule(dest, src);
  if (!rule) return insert_rule(dest, src, action, ledger, log);

  // The node stays black; its domain is rewritten once.
  UpdateStats stats;
  const std::uint32_t old_index = *mapping_.find(rule->action);
  const std::uint32_t index = mapping_.intern(action, ledger);
  rules_.set_rule_action(dest, src, action);
  stats.domain_writes = write_cells(dest, domain(*this, dest, src),
                                    CellValue(index), ledger, log);
  mapping_.release(old_index);
  return stats;
}

}  // namespace fist
