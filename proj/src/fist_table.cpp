#include "fist/fist_table.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fist/compression.hpp"

namespace fist {

// ---------------------------------------------------------------------------
// MappingTable
// ---------------------------------------------------------------------------

std::uint32_t MappingTable::intern(const Action& a, AccessLedger* ledger) {
  if (const auto it = index_.find(a); it != index_.end()) {
    ++slots_[it->second].refs;
    return it->second;
  }
  std::uint32_t idx;
  if (!free_.empty()) {
    idx = *free_.begin();
    free_.erase(free_.begin());
  } else {
    idx = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  slots_[idx].action = a;
  slots_[idx].refs = 1;
  index_.emplace(a, idx);
  ++live_;
  if (ledger) ledger->charge_mapping_write(1);
  return idx;
}

void MappingTable::add_ref(std::uint32_t index) {
  if (index >= slots_.size() || !slots_[index].action)
    throw std::runtime_error("mapping table corruption: add_ref on index " +
                             std::to_string(index));
  ++slots_[index].refs;
}

void MappingTable::release(std::uint32_t index) {
  if (index >= slots_.size() || !slots_[index].action ||
      slots_[index].refs == 0)
    throw std::runtime_error("mapping table corruption: release on index " +
                             std::to_string(index));
  if (--slots_[index].refs == 0) {
    index_.erase(*slots_[index].action);
    slots_[index].action.reset();
    free_.insert(index);
    --live_;
  }
}

const Action& MappingTable::action(std::uint32_t index) const {
  if (index >= slots_.size() || !slots_[index].action)
    throw std::runtime_error("mapping table corruption: unmapped index " +
                             std::to_string(index));
  return *slots_[index].action;
}

std::optional<std::uint32_t> MappingTable::find(const Action& a) const {
  const auto it = index_.find(a);
  return it == index_.end() ? std::nullopt
                            : std::optional<std::uint32_t>(it->second);
}

int MappingTable::index_width() const { return bits_for(live_); }

std::uint64_t MappingTable::payload_bits() const {
  std::uint64_t bits = 0;
  for (const Slot& s : slots_)
    if (s.action) bits += 8ull * s.action->size();
  return bits;
}

std::vector<std::pair<std::uint32_t, Action>> MappingTable::entries() const {
  std::vector<std::pair<std::uint32_t, Action>> out;
  for (std::uint32_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].action) out.emplace_back(i, *slots_[i].action);
  return out;
}

// ---------------------------------------------------------------------------
// TdTable
// ---------------------------------------------------------------------------

std::uint32_t TdTable::alloc_row() {
  std::uint32_t r;
  if (!rows_free_.empty()) {
    r = *rows_free_.begin();
    rows_free_.erase(rows_free_.begin());
  } else {
    r = static_cast<std::uint32_t>(grid_.size());
    grid_.emplace_back(col_cap_);
  }
  rows_live_.insert(r);
  return r;
}

std::uint32_t TdTable::alloc_col() {
  std::uint32_t c;
  if (!cols_free_.empty()) {
    c = *cols_free_.begin();
    cols_free_.erase(cols_free_.begin());
  } else {
    c = static_cast<std::uint32_t>(col_cap_++);
    for (auto& row : grid_) row.emplace_back();
  }
  cols_live_.insert(c);
  return c;
}

void TdTable::free_row(std::uint32_t r) {
  if (!rows_live_.erase(r))
    throw std::invalid_argument("free of unassigned row " + std::to_string(r));
  std::fill(grid_[r].begin(), grid_[r].end(), CellValue{});
  rows_free_.insert(r);
}

void TdTable::free_col(std::uint32_t c) {
  if (!cols_live_.erase(c))
    throw std::invalid_argument("free of unassigned column " +
                                std::to_string(c));
  for (auto& row : grid_) row[c].reset();
  cols_free_.insert(c);
}

void TdTable::check(std::uint32_t r, std::uint32_t c) const {
  if (!rows_live_.count(r) || !cols_live_.count(c))
    throw std::invalid_argument("cell (" + std::to_string(r) + ", " +
                                std::to_string(c) + ") is not assigned");
}

CellValue TdTable::get(std::uint32_t r, std::uint32_t c) const {
  check(r, c);
  return grid_[r][c];
}

bool TdTable::set(std::uint32_t r, std::uint32_t c, CellValue v) {
  check(r, c);
  if (grid_[r][c] == v) return false;
  grid_[r][c] = v;
  return true;
}

// ---------------------------------------------------------------------------
// FistTable: construction
// ---------------------------------------------------------------------------

FistTable::FistTable(RuleSet rs, BuildOptions opts)
    : rules_(std::move(rs)),
      opts_(opts),
      dest_(rules_.width_dest()),
      src_(rules_.width_src()),
      dest_layout_(rules_.width_dest(), opts.cluster_prealloc),
      src_layout_(rules_.width_src(), opts.cluster_prealloc) {}

FistTable::~FistTable() = default;
FistTable::FistTable(FistTable&&) noexcept = default;
FistTable& FistTable::operator=(FistTable&&) noexcept = default;

bool FistTable::wildcard_in_src_table() const {
  return src_.contains(Prefix::wildcard(width_src()));
}

FistTable FistTable::build(const RuleSet& rs, const BuildOptions& opts,
                           AccessLedger* ledger) {
  if (opts.dedup_width && *opts.dedup_width < 1)
    throw std::invalid_argument("dedup width must be >= 1");
  FistTable t(rs, opts);

  // Interning order: rule actions first, in rule order, then defaults.
  for (const Rule& r : t.rules_.rules()) t.mapping_.intern(r.action, ledger);

  for (const Prefix& d : t.rules_.dest_prefixes()) {
    DestUnit unit;
    if (auto def = t.rules_.default_action(d))
      unit.default_index = t.mapping_.intern(*def, ledger);
    t.charge_tcam(ledger, t.dest_layout_.insert(d));
    if (ledger) ledger->charge_unit_write(1);
    t.dest_.insert(d, unit);
  }

  std::vector<Prefix> srcs = t.rules_.src_prefixes();
  if (!opts.isolation && t.rules_.default_count() > 0)
    srcs.push_back(Prefix::wildcard(t.width_src()));
  for (const Prefix& s : srcs) {
    t.charge_tcam(ledger, t.src_layout_.insert(s));
    if (ledger) ledger->charge_unit_write(1);
    t.src_.insert(s, SrcUnit{t.td_.alloc_col()});
  }

  for (const Prefix& d : t.rules_.dest_prefixes()) {
    DestUnit* unit = t.dest_.find(d);
    const bool has_rules = !t.rules_.rules_for(d).empty();
    if (has_rules || !opts.non_homogeneous) {
      unit->row = t.td_.alloc_row();
      unit->indicator = true;
    }
  }

  // Explicit cells: stored rules plus materialized wildcard defaults.
  for (const Rule& r : t.rules_.rules()) {
    const std::uint32_t row = *t.dest_.find(r.dest)->row;
    const std::uint32_t col = t.src_.find(r.src)->col;
    t.td_.set(row, col, *t.mapping_.find(r.action));
    if (ledger) ledger->charge_td_write(1);
  }
  if (t.wildcard_in_src_table()) {
    const std::uint32_t wcol = t.src_.find(Prefix::wildcard(t.width_src()))->col;
    for (const Prefix& d : t.rules_.dest_prefixes()) {
      const DestUnit* unit = t.dest_.find(d);
      if (unit->row && unit->default_index) {
        t.td_.set(*unit->row, wcol, *unit->default_index);
        if (ledger) ledger->charge_td_write(1);
      }
    }
  }

  if (opts.saturate) t.saturate(ledger);
  if (t.dedup_active()) t.refresh_narrow();
  return t;
}

// ---------------------------------------------------------------------------
// Effective rules and saturation
// ---------------------------------------------------------------------------

bool FistTable::has_effective_rule(const Prefix& dest,
                                   const Prefix& src) const {
  if (src.length() == 0)
    return wildcard_in_src_table() && rules_.default_action(dest).has_value();
  return rules_.has_rule(dest, src);
}

std::vector<std::pair<Prefix, std::uint32_t>> FistTable::effective_rules_for(
    const Prefix& dest) const {
  std::vector<std::pair<Prefix, std::uint32_t>> out;
  if (wildcard_in_src_table()) {
    if (const DestUnit* unit = dest_.find(dest);
        unit && unit->default_index && rules_.default_action(dest))
      out.emplace_back(Prefix::wildcard(width_src()), *unit->default_index);
  }
  for (const Rule& r : rules_.rules_for(dest))
    out.emplace_back(r.src, *mapping_.find(r.action));
  return out;
}

std::size_t FistTable::explicit_cell_count() const {
  std::size_t n = rules_.rules().size();
  if (wildcard_in_src_table()) {
    for (const Prefix& d : rules_.dest_prefixes()) {
      const DestUnit* unit = dest_.find(d);
      if (unit && unit->row && unit->default_index) ++n;
    }
  }
  return n;
}

std::size_t FistTable::saturate(AccessLedger* ledger) {
  std::size_t writes = 0;
  std::vector<Prefix> cols;
  src_.for_each([&cols](const PrefixTrie<SrcUnit>::Entry& e) {
    cols.push_back(e.prefix);
  });

  dest_.for_each([&](const PrefixTrie<DestUnit>::Entry& de) {
    if (!de.value.row) return;
    PrefixTrie<std::uint32_t> governing(width_src());
    for (const auto& [sp, idx] : effective_rules_for(de.prefix))
      governing.insert(sp, idx);
    for (const Prefix& q : cols) {
      if (has_effective_rule(de.prefix, q)) continue;
      const auto* gov = governing.longest_prefix_of(q, /*strict=*/false);
      const CellValue target =
          gov ? CellValue(gov->value) : CellValue{};
      if (td_.set(*de.value.row, src_.find(q)->col, target)) {
        ++writes;
        if (ledger) ledger->charge_td_write(1);
      }
    }
  });
  saturated_ = true;
  narrow_dirty_ = true;
  return writes;
}

// ---------------------------------------------------------------------------
// Lookup
// ---------------------------------------------------------------------------

CellValue FistTable::lookup_cell(std::uint32_t row, std::uint32_t col) const {
  if (dedup_active()) {
    refresh_narrow();
    return narrow_lookup(*narrow_, row, col);
  }
  return td_.get(row, col);
}

void FistTable::refresh_narrow() const {
  if (!dedup_active()) return;
  if (!narrow_ || narrow_dirty_) {
    narrow_ = std::make_unique<NarrowStore>(
        dedup_fixed_block(*this, *opts_.dedup_width));
    narrow_dirty_ = false;
  }
}

const NarrowStore* FistTable::narrow_store() const {
  if (!dedup_active()) return nullptr;
  refresh_narrow();
  return narrow_.get();
}

OracleResult FistTable::lookup(const Address& d, const Address& s,
                               AccessLedger& ledger) const {
  // Fixed pipeline cost per lookup: the TCAM stage (both tables matched in
  // parallel), the unit read, the TD or catalog+narrow read, the mapping
  // read.
  ledger.charge_tcam_read(opts_.double_tcam_request ? 2 : 1);
  ledger.charge_sram_read(dedup_active() ? 4 : 3);
  return lookup(d, s);
}

OracleResult FistTable::lookup(const Address& d, const Address& s) const {
  const auto* de = dest_.lmf_match(d);
  if (!de) return {std::nullopt, LookupVia::kMiss};
  const DestUnit& unit = de->value;
  const auto fallback = [&]() -> OracleResult {
    if (unit.default_index)
      return {mapping_.action(*unit.default_index), LookupVia::kDefault};
    return {std::nullopt, LookupVia::kMiss};
  };
  if (!unit.indicator) return fallback();
  const auto* se = src_.lmf_match(s);
  if (!se) return fallback();
  const CellValue c = lookup_cell(*unit.row, se->value.col);
  if (!c) return fallback();
  return {mapping_.action(*c), LookupVia::kRule};
}

// ---------------------------------------------------------------------------
// Sizes
// ---------------------------------------------------------------------------

std::size_t FistTable::dest_row_bearing_count() const {
  std::size_t n = 0;
  dest_.for_each([&n](const PrefixTrie<DestUnit>::Entry& e) {
    if (e.value.row) ++n;
  });
  return n;
}

std::size_t FistTable::dest_indicator_off_count() const {
  return dest_.size() - dest_row_bearing_count();
}

int FistTable::tcam_slot_width() const {
  return opts_.tcam_entry_width > 0 ? opts_.tcam_entry_width
                                    : std::max(width_dest(), width_src());
}

std::uint64_t FistTable::tcam_bits() const {
  return static_cast<std::uint64_t>(tcam_entry_count()) *
         static_cast<std::uint64_t>(tcam_slot_width());
}

std::uint64_t FistTable::td_cell_bits() const {
  return static_cast<std::uint64_t>(td_.row_count()) * td_.col_count() *
         static_cast<std::uint64_t>(mapping_.index_width());
}

std::uint64_t FistTable::unit_bits() const {
  const std::uint64_t dest_unit =
      1 + static_cast<std::uint64_t>(bits_for(td_.row_count())) +
      static_cast<std::uint64_t>(mapping_.index_width());
  const std::uint64_t src_unit = bits_for(td_.col_count());
  return dest_.size() * dest_unit + src_.size() * src_unit;
}

std::uint64_t FistTable::mapping_bits() const {
  return mapping_.payload_bits() +
         mapping_.size() * static_cast<std::uint64_t>(mapping_.index_width());
}

std::uint64_t FistTable::dedup_bits() const {
  if (!dedup_active()) return 0;
  refresh_narrow();
  return narrow_->narrow_bits() + narrow_->catalog_bits();
}

std::uint64_t FistTable::sram_bits() const {
  return td_cell_bits() + dedup_bits() + unit_bits();
}

// ---------------------------------------------------------------------------
// Introspection
// ---------------------------------------------------------------------------

CellValue FistTable::cell(const Prefix& dest, const Prefix& src) const {
  const DestUnit* du = dest_.find(dest);
  if (!du || !du->row)
    throw std::invalid_argument("destination has no row: " + dest.str());
  const SrcUnit* su = src_.find(src);
  if (!su)
    throw std::invalid_argument("source not stored: " + src.str());
  return td_.get(*du->row, su->col);
}

void FistTable::poke_cell(std::uint32_t row, std::uint32_t col, CellValue v) {
  td_.set(row, col, v);
  narrow_dirty_ = true;
}

void FistTable::assert_mutable() const {
  if (compressed_)
    throw std::logic_error("compressed tables are read-only");
}

// ---------------------------------------------------------------------------
// Dump
// ---------------------------------------------------------------------------

std::string FistTable::dump() const {
  std::ostringstream out;
  out << "fist_table width_d=" << width_dest() << " width_s=" << width_src()
      << " isolation=" << (opts_.isolation ? "on" : "off")
      << " non_homogeneous=" << (opts_.non_homogeneous ? "on" : "off")
      << " dedup=";
  if (opts_.dedup_width)
    out << *opts_.dedup_width;
  else
    out << "off";
  out << '\n';

  auto sorted = [](std::vector<Prefix> v) {
    std::sort(v.begin(), v.end(),
              [](const Prefix& a, const Prefix& b) { return a.str() < b.str(); });
    return v;
  };

  out << "dest_table entries=" << dest_.size() << '\n';
  for (const Prefix& d : sorted(dest_.prefixes())) {
    const DestUnit* u = dest_.find(d);
    out << "  " << d.str() << " indicator=" << (u->indicator ? 1 : 0)
        << " row=";
    if (u->row)
      out << *u->row;
    else
      out << '-';
    out << " default=";
    if (u->default_index)
      out << mapping_.action(*u->default_index);
    else
      out << '-';
    out << '\n';
  }

  out << "src_table entries=" << src_.size() << '\n';
  for (const Prefix& s : sorted(src_.prefixes()))
    out << "  " << s.str() << " col=" << src_.find(s)->col << '\n';

  out << "td_table rows=" << td_.row_count() << " cols=" << td_.col_count()
      << '\n';
  for (const std::uint32_t r : td_.rows()) {
    out << "  row " << r << ":";
    for (const std::uint32_t c : td_.cols()) {
      const CellValue v = td_.get(r, c);
      out << ' ';
      if (v)
        out << *v;
      else
        out << '-';
    }
    out << '\n';
  }

  out << "mapping entries=" << mapping_.size() << '\n';
  for (const auto& [idx, action] : mapping_.entries())
    out << "  " << idx << " " << action << '\n';
  return out.str();
}

}  // namespace fist
