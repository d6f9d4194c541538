#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fist/ledger.hpp"
#include "fist/oracle.hpp"
#include "fist/prefix.hpp"
#include "fist/prefix_trie.hpp"
#include "fist/rules.hpp"
#include "fist/tcam_layout.hpp"

namespace fist {

struct NarrowStore;

// A TD-table cell: either the index of a next hop in the mapping table, or
// invalid (no index at all; lookups fall back to the destination default).
using CellValue = std::optional<std::uint32_t>;

struct BuildOptions {
  // Keep the full-wildcard source out of the source table; defaults are
  // matched when no source entry matches at all.
  bool isolation = true;
  // Destination prefixes without source-specific rules carry no TD row and
  // are flagged by a cleared indicator bit.
  bool non_homogeneous = true;
  // Narrow-store width in cells; lookups go through catalog + narrow rows
  // when set.
  std::optional<int> dedup_width;
  // TCAM slot width in bits for storage accounting; 0 means address width.
  int tcam_entry_width = 0;
  // Model a single TCAM chip serving both tables with two sequential
  // requests.
  bool double_tcam_request = false;
  // Free slots preallocated per length cluster in the placement model.
  std::size_t cluster_prealloc = 1000;
  // Disable build-time saturation. Only for instrumentation; a table built
  // this way answers conflicted lookups wrongly until saturate() runs.
  bool saturate = true;
};

// index -> next hop interning table with reference counts; an index is
// reclaimed once nothing references it. Injective both ways.
class MappingTable {
 public:
  std::uint32_t intern(const Action& a, AccessLedger* ledger = nullptr);
  void add_ref(std::uint32_t index);
  void release(std::uint32_t index);

  // Throws std::runtime_error on an unmapped index (table corruption).
  const Action& action(std::uint32_t index) const;
  std::optional<std::uint32_t> find(const Action& a) const;

  std::size_t size() const { return live_; }
  std::size_t slot_count() const { return slots_.size(); }
  int index_width() const;                   // bits per stored index
  std::uint64_t payload_bits() const;        // next-hop payload storage

  // index/action pairs, ascending index.
  std::vector<std::pair<std::uint32_t, Action>> entries() const;

 private:
  struct Slot {
    std::optional<Action> action;
    std::uint32_t refs = 0;
  };
  std::vector<Slot> slots_;
  std::map<Action, std::uint32_t> index_;
  std::set<std::uint32_t> free_;
  std::size_t live_ = 0;
};

// The two-dimensional array of next-hop indexes. Row and column ids are
// recycled through free pools, lowest id first.
class TdTable {
 public:
  std::uint32_t alloc_row();
  std::uint32_t alloc_col();
  void free_row(std::uint32_t r);
  void free_col(std::uint32_t c);

  CellValue get(std::uint32_t r, std::uint32_t c) const;
  // Returns true if the stored value changed.
  bool set(std::uint32_t r, std::uint32_t c, CellValue v);

  const std::set<std::uint32_t>& rows() const { return rows_live_; }
  const std::set<std::uint32_t>& cols() const { return cols_live_; }
  std::size_t row_count() const { return rows_live_.size(); }
  std::size_t col_count() const { return cols_live_.size(); }

 private:
  void check(std::uint32_t r, std::uint32_t c) const;

  std::vector<std::vector<CellValue>> grid_;
  std::size_t col_cap_ = 0;
  std::set<std::uint32_t> rows_live_, cols_live_;
  std::set<std::uint32_t> rows_free_, cols_free_;
};

// The full forwarding state: destination and source TCAM tables (emulated as
// tries plus a slot placement model), the TD-table, and the mapping table.
//
// Lookups are safe under shared concurrent access while no update runs;
// updates require exclusive access (single writer).
class FistTable {
 public:
  struct DestUnit {
    bool indicator = false;
    std::optional<std::uint32_t> row;
    std::optional<std::uint32_t> default_index;
  };
  struct SrcUnit {
    std::uint32_t col = 0;
  };

  static FistTable build(const RuleSet& rs, const BuildOptions& opts = {},
                         AccessLedger* ledger = nullptr);

  ~FistTable();
  FistTable(FistTable&&) noexcept;
  FistTable& operator=(FistTable&&) noexcept;

  // Fills every conflicted cell with the action of the longest governing
  // source rule, or marks it invalid when nothing governs it. Returns the
  // number of cells whose stored value changed; a second run returns 0.
  std::size_t saturate(AccessLedger* ledger = nullptr);

  OracleResult lookup(const Address& d, const Address& s,
                      AccessLedger& ledger) const;
  OracleResult lookup(const Address& d, const Address& s) const;

  // --- incremental updates (update.cpp) ---

  struct TdWrite {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    CellValue before;
    CellValue after;
  };
  using WriteLog = std::vector<TdWrite>;

  struct UpdateStats {
    std::size_t domain_writes = 0;  // cells of the updated rule's domain
    std::size_t bulk_writes = 0;    // row/column initialization copies
  };

  UpdateStats insert_rule(const Prefix& dest, const Prefix& src,
                          const Action& action, AccessLedger* ledger = nullptr,
                          WriteLog* log = nullptr);
  UpdateStats delete_rule(const Prefix& dest, const Prefix& src,
                          AccessLedger* ledger = nullptr,
                          WriteLog* log = nullptr);
  UpdateStats update_rule(const Prefix& dest, const Prefix& src,
                          const Action& action, AccessLedger* ledger = nullptr,
                          WriteLog* log = nullptr);

  // --- sizes ---

  std::size_t dest_entry_count() const { return dest_.size(); }
  std::size_t src_entry_count() const { return src_.size(); }
  std::size_t tcam_entry_count() const { return dest_.size() + src_.size(); }
  std::size_t dest_row_bearing_count() const;
  std::size_t dest_indicator_off_count() const;

  int tcam_slot_width() const;
  std::uint64_t tcam_bits() const;
  std::uint64_t td_cell_bits() const;
  std::uint64_t unit_bits() const;
  std::uint64_t mapping_bits() const;
  std::uint64_t dedup_bits() const;
  std::uint64_t sram_bits() const;

  // --- introspection ---

  int width_dest() const { return rules_.width_dest(); }
  int width_src() const { return rules_.width_src(); }
  const RuleSet& rules() const { return rules_; }
  const BuildOptions& options() const { return opts_; }
  bool is_saturated() const { return saturated_; }
  bool is_compressed() const { return compressed_; }
  bool dedup_active() const { return opts_.dedup_width.has_value(); }
  bool wildcard_in_src_table() const;

  const DestUnit* dest_unit(const Prefix& dest) const {
    return dest_.find(dest);
  }
  const SrcUnit* src_unit(const Prefix& src) const { return src_.find(src); }
  std::vector<Prefix> dest_prefixes() const { return dest_.prefixes(); }
  std::vector<Prefix> src_prefixes() const { return src_.prefixes(); }
  const PrefixTrie<DestUnit>& dest_trie() const { return dest_; }
  const PrefixTrie<SrcUnit>& src_trie() const { return src_; }
  const TdTable& td() const { return td_; }
  const MappingTable& mapping() const { return mapping_; }

  // Cell addressed by prefixes; throws std::invalid_argument when the
  // destination has no row or the source is not stored.
  CellValue cell(const Prefix& dest, const Prefix& src) const;

  // Raw cell write for instrumentation and fault injection in tests.
  void poke_cell(std::uint32_t row, std::uint32_t col, CellValue v);

  // True when a stored rule governs this exact (dest, src) pair, counting a
  // materialized wildcard-source default when the wildcard sits in the
  // source table.
  bool has_effective_rule(const Prefix& dest, const Prefix& src) const;
  std::vector<std::pair<Prefix, std::uint32_t>> effective_rules_for(
      const Prefix& dest) const;
  std::size_t explicit_cell_count() const;

  const NarrowStore* narrow_store() const;

  // Deterministic, byte-stable text serialization.
  std::string dump() const;

 private:
  FistTable(RuleSet rs, BuildOptions opts);

  friend struct TableAssembly;

  void charge_tcam(AccessLedger* ledger, std::uint64_t writes) const {
    if (ledger) ledger->charge_tcam_write(writes);
  }
  CellValue lookup_cell(std::uint32_t row, std::uint32_t col) const;
  void refresh_narrow() const;
  void assert_mutable() const;

  // update.cpp internals
  void ensure_dest(const Prefix& dest, AccessLedger* ledger);
  void ensure_row(const Prefix& dest, AccessLedger* ledger, WriteLog* log,
                  UpdateStats& stats);
  void ensure_src(const Prefix& src, AccessLedger* ledger, WriteLog* log,
                  UpdateStats& stats);
  std::size_t write_cells(const Prefix& dest, const std::vector<Prefix>& srcs,
                          CellValue v, AccessLedger* ledger, WriteLog* log);
  UpdateStats upsert_default(const Prefix& dest, const Action& action,
                             AccessLedger* ledger, WriteLog* log);
  UpdateStats remove_default(const Prefix& dest, AccessLedger* ledger,
                             WriteLog* log);
  void cleanup_dest(const Prefix& dest, AccessLedger* ledger);
  void cleanup_src(const Prefix& src, AccessLedger* ledger);
  void cleanup_wildcard_col(AccessLedger* ledger);

  RuleSet rules_;
  BuildOptions opts_;
  PrefixTrie<DestUnit> dest_;
  PrefixTrie<SrcUnit> src_;
  TdTable td_;
  MappingTable mapping_;
  TcamLayout dest_layout_;
  TcamLayout src_layout_;
  bool saturated_ = false;
  bool compressed_ = false;
  mutable std::unique_ptr<NarrowStore> narrow_;
  mutable bool narrow_dirty_ = false;
};

}  // namespace fist
