#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fist/fingerprint.hpp"
#include "fist/fist_table.hpp"

namespace fist {

// ---------------------------------------------------------------------------
// One-dimensional table minimization
// ---------------------------------------------------------------------------

struct OrtcEntry {
  Prefix prefix;
  std::uint64_t action = 0;

  bool operator==(const OrtcEntry&) const = default;
};

// Minimizes a longest-match prefix table over opaque comparable actions:
// every address resolves to the same action as before, with the fewest
// possible entries. The table must cover the whole address space, either
// through its own entries or through `root_action`, which acts as a
// zero-length entry; otherwise std::invalid_argument is thrown.
std::vector<OrtcEntry> ortc(int width, const std::vector<OrtcEntry>& table,
                            std::optional<std::uint64_t> root_action =
                                std::nullopt);

// ---------------------------------------------------------------------------
// Whole-table transforms. Both require a saturated input and produce a
// lookup-equivalent table that is read-only (updates rejected).
// ---------------------------------------------------------------------------

// Minimizes both TCAM tables: destination prefixes are merged when their
// whole observable behavior (row vector plus default) is equal under
// longest-match semantics, source prefixes when their column vectors are.
// Surviving prefixes share representative rows/columns.
FistTable comp_tcam(const FistTable& t,
                    DigestKind digest = DigestKind::kSha1);

// Collapses duplicate rows and duplicate columns only; prefixes and their
// order are untouched. The result has exactly (distinct row vectors) x
// (distinct column vectors) cells.
FistTable dedup_rows_cols(const FistTable& t,
                          DigestKind digest = DigestKind::kSha1);

// ---------------------------------------------------------------------------
// Fixed-block deduplication
// ---------------------------------------------------------------------------

class BloomFilter {
 public:
  BloomFilter() : BloomFilter(64, 4) {}
  BloomFilter(std::size_t bits, int hashes);

  void add(const Fingerprint& fp);
  // Never false for a fingerprint that was added.
  bool possibly_contains(const Fingerprint& fp) const;

  std::size_t bit_count() const { return bits_.size(); }
  int hash_count() const { return hashes_; }

 private:
  std::size_t position(const Fingerprint& fp, int i) const;

  std::vector<bool> bits_;
  int hashes_;
};

// Rows cut into fixed-width chunks (narrow rows); one copy of each distinct
// chunk survives in the narrow TD-table, and the catalog maps every
// (row, chunk) back to it. Reconstruction is bit-exact; padding cells are
// the invalid sentinel.
struct NarrowStore {
  int narrow_width = 0;
  int cell_bits = 1;
  DigestKind digest = DigestKind::kSha1;

  std::vector<std::vector<CellValue>> narrow_rows;
  // TD row id -> narrow row id per chunk index.
  std::map<std::uint32_t, std::vector<std::uint32_t>> catalog;
  std::unordered_map<Fingerprint, std::vector<std::uint32_t>, FingerprintHash>
      narrow_index;
  BloomFilter filter;

  std::uint64_t chunks_total = 0;
  std::uint64_t filter_false_positives = 0;

  std::uint64_t narrow_bits() const;
  std::uint64_t catalog_bits() const;
  std::uint64_t filter_bits() const { return filter.bit_count(); }
};

NarrowStore dedup_fixed_block(const FistTable& t, int narrow_width,
                              DigestKind digest = DigestKind::kSha1);

// catalog[(row, col / width)] -> narrow row, then its (col % width) cell.
// Throws std::invalid_argument for ids outside the store. Charges two SRAM
// reads (catalog, narrow row) when a ledger is given.
CellValue narrow_lookup(const NarrowStore& store, std::uint32_t row,
                        std::uint32_t col, AccessLedger* ledger = nullptr);

// Canonical byte serialization of a cell vector: 8 bytes per cell, valid
// cells as their little-endian index, invalid cells as the all-ones
// sentinel, so padded and genuinely invalid cells serialize identically.
std::vector<std::uint8_t> serialize_cells(const std::vector<CellValue>& cells);

// ---------------------------------------------------------------------------
// Direct table assembly, used by the transforms above.
// ---------------------------------------------------------------------------

struct TableAssembly {
  struct Dest {
    Prefix prefix;
    std::optional<std::size_t> row;  // bank row; none = indicator off
    std::optional<Action> default_action;
  };
  struct Src {
    Prefix prefix;
    std::size_t col = 0;  // bank column
  };

  int width_dest = 0;
  int width_src = 0;
  BuildOptions opts;
  std::vector<Dest> dests;
  std::vector<Src> srcs;
  // cells[bank row][bank column]; none = invalid cell
  std::vector<std::vector<std::optional<Action>>> cells;

  FistTable assemble() const;
};

}  // namespace fist
