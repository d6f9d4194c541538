#pragma once

#include <vector>

#include "fist/fist_table.hpp"
#include "fist/prefix.hpp"

namespace fist {

// The per-destination coloring of source-table prefixes: a node is black
// when an explicit rule for (dest, node) exists, white otherwise. Edges
// follow the stored-parent relation over the source table; without the full
// wildcard at the root this is a forest rather than a tree.
struct ColoredForest {
  Prefix dest;
  std::vector<std::pair<Prefix, bool>> nodes;  // (source prefix, black)

  bool is_black(const Prefix& src) const;
};

ColoredForest colored_forest(const FistTable& t, const Prefix& dest);

// The domain of a black node: itself plus every white descendant reachable
// without crossing another black node. This is exactly the cell set an
// update of (dest, src) must rewrite. Throws std::invalid_argument when src
// is not stored or not black.
std::vector<Prefix> domain(const FistTable& t, const Prefix& dest,
                           const Prefix& src);

// Same set, without requiring src to be black yet; used while inserting.
std::vector<Prefix> domain_unchecked(const FistTable& t, const Prefix& dest,
                                     const Prefix& src);

}  // namespace fist
