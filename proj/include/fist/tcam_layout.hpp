#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fist/prefix.hpp"

namespace fist {

// Slot placement model for a priority-ordered TCAM: prefixes of the same
// length are clustered together, longest cluster first, with free space
// between clusters so most inserts cost a single entry write. Within one
// cluster order is irrelevant because equal-length prefixes cannot both
// match the same address.
class TcamLayout {
 public:
  // One cluster per prefix length 0..width, each preallocated with
  // `cluster_capacity` slots.
  TcamLayout(int width, std::size_t cluster_capacity = 1000);

  // Returns the number of TCAM entry writes (the stored entry plus any
  // boundary entries moved to open a gap). Throws std::length_error when
  // every slot is taken, std::invalid_argument on a duplicate.
  std::uint64_t insert(const Prefix& p);

  // Invalidating a slot costs one write.
  std::uint64_t erase(const Prefix& p);

  bool contains(const Prefix& p) const;
  std::size_t size() const { return by_prefix_.size(); }
  std::size_t capacity() const { return slots_.size(); }

  // First match scanning clusters in descending length order; equals a
  // longest-match trie lookup.
  std::optional<Prefix> first_match(const Address& a) const;

 private:
  struct Cluster {
    std::size_t begin;  // occupied region [begin, end)
    std::size_t end;
    std::set<std::size_t> holes;  // freed slots inside the region
  };

  // Cluster array index for a prefix length; longest length sits first.
  std::size_t cluster_index(int length) const {
    return static_cast<std::size_t>(width_ - length);
  }
  std::size_t region_limit(std::size_t ci) const;  // exclusive upper bound
  std::size_t region_floor(std::size_t ci) const;  // inclusive lower bound

  int width_;
  std::vector<std::optional<Prefix>> slots_;
  std::vector<Cluster> clusters_;
  std::map<Prefix, std::size_t> by_prefix_;
};

}  // namespace fist
