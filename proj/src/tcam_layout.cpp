#include "fist/tcam_layout.hpp"

#include <stdexcept>

namespace fist {

TcamLayout::TcamLayout(int width, std::size_t cluster_capacity)
    : width_(width) {
  if (width < 0 || cluster_capacity == 0)
    throw std::invalid_argument("bad layout geometry");
  const std::size_t n = static_cast<std::size_t>(width + 1);
  slots_.resize(n * cluster_capacity);
  clusters_.resize(n);
  for (std::size_t ci = 0; ci < n; ++ci) {
    clusters_[ci].begin = ci * cluster_capacity;
    clusters_[ci].end = ci * cluster_capacity;
  }
}

std::size_t TcamLayout::region_limit(std::size_t ci) const {
  return ci + 1 < clusters_.size() ? clusters_[ci + 1].begin : slots_.size();
}

std::size_t TcamLayout::region_floor(std::size_t ci) const {
  return ci == 0 ? 0 : clusters_[ci - 1].end;
}

std::uint64_t TcamLayout::insert(const Prefix& p) {
  if (p.width() != width_)
    throw std::invalid_argument("layout width mismatch for " + p.str());
  if (by_prefix_.count(p))
    throw std::invalid_argument("prefix already placed: " + p.str());

  const std::size_t ci = cluster_index(p.length());
  Cluster& c = clusters_[ci];

  auto place = [&](std::size_t pos) {
    slots_[pos] = p;
    by_prefix_.emplace(p, pos);
  };

  if (!c.holes.empty()) {
    const std::size_t pos = *c.holes.begin();
    c.holes.erase(c.holes.begin());
    place(pos);
    return 1;
  }
  if (c.end < region_limit(ci)) {
    place(c.end++);
    return 1;
  }
  if (c.begin > region_floor(ci)) {
    place(--c.begin);
    return 1;
  }

  // Jammed between neighbours: shift one boundary entry per crossed cluster
  // toward the nearest cluster with spare room.
  auto has_room_up = [&](std::size_t j) {
    return !clusters_[j].holes.empty() || clusters_[j].end < region_limit(j);
  };
  auto has_room_down = [&](std::size_t j) {
    return !clusters_[j].holes.empty() || clusters_[j].begin > region_floor(j);
  };
  std::size_t up = ci, down = ci;
  bool found_up = false, found_down = false;
  for (std::size_t j = ci + 1; j < clusters_.size(); ++j)
    if (has_room_up(j)) {
      up = j;
      found_up = true;
      break;
    }
  for (std::size_t j = ci; j-- > 0;)
    if (has_room_down(j)) {
      down = j;
      found_down = true;
      break;
    }
  if (!found_up && !found_down)
    throw std::length_error("tcam layout capacity exhausted");

  std::uint64_t writes = 0;
  const bool go_up =
      found_up && (!found_down || up - ci <= ci - down);

  auto relocate = [&](std::size_t from, std::size_t to) {
    slots_[to] = slots_[from];
    by_prefix_[*slots_[to]] = to;
    slots_[from].reset();
    ++writes;
  };

  if (go_up) {
    for (std::size_t k = up; k > ci; --k) {
      Cluster& ck = clusters_[k];
      if (ck.begin == ck.end) {  // empty cluster, region slides for free
        ++ck.begin;
        ++ck.end;
        continue;
      }
      std::size_t target;
      if (!ck.holes.empty()) {
        target = *ck.holes.begin();
        ck.holes.erase(ck.holes.begin());
      } else {
        target = ck.end++;
      }
      if (target != ck.begin) relocate(ck.begin, target);
      ++ck.begin;
    }
    place(c.end++);
  } else {
    for (std::size_t k = down; k < ci; ++k) {
      Cluster& ck = clusters_[k];
      if (ck.begin == ck.end) {
        --ck.begin;
        --ck.end;
        continue;
      }
      std::size_t target;
      if (!ck.holes.empty()) {
        target = *ck.holes.rbegin();
        ck.holes.erase(std::prev(ck.holes.end()));
      } else {
        target = --ck.begin;
      }
      if (target != ck.end - 1) relocate(ck.end - 1, target);
      --ck.end;
    }
    place(--c.begin);
  }
  return writes + 1;
}

std::uint64_t TcamLayout::erase(const Prefix& p) {
  const auto it = by_prefix_.find(p);
  if (it == by_prefix_.end())
    throw std::invalid_argument("prefix not placed: " + p.str());
  const std::size_t pos = it->second;
  by_prefix_.erase(it);
  slots_[pos].reset();
  Cluster& c = clusters_[cluster_index(p.length())];
  c.holes.insert(pos);
  while (c.begin < c.end && c.holes.count(c.begin)) c.holes.erase(c.begin++);
  while (c.end > c.begin && c.holes.count(c.end - 1)) c.holes.erase(--c.end);
  return 1;
}

bool TcamLayout::contains(const Prefix& p) const {
  return by_prefix_.count(p) != 0;
}

std::optional<Prefix> TcamLayout::first_match(const Address& a) const {
  for (const Cluster& c : clusters_)
    for (std::size_t pos = c.begin; pos < c.end; ++pos)
      if (slots_[pos] && slots_[pos]->matches(a)) return slots_[pos];
  return std::nullopt;
}

}  // namespace fist
