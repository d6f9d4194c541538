#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fist/prefix.hpp"

namespace fist {

// Binary trie keyed by prefix bits. A prefix is present iff its exact node
// carries an entry; interior nodes without entries are pure structure. The
// parent relation over stored prefixes is "longest stored strict prefix".
//
// Reads are safe under shared concurrent access once construction is done;
// mutation requires exclusive access. No internal locking.
template <typename T>
class PrefixTrie {
 public:
  struct Entry {
    Prefix prefix;
    T value;
  };

  explicit PrefixTrie(int width) : width_(width), root_(new Node) {}

  PrefixTrie(PrefixTrie&&) noexcept = default;
  PrefixTrie& operator=(PrefixTrie&&) noexcept = default;
  PrefixTrie(const PrefixTrie&) = delete;
  PrefixTrie& operator=(const PrefixTrie&) = delete;

  int width() const { return width_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  T& insert(const Prefix& p, T value) {
    check(p);
    Node* n = root_.get();
    for (int i = 0; i < p.length(); ++i) {
      auto& kid = n->kid[p.bit(i) ? 1 : 0];
      if (!kid) kid.reset(new Node);
      n = kid.get();
    }
    if (n->entry)
      throw std::logic_error("prefix already stored: " + p.str());
    n->entry.emplace(Entry{p, std::move(value)});
    ++size_;
    return n->entry->value;
  }

  bool erase(const Prefix& p) {
    check(p);
    Node* n = root_.get();
    std::vector<Node*> path{n};
    for (int i = 0; i < p.length() && n; ++i) {
      n = n->kid[p.bit(i) ? 1 : 0].get();
      path.push_back(n);
    }
    if (!n || !n->entry) return false;
    n->entry.reset();
    --size_;
    // prune childless entry-less tail
    for (int i = p.length(); i > 0; --i) {
      Node* cur = path[static_cast<std::size_t>(i)];
      if (cur->entry || cur->kid[0] || cur->kid[1]) break;
      path[static_cast<std::size_t>(i) - 1]->kid[p.bit(i - 1) ? 1 : 0].reset();
    }
    return true;
  }

  T* find(const Prefix& p) {
    return const_cast<T*>(static_cast<const PrefixTrie*>(this)->find(p));
  }

  const T* find(const Prefix& p) const {
    check(p);
    const Node* n = root_.get();
    for (int i = 0; i < p.length() && n; ++i)
      n = n->kid[p.bit(i) ? 1 : 0].get();
    return (n && n->entry) ? &n->entry->value : nullptr;
  }

  bool contains(const Prefix& p) const { return find(p) != nullptr; }

  // Longest stored prefix matching the address, or null on a miss.
  const Entry* lmf_match(const Address& a) const {
    if (a.width() != width_)
      throw std::invalid_argument("trie width " + std::to_string(width_) +
                                  " vs address width " +
                                  std::to_string(a.width()));
    const Node* n = root_.get();
    const Entry* best = n->entry ? &*n->entry : nullptr;
    for (int i = 0; i < width_ && n; ++i) {
      n = n->kid[a.bit(i) ? 1 : 0].get();
      if (n && n->entry) best = &*n->entry;
    }
    return best;
  }

  // Longest stored prefix of p. With strict=true, p itself is excluded;
  // this is the parent relation over stored prefixes.
  const Entry* longest_prefix_of(const Prefix& p, bool strict) const {
    check(p);
    const Node* n = root_.get();
    const Entry* best = nullptr;
    const int limit = strict ? p.length() - 1 : p.length();
    if (n->entry && limit >= 0) best = &*n->entry;
    for (int i = 0; i < p.length() && n; ++i) {
      n = n->kid[p.bit(i) ? 1 : 0].get();
      if (n && n->entry && i < limit) best = &*n->entry;
    }
    return best;
  }

  std::optional<Prefix> parent_of(const Prefix& p) const {
    const Entry* e = longest_prefix_of(p, /*strict=*/true);
    return e ? std::optional<Prefix>(e->prefix) : std::nullopt;
  }

  // Stored prefixes whose parent is p: the first stored node on every
  // branch below p's position. p itself need not be stored.
  std::vector<Prefix> stored_children(const Prefix& p) const {
    check(p);
    std::vector<Prefix> out;
    const Node* n = root_.get();
    for (int i = 0; i < p.length() && n; ++i)
      n = n->kid[p.bit(i) ? 1 : 0].get();
    if (!n) return out;
    collect_first_stored(n->kid[0].get(), out);
    collect_first_stored(n->kid[1].get(), out);
    return out;
  }

  // Depth-first, 0-branch first, node before children. Deterministic.
  void for_each(const std::function<void(const Entry&)>& fn) const {
    walk(root_.get(), fn);
  }

  std::vector<Prefix> prefixes() const {
    std::vector<Prefix> out;
    out.reserve(size_);
    for_each([&out](const Entry& e) { out.push_back(e.prefix); });
    return out;
  }

 private:
  struct Node {
    std::optional<Entry> entry;
    std::array<std::unique_ptr<Node>, 2> kid;
  };

  void check(const Prefix& p) const {
    if (p.width() != width_)
      throw std::invalid_argument("trie width " + std::to_string(width_) +
                                  " vs prefix width " +
                                  std::to_string(p.width()));
  }

  static void collect_first_stored(const Node* n, std::vector<Prefix>& out) {
    if (!n) return;
    if (n->entry) {
      out.push_back(n->entry->prefix);
      return;
    }
    collect_first_stored(n->kid[0].get(), out);
    collect_first_stored(n->kid[1].get(), out);
  }

  static void walk(const Node* n, const std::function<void(const Entry&)>& fn) {
    if (!n) return;
    if (n->entry) fn(*n->entry);
    walk(n->kid[0].get(), fn);
    walk(n->kid[1].get(), fn);
  }

  int width_;
  std::size_t size_ = 0;
  std::unique_ptr<Node> root_;
};

}  // namespace fist
