#include "fist/colored_forest.hpp"

#include <algorithm>
#include <stdexcept>

namespace fist {

bool ColoredForest::is_black(const Prefix& src) const {
  const auto it = std::find_if(
      nodes.begin(), nodes.end(),
      [&src](const auto& n) { return n.first == src; });
  return it != nodes.end() && it->second;
}

ColoredForest colored_forest(const FistTable& t, const Prefix& dest) {
  ColoredForest cf;
  cf.dest = dest;
  t.src_trie().for_each([&](const PrefixTrie<FistTable::SrcUnit>::Entry& e) {
    cf.nodes.emplace_back(e.prefix, t.has_effective_rule(dest, e.prefix));
  });
  return cf;
}

std::vector<Prefix> domain_unchecked(const FistTable& t, const Prefix& dest,
                                     const Prefix& src) {
  if (!t.src_trie().contains(src))
    throw std::invalid_argument("source not stored: " + src.str());
  std::vector<Prefix> out{src};
  // depth-first over stored children, pruned at black nodes
  std::vector<Prefix> pending = t.src_trie().stored_children(src);
  while (!pending.empty()) {
    const Prefix p = pending.back();
    pending.pop_back();
    if (t.has_effective_rule(dest, p)) continue;
    out.push_back(p);
    for (const Prefix& q : t.src_trie().stored_children(p))
      pending.push_back(q);
  }
  return out;
}

std::vector<Prefix> domain(const FistTable& t, const Prefix& dest,
                           const Prefix& src) {
  if (!t.has_effective_rule(dest, src))
    throw std::invalid_argument("(" + dest.str() + ", " + src.str() +
                                ") is not an explicit rule");
  return domain_unchecked(t, dest, src);
}

}  // namespace fist
