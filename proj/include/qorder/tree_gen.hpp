#pragma once

// The six binary trees of rationals: Stern-Brocot (SB), Farey and dyadic,
// each in plain and permuted form. Levels are 1-indexed, the root sits on
// level 1 and the ancestors (0/1, 1/0 or 0/1, 1/1) are never emitted.

#include "qorder/exact_core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace qorder {

enum class TreeKind { SB, Farey, Dyadic };

struct TreeSpec {
  TreeKind kind = TreeKind::SB;
  bool permuted = false;

  std::string name() const;
  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

inline constexpr unsigned kDefaultLevelCap = 24;

// A vertex together with its two mediant parents. The parents are only
// meaningful for the plain SB and Farey trees.
struct TreeNode {
  ExtRat value;
  ExtRat lo;
  ExtRat hi;
};

TreeNode tree_root(const TreeSpec& spec);
std::pair<TreeNode, TreeNode> child_nodes(const TreeSpec& spec, const TreeNode& node);

// Node with 0-based position `index` on level k, reached by reading the
// k-1 low bits of index from the top (0 = left).
TreeNode node_at(const TreeSpec& spec, unsigned k, std::uint64_t index);

// Left and right descendants of an arbitrary vertex x.
std::pair<ExtRat, ExtRat> descendants(const TreeSpec& spec, const ExtRat& x);

// Left-to-right listing of level k (2^(k-1) entries).
std::vector<ExtRat> level(const TreeSpec& spec, unsigned k, unsigned cap = kDefaultLevelCap);

// Streams level k in order without materializing it; the callback receives
// the 0-based index and the value.
void for_each_in_level(const TreeSpec& spec, unsigned k,
                       const std::function<void(std::uint64_t, const ExtRat&)>& visit,
                       unsigned cap = kDefaultLevelCap);

// Streams entries [first, first + 2^depth) of level k: the subtree of
// depth `depth` below node_at(spec, k - depth, first >> depth).
void for_each_in_block(const TreeSpec& spec, unsigned k, unsigned depth, std::uint64_t block,
                       const std::function<void(std::uint64_t, const ExtRat&)>& visit);

// Number of hyperbinary representations of n.
std::uint64_t hyperbinary(std::uint64_t n);
// b(0), ..., b(n) from the recursion b(2m+1) = b(m), b(2m+2) = b(m) + b(m+1).
std::vector<std::uint64_t> hyperbinary_table(std::uint64_t n);

void check_level(unsigned k, unsigned cap);

}  // namespace qorder
