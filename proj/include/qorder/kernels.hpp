#pragma once

// Data-parallel kernels over tree levels, and the serial reference
// implementations they are tested and benchmarked against.

#include "qorder/exact_core.hpp"
#include "qorder/observable.hpp"
#include "qorder/parallel.hpp"
#include "qorder/tree_gen.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qorder {

// Subtree depth of one work item. A level of 2^(k-1) entries is cut into
// 2^(k-1-depth) blocks regardless of the worker count.
inline constexpr unsigned kBlockDepth = 10;

struct LevelBlock {
  unsigned level;
  unsigned depth;
  std::uint64_t block;
};

// Work items covering levels [first, last] in left-to-right order.
std::vector<LevelBlock> level_blocks(unsigned first, unsigned last);

std::vector<ExtRat> level_parallel(const TreeSpec& spec, unsigned k, const Exec& exec,
                                   unsigned cap = kDefaultLevelCap);

// sum of f over levels 1..k, combined in fixed block order.
Complex sum_over_levels(const TreeSpec& spec, unsigned k, const std::function<Complex(const ExtRat&)>& f,
                        const Exec& exec);

std::uint64_t count_over_levels(const TreeSpec& spec, unsigned k, const std::function<bool(const ExtRat&)>& pred,
                                const Exec& exec);

namespace reference {

// Whole-row construction: mediant insertion between consecutive entries of
// the running Farey/SB sequence, or the descendant rule applied row by row.
std::vector<ExtRat> level_by_rows(const TreeSpec& spec, unsigned k);

Complex sum_over_levels(const TreeSpec& spec, unsigned k, const std::function<Complex(const ExtRat&)>& f);

std::uint64_t count_over_levels(const TreeSpec& spec, unsigned k, const std::function<bool(const ExtRat&)>& pred);

}  // namespace reference

}  // namespace qorder
