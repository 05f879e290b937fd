#include "qorder/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace qorder {

std::vector<LevelBlock> level_blocks(unsigned first, unsigned last) {
  std::vector<LevelBlock> items;
  for (unsigned k = first; k <= last; ++k) {
    const unsigned depth = std::min(k - 1, kBlockDepth);
    const std::uint64_t blocks = std::uint64_t{1} << (k - 1 - depth);
    for (std::uint64_t b = 0; b < blocks; ++b) items.push_back({k, depth, b});
  }
  return items;
}

namespace {

void visit_block(const TreeSpec& spec, const LevelBlock& item,
                 const std::function<void(std::uint64_t, const ExtRat&)>& visit) {
  if (item.depth == 0) {
    visit(item.block, node_at(spec, item.level, item.block).value);
    return;
  }
  for_each_in_block(spec, item.level, item.depth, item.block, visit);
}

}  // namespace

std::vector<ExtRat> level_parallel(const TreeSpec& spec, unsigned k, const Exec& exec, unsigned cap) {
  check_level(k, cap);
  const auto items = level_blocks(k, k);
  std::vector<ExtRat> out(std::size_t{1} << (k - 1));
  map_chunks<int>(exec, static_cast<std::int64_t>(items.size()), [&](std::int64_t c) {
    visit_block(spec, items[static_cast<std::size_t>(c)],
                [&](std::uint64_t i, const ExtRat& x) { out[static_cast<std::size_t>(i)] = x; });
    return 0;
  });
  return out;
}

Complex sum_over_levels(const TreeSpec& spec, unsigned k, const std::function<Complex(const ExtRat&)>& f,
                        const Exec& exec) {
  check_level(k, kDefaultLevelCap);
  const auto items = level_blocks(1, k);
  const auto partials = map_chunks<ComplexSum>(exec, static_cast<std::int64_t>(items.size()), [&](std::int64_t c) {
    ComplexSum s;
    visit_block(spec, items[static_cast<std::size_t>(c)], [&](std::uint64_t, const ExtRat& x) { s.add(f(x)); });
    return s;
  });
  ComplexSum total;
  for (const auto& p : partials) total.add(p);
  return total.value();
}

std::uint64_t count_over_levels(const TreeSpec& spec, unsigned k, const std::function<bool(const ExtRat&)>& pred,
                                const Exec& exec) {
  check_level(k, kDefaultLevelCap);
  const auto items = level_blocks(1, k);
  const auto partials =
      map_chunks<std::uint64_t>(exec, static_cast<std::int64_t>(items.size()), [&](std::int64_t c) {
        std::uint64_t n = 0;
        visit_block(spec, items[static_cast<std::size_t>(c)], [&](std::uint64_t, const ExtRat& x) { n += pred(x); });
        return n;
      });
  std::uint64_t total = 0;
  for (auto p : partials) total += p;
  return total;
}

namespace reference {

std::vector<ExtRat> level_by_rows(const TreeSpec& spec, unsigned k) {
  check_level(k, kDefaultLevelCap);
  if (!spec.permuted && spec.kind != TreeKind::Dyadic) {
    // Full sequence between the ancestors; each pass inserts one generation.
    std::vector<ExtRat> row = spec.kind == TreeKind::SB ? std::vector<ExtRat>{ExtRat(0, 1), ExtRat::infinity()}
                                                        : std::vector<ExtRat>{ExtRat(0, 1), ExtRat(1, 1)};
    std::vector<ExtRat> fresh;
    for (unsigned gen = 1; gen <= k; ++gen) {
      std::vector<ExtRat> next;
      fresh.clear();
      next.reserve(2 * row.size());
      for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        next.push_back(row[i]);
        fresh.push_back(mediant(row[i], row[i + 1]));
        next.push_back(fresh.back());
      }
      next.push_back(row.back());
      row = std::move(next);
    }
    return fresh;
  }
  std::vector<ExtRat> row{tree_root(spec).value};
  for (unsigned gen = 2; gen <= k; ++gen) {
    std::vector<ExtRat> next;
    next.reserve(2 * row.size());
    for (const auto& x : row) {
      auto [l, r] = descendants(spec, x);
      next.push_back(std::move(l));
      next.push_back(std::move(r));
    }
    row = std::move(next);
  }
  return row;
}

Complex sum_over_levels(const TreeSpec& spec, unsigned k, const std::function<Complex(const ExtRat&)>& f) {
  ComplexSum total;
  for (unsigned j = 1; j <= k; ++j)
    for (const auto& x : level_by_rows(spec, j)) total.add(f(x));
  return total.value();
}

std::uint64_t count_over_levels(const TreeSpec& spec, unsigned k, const std::function<bool(const ExtRat&)>& pred) {
  std::uint64_t n = 0;
  for (unsigned j = 1; j <= k; ++j)
    for (const auto& x : level_by_rows(spec, j)) n += pred(x);
  return n;
}

}  // namespace reference

}  // namespace qorder
