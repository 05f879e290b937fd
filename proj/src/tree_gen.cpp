#include "qorder/tree_gen.hpp"

#include "qorder/lr_coding.hpp"

#include <stdexcept>

namespace qorder {

namespace {

bool is_power_of_two(const Integer& n) { return sgn(n) > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

bool is_dyadic_vertex(const ExtRat& x) {
  return !x.is_zero() && x < ExtRat(1, 1) && is_power_of_two(x.den()) && x.den() >= 2;
}

bool in_open_unit(const ExtRat& x) { return !x.is_zero() && x < ExtRat(1, 1); }

std::pair<ExtRat, ExtRat> value_children(const TreeSpec& spec, const ExtRat& x) {
  const Integer& p = x.num();
  const Integer& q = x.den();
  switch (spec.kind) {
    case TreeKind::SB:  // permuted only: {p/(p+q), (p+q)/q}
      return {ExtRat::coprime(p, p + q), ExtRat::coprime(p + q, q)};
    case TreeKind::Farey:  // permuted only: {p/(p+q), q/(2q-p)}
      return {ExtRat::coprime(p, p + q), ExtRat::coprime(q, 2 * q - p)};
    case TreeKind::Dyadic:
      if (spec.permuted) return {ExtRat::coprime(p, 2 * q), ExtRat::coprime(p + q, 2 * q)};
      return {ExtRat::coprime(2 * p - 1, 2 * q), ExtRat::coprime(2 * p + 1, 2 * q)};
  }
  throw std::logic_error("unknown tree kind");
}

bool uses_mediants(const TreeSpec& spec) { return !spec.permuted && spec.kind != TreeKind::Dyadic; }

void dfs(const TreeSpec& spec, const TreeNode& node, unsigned depth, std::uint64_t& index,
         const std::function<void(std::uint64_t, const ExtRat&)>& visit) {
  if (depth == 0) {
    visit(index++, node.value);
    return;
  }
  auto [left, right] = child_nodes(spec, node);
  dfs(spec, left, depth - 1, index, visit);
  dfs(spec, right, depth - 1, index, visit);
}

}  // namespace

std::string TreeSpec::name() const {
  std::string base = kind == TreeKind::SB ? "sb" : kind == TreeKind::Farey ? "farey" : "dyadic";
  return permuted ? base + "-permuted" : base;
}

void check_level(unsigned k, unsigned cap) {
  if (k < 1) throw std::out_of_range("tree levels start at 1");
  if (k > cap)
    throw std::out_of_range("level " + std::to_string(k) + " exceeds the cap " + std::to_string(cap));
}

TreeNode tree_root(const TreeSpec& spec) {
  if (spec.kind == TreeKind::SB) return {ExtRat(1, 1), ExtRat(0, 1), ExtRat::infinity()};
  return {ExtRat(1, 2), ExtRat(0, 1), ExtRat(1, 1)};
}

std::pair<TreeNode, TreeNode> child_nodes(const TreeSpec& spec, const TreeNode& node) {
  if (uses_mediants(spec)) {
    TreeNode left{ExtRat::coprime(node.lo.num() + node.value.num(), node.lo.den() + node.value.den()), node.lo,
                  node.value};
    TreeNode right{ExtRat::coprime(node.value.num() + node.hi.num(), node.value.den() + node.hi.den()),
                   node.value, node.hi};
    return {std::move(left), std::move(right)};
  }
  auto [l, r] = value_children(spec, node.value);
  return {TreeNode{std::move(l), {}, {}}, TreeNode{std::move(r), {}, {}}};
}

TreeNode node_at(const TreeSpec& spec, unsigned k, std::uint64_t index) {
  check_level(k, 63);
  if (index >= (std::uint64_t{1} << (k - 1))) throw std::out_of_range("index past the end of the level");
  TreeNode node = tree_root(spec);
  for (unsigned bit = k - 1; bit-- > 0;) {
    auto children = child_nodes(spec, node);
    node = ((index >> bit) & 1u) ? std::move(children.second) : std::move(children.first);
  }
  return node;
}

std::pair<ExtRat, ExtRat> descendants(const TreeSpec& spec, const ExtRat& x) {
  switch (spec.kind) {
    case TreeKind::SB:
      if (x.is_zero() || x.is_infinite()) throw std::domain_error(x.str() + " is not a vertex of " + spec.name());
      break;
    case TreeKind::Farey:
      if (!in_open_unit(x)) throw std::domain_error(x.str() + " is not a vertex of " + spec.name());
      break;
    case TreeKind::Dyadic:
      if (!is_dyadic_vertex(x)) throw std::domain_error(x.str() + " is not a vertex of " + spec.name());
      break;
  }
  if (!uses_mediants(spec)) return value_children(spec, x);
  const ExtRat base = spec.kind == TreeKind::Farey ? phi_inv(x) : x;
  const Parents par = parents(base);
  TreeNode node{base, par.left, par.right};
  auto [l, r] = child_nodes(TreeSpec{TreeKind::SB, false}, node);
  if (spec.kind == TreeKind::Farey) return {phi(l.value), phi(r.value)};
  return {std::move(l.value), std::move(r.value)};
}

void for_each_in_block(const TreeSpec& spec, unsigned k, unsigned depth, std::uint64_t block,
                       const std::function<void(std::uint64_t, const ExtRat&)>& visit) {
  if (depth >= k) throw std::out_of_range("block depth must be below the level");
  const TreeNode start = node_at(spec, k - depth, block);
  std::uint64_t index = block << depth;
  dfs(spec, start, depth, index, visit);
}

void for_each_in_level(const TreeSpec& spec, unsigned k,
                       const std::function<void(std::uint64_t, const ExtRat&)>& visit, unsigned cap) {
  check_level(k, cap);
  std::uint64_t index = 0;
  dfs(spec, tree_root(spec), k - 1, index, visit);
}

std::vector<ExtRat> level(const TreeSpec& spec, unsigned k, unsigned cap) {
  check_level(k, cap);
  std::vector<ExtRat> out;
  out.reserve(std::size_t{1} << (k - 1));
  for_each_in_level(spec, k, [&](std::uint64_t, const ExtRat& x) { out.push_back(x); }, cap);
  return out;
}

namespace {

// (b(m), b(m+1))
std::pair<std::uint64_t, std::uint64_t> hyperbinary_pair(std::uint64_t m) {
  if (m == 0) return {1, 1};
  if (m % 2 == 1) {
    const auto [bj, bj1] = hyperbinary_pair((m - 1) / 2);
    return {bj, bj + bj1};
  }
  const auto [bj, bj1] = hyperbinary_pair((m - 2) / 2);
  return {bj + bj1, bj1};
}

}  // namespace

std::uint64_t hyperbinary(std::uint64_t n) { return hyperbinary_pair(n).first; }

std::vector<std::uint64_t> hyperbinary_table(std::uint64_t n) {
  std::vector<std::uint64_t> b(n + 1);
  b[0] = 1;
  for (std::uint64_t m = 1; m <= n; ++m) {
    const std::uint64_t j = (m - 1) / 2;
    b[m] = (m % 2 == 1) ? b[j] : b[j] + b[j + 1];
  }
  return b;
}

}  // namespace qorder
