#pragma once

// Independent brute-force recomputations used as test oracles. They share no
// code with the library beyond the graph/extractor accessors.

#include "shortlist/bigraph.hpp"
#include "shortlist/extractor.hpp"
#include "shortlist/random.hpp"

#include <map>
#include <set>
#include <vector>

namespace oracle {

using namespace shortlist;

inline LeftRegularGraph random_graph(int n, int d, RightId m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<RightId> table(std::size_t{1} << (n + d));
  for (auto& z : table) z = rng.below(m);
  return LeftRegularGraph::from_table(n, d, m, std::move(table), "random");
}

inline LeftSubset random_subset(int n, std::size_t size, std::uint64_t seed) {
  Rng rng(seed);
  std::set<LeftNode> picked;
  const std::uint64_t universe = std::uint64_t{1} << n;
  size = std::min<std::size_t>(size, universe);
  while (picked.size() < size) picked.insert(rng.below(universe));
  return LeftSubset(n, std::vector<LeftNode>(picked.begin(), picked.end()));
}

// Right node -> distinct left neighbors in B, by a double loop.
inline std::map<RightId, std::set<LeftNode>> owners(const LeftRegularGraph& g,
                                                    const std::vector<LeftNode>& b) {
  std::map<RightId, std::set<LeftNode>> out;
  for (LeftNode x : b)
    for (std::uint64_t j = 0; j < g.degree(); ++j) out[g.neighbor(x, j)].insert(x);
  return out;
}

inline std::set<RightId> shared(const LeftRegularGraph& g, const std::vector<LeftNode>& b,
                                std::uint64_t s) {
  std::set<RightId> out;
  for (const auto& [z, xs] : owners(g, b))
    if (xs.size() >= s) out.insert(z);
  return out;
}

// Slots of x landing on s-shared nodes.
inline std::uint64_t shared_slots(const LeftRegularGraph& g, const std::vector<LeftNode>& b,
                                  LeftNode x, std::uint64_t s) {
  const auto sh = shared(g, b, s);
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < g.degree(); ++j) count += sh.count(g.neighbor(x, j));
  return count;
}

inline bool rich(const LeftRegularGraph& g, const std::vector<LeftNode>& b, LeftNode x,
                 std::uint64_t s, const Rational& delta) {
  return Rational(static_cast<std::int64_t>(shared_slots(g, b, x, s)),
                  static_cast<std::int64_t>(g.degree())) <= delta;
}

// (1/2) sum_y |p_y - 1/M| from a plain histogram.
inline Rational deviation(const ExtractorInstance& e, const std::vector<LeftNode>& support) {
  const std::int64_t m = std::int64_t{1} << e.m();
  std::vector<std::int64_t> h(static_cast<std::size_t>(m), 0);
  for (LeftNode x : support)
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << e.d()); ++y) ++h[e(x, y)];
  const std::int64_t total = static_cast<std::int64_t>(support.size()) << e.d();
  Rational sum(0);
  for (std::int64_t c : h) sum += abs(Rational(c, total) - Rational(1, m));
  return sum / 2;
}

// Worst deviation over every subset of size 2^k, by recursion.
inline Rational worst_deviation(const ExtractorInstance& e) {
  const std::size_t size = std::size_t{1} << e.k();
  const LeftNode universe = LeftNode{1} << e.n();
  std::vector<LeftNode> cur;
  Rational worst(0);
  auto rec = [&](auto&& self, LeftNode next) -> void {
    if (cur.size() == size) {
      worst = std::max(worst, deviation(e, cur));
      return;
    }
    for (LeftNode x = next; x + (size - cur.size()) <= universe; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return worst;
}

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

}  // namespace oracle
