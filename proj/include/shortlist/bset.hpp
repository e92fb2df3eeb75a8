#pragma once

#include "shortlist/bigraph.hpp"
#include "shortlist/complexity.hpp"
#include "shortlist/rich_owner.hpp"

#include <span>
#include <vector>

namespace shortlist {

// B_{n,ell}: first type {x : |x| = n, C(x) < ell - 1} (plain sets use
// C(x) < ell instead), plus for augmented sets the members of the level
// above that are not delta-rich there. Enumerated by ascending C, then
// lexicographically.
struct BSet {
  int n = 0;
  int ell = 0;
  bool augmented = false;
  std::vector<LeftNode> first_type;   // ascending
  std::vector<LeftNode> second_type;  // ascending, disjoint from first_type
  std::vector<LeftNode> order;        // enumeration order

  std::size_t size() const { return order.size(); }
  bool contains(LeftNode x) const;
  LeftSubset members() const;
};

BSet plain_B(const ComplexityTable& t, int n, int ell);

// `above` is B_{n,ell+1}; `above_non_rich` its members that are not
// delta-rich under G_{n,ell+1}. At the top level of a chain there is no
// level above and both are omitted.
BSet augmented_B(const ComplexityTable& t, int n, int ell, const BSet* above,
                 std::span<const LeftNode> above_non_rich);

// Same, computing the non-rich members from the level-above graph (c = 2).
BSet augmented_B(const ComplexityTable& t, int n, int ell, const BSet& above,
                 const RichOwnerGraph& above_graph);

}  // namespace shortlist
