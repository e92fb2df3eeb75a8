#include "shortlist/bset.hpp"

#include "shortlist/errors.hpp"

#include <algorithm>

namespace shortlist {

bool BSet::contains(LeftNode x) const {
  return std::binary_search(first_type.begin(), first_type.end(), x) ||
         std::binary_search(second_type.begin(), second_type.end(), x);
}

LeftSubset BSet::members() const { return LeftSubset(n, order); }

namespace {

void check_n(const ComplexityTable& t, int n) {
  if (n < 1 || n > t.n_max()) throw InputError("B-set length outside the complexity table");
}

void order_members(const ComplexityTable& t, BSet& b) {
  b.order = b.first_type;
  b.order.insert(b.order.end(), b.second_type.begin(), b.second_type.end());
  std::sort(b.order.begin(), b.order.end(), [&](LeftNode x, LeftNode y) {
    const int cx = t.C(x, b.n), cy = t.C(y, b.n);
    return cx != cy ? cx < cy : x < y;
  });
}

std::vector<LeftNode> below(const ComplexityTable& t, int n, int bound) {
  std::vector<LeftNode> out;
  for (LeftNode x = 0; x < (LeftNode{1} << n); ++x)
    if (t.C(x, n) < bound) out.push_back(x);
  return out;
}

}  // namespace

BSet plain_B(const ComplexityTable& t, int n, int ell) {
  check_n(t, n);
  BSet b;
  b.n = n;
  b.ell = ell;
  b.first_type = below(t, n, ell);
  order_members(t, b);
  return b;
}

BSet augmented_B(const ComplexityTable& t, int n, int ell, const BSet* above,
                 std::span<const LeftNode> above_non_rich) {
  check_n(t, n);
  BSet b;
  b.n = n;
  b.ell = ell;
  b.augmented = true;
  b.first_type = below(t, n, ell - 1);
  if (above == nullptr) {
    if (ell != n + t.e_const() + 1)
      throw InputError("augmented B at level " + std::to_string(ell) +
                       " needs the level-" + std::to_string(ell + 1) + " set and graph");
  } else {
    if (above->n != n || above->ell != ell + 1)
      throw InputError("level-above B-set does not match");
    for (LeftNode x : above_non_rich) {
      if (!above->contains(x)) throw InputError("non-rich node outside the level-above set");
      if (!std::binary_search(b.first_type.begin(), b.first_type.end(), x))
        b.second_type.push_back(x);
    }
    std::sort(b.second_type.begin(), b.second_type.end());
    b.second_type.erase(std::unique(b.second_type.begin(), b.second_type.end()),
                        b.second_type.end());
  }
  order_members(t, b);
  return b;
}

BSet augmented_B(const ComplexityTable& t, int n, int ell, const BSet& above,
                 const RichOwnerGraph& above_graph) {
  const auto& p = above_graph.params();
  if (p.n != n || p.ell != ell + 1) throw InputError("level-above graph does not match");
  if (p.c != 2) throw InputError("augmented chains use c = 2");
  const SplitAudit audit(above_graph.split(), above.order);
  const auto non_rich = audit.non_rich(p.delta);
  return augmented_B(t, n, ell, &above, non_rich);
}

}  // namespace shortlist
