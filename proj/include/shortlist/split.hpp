#pragma once

#include "shortlist/bigraph.hpp"
#include "shortlist/rational.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace shortlist {

// Strings of length n are read as the integers 2^n + value, so distinct
// strings give distinct integers below 2^(n+1).
inline std::uint64_t canonical_value(LeftNode x, int n) {
  return (std::uint64_t{1} << n) + x;
}

struct SplitParams {
  std::uint64_t s = 1;  // share threshold
  Rational delta{1};
  int n = 0;            // left bit-length
  std::uint64_t t = 1;  // number of primes

  // t = ceil(s * n / delta) (at least 1).
  static SplitParams make(std::uint64_t s, int n, const Rational& delta);

  // Same parameters with t rounded up to a power of two, so the split graph
  // keeps a power-of-two left degree.
  SplitParams padded() const;
};

// Fraction of the first t primes p for which x_i mod p also occurs as
// x_j mod p for some j != i. `values` are the canonical integers of distinct
// strings; |values| <= params.s.
Rational collision_fraction(std::span<const std::uint64_t> values, std::size_t i,
                            const SplitParams& params);

struct SplitRightId {
  RightId z = 0;                 // right node of the base graph
  std::uint64_t prime_index = 0; // p = p_(prime_index + 1)
  std::uint64_t residue = 0;     // < p

  friend bool operator==(const SplitRightId&, const SplitRightId&) = default;
};

// The prime-splitting transform: every base edge (x, z) becomes the t edges
// (x, (z, p_i, x mod p_i)). Edge j of x maps to base edge j / t and prime
// index j % t. Right ids are dense: z * (t * P) + index * P + residue, with
// P = prime_upper_bound(t).
class SplitGraph {
 public:
  SplitGraph(LeftRegularGraph base, SplitParams params);

  const LeftRegularGraph& base() const { return base_; }
  const SplitParams& params() const { return params_; }
  int n() const { return base_.n(); }
  std::uint64_t t() const { return params_.t; }
  int d() const { return d_; }
  std::uint64_t degree() const { return std::uint64_t{1} << d_; }
  std::uint64_t block() const { return block_; }
  RightId right_size() const { return right_size_; }

  // Primes below 2^(n+1) among the first t; every later prime exceeds all
  // canonical values, so it never separates two left nodes.
  std::span<const std::uint64_t> small_primes() const { return *small_primes_; }

  // The actual prime p_(index+1); materializes a prime table (capped).
  std::uint64_t prime(std::uint64_t index) const;

  RightId neighbor(LeftNode x, std::uint64_t j) const;
  SplitRightId neighbor_split(LeftNode x, std::uint64_t j) const;

  RightId encode(const SplitRightId& id) const;
  SplitRightId decode(RightId id) const;

  // Does left node x own an edge to split node `id` (some base edge to
  // id.z and canonical(x) = residue mod p)?
  bool adjacent(LeftNode x, const SplitRightId& id) const;

  // Oracle view for the generic bigraph operations.
  LeftRegularGraph graph() const;

 private:
  std::uint64_t residue(LeftNode x, std::uint64_t prime_index) const;

  LeftRegularGraph base_;
  SplitParams params_;
  int d_;
  std::uint64_t block_;
  RightId right_size_;
  std::shared_ptr<const std::vector<std::uint64_t>> small_primes_;
};

// Builds H = split(G) with t padded to a power of two.
SplitGraph split_graph(const LeftRegularGraph& g, std::uint64_t s,
                       const Rational& delta);

// Exact sharing statistics of a split graph restricted to a left set B,
// computed arithmetically: two members x, x' of B meet on a split node
// (z, p, r) iff both reach z in the base graph and p divides x - x'. This
// avoids touching the t-fold edge set.
class SplitAudit {
 public:
  // `order` lists the distinct members of B in enumeration order.
  SplitAudit(const SplitGraph& h, std::span<const LeftNode> order);

  const SplitGraph& graph() const { return *h_; }
  std::size_t size() const { return order_.size(); }
  bool contains(LeftNode x) const;
  // Position of x in the enumeration order; x must be a member.
  std::size_t position(LeftNode x) const;

  // Edge slots of x landing on split nodes with another neighbor in B.
  std::uint64_t shared_slots(LeftNode x) const;
  // (2, delta)-rich: shared_slots <= delta * degree.
  bool is_rich(LeftNode x, const Rational& delta) const;
  // Members of B that are not (2, delta)-rich, ascending.
  std::vector<LeftNode> non_rich(const Rational& delta) const;

  // Prime indices i < t such that some member of B enumerated before x also
  // lies on split node (z, p_i, x mod p_i), z the base neighbor `base_edge`
  // of x. These are exactly the slots where "first member of B adjacent to
  // the split node" is not x.
  std::vector<std::uint64_t> blocked_prime_indices(LeftNode x,
                                                   std::uint64_t base_edge) const;
  // Total blocked slots of x over all base edges.
  std::uint64_t blocked_slots(LeftNode x) const;

 private:
  // Prime indices (< t) dividing |x - other| for any listed other member.
  void collect(LeftNode x, std::span<const std::uint32_t> others, bool earlier_only,
               std::size_t pos, std::vector<std::uint64_t>& out) const;
  std::span<const std::uint32_t> members_at(RightId z) const;
  const std::vector<std::uint64_t>& divisor_indices(std::uint64_t diff) const;

  const SplitGraph* h_;
  std::vector<LeftNode> order_;
  std::vector<std::pair<LeftNode, std::uint32_t>> pos_;  // sorted by node
  std::vector<RightId> right_keys_;                      // sorted distinct z
  std::vector<std::size_t> right_offsets_;
  std::vector<std::uint32_t> right_members_;             // positions, ascending
  mutable std::vector<std::vector<std::uint64_t>> divisor_memo_;
  mutable std::vector<bool> divisor_ready_;
};

}  // namespace shortlist
