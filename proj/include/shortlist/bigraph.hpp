#pragma once

#include "shortlist/rational.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace shortlist {

using LeftNode = std::uint64_t;
using RightId = std::uint64_t;

// A finite set of n-bit left nodes, stored sorted (lexicographic order on
// n-bit strings is numeric order).
class LeftSubset {
 public:
  LeftSubset() = default;
  explicit LeftSubset(int n) : n_(n) {}
  LeftSubset(int n, std::vector<LeftNode> members);

  static LeftSubset full(int n);

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(LeftNode x) const;
  std::span<const LeftNode> members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  LeftSubset intersect(const LeftSubset& other) const;
  bool is_subset_of(const LeftSubset& other) const;

  friend bool operator==(const LeftSubset&, const LeftSubset&) = default;

 private:
  int n_ = 0;
  std::vector<LeftNode> members_;
};

// Bipartite graph with left set {0,1}^n (or a subset of it after restrict),
// uniform left degree 2^d and dense right ids [0, right_size). Edges are
// served by an immutable neighbor oracle; copies share it.
class LeftRegularGraph {
 public:
  using Oracle = std::function<RightId(LeftNode, std::uint64_t)>;

  LeftRegularGraph(int n, int d, RightId right_size, Oracle oracle,
                   std::string label);

  // Backed by a dense table indexed x * 2^d + j.
  static LeftRegularGraph from_table(int n, int d, RightId right_size,
                                     std::vector<RightId> table,
                                     std::string label);

  int n() const { return n_; }
  int d() const { return d_; }
  std::uint64_t degree() const { return std::uint64_t{1} << d_; }
  RightId right_size() const { return right_size_; }
  const std::string& label() const { return label_; }

  // Left domain: all of {0,1}^n unless restricted.
  bool is_restricted() const { return domain_ != nullptr; }
  const LeftSubset& domain() const;
  std::uint64_t left_size() const;
  bool has_left(LeftNode x) const;

  RightId neighbor(LeftNode x, std::uint64_t j) const;
  std::vector<RightId> neighbors(LeftNode x) const;

  // Materializes the whole edge table; refuses above 2^24 edges.
  std::vector<RightId> materialize() const;

  friend LeftRegularGraph restrict(const LeftRegularGraph& g,
                                   const LeftSubset& kept);

 private:
  int n_;
  int d_;
  RightId right_size_;
  std::shared_ptr<const Oracle> oracle_;
  std::shared_ptr<const LeftSubset> domain_;
  std::string label_;
};

struct RichnessReport {
  std::uint64_t s = 2;
  Rational delta{1};
  LeftSubset rich;
  LeftSubset non_rich;
  std::vector<RightId> s_shared_right;  // sorted
};

// Right ids with at least s distinct left neighbors in B.
std::vector<RightId> s_shared_right(const LeftRegularGraph& g,
                                    const LeftSubset& b, std::uint64_t s);

// A member of B is (s, delta)-rich iff at most delta * 2^d of its edge slots
// (multiplicity counted) land on s-shared right nodes.
RichnessReport rich_nodes(const LeftRegularGraph& g, const LeftSubset& b,
                          std::uint64_t s, const Rational& delta);

struct RichOwnerAudit {
  std::size_t set_size = 0;
  std::uint64_t non_rich = 0;
  std::uint64_t allowed = 0;  // 2^(ell - c)
  bool pass = false;
};

// Audits the rich owner property (ell, c, delta) on a supplied family of
// left subsets. delta-rich means (2, delta)-rich.
std::vector<RichOwnerAudit> check_rich_owner(const LeftRegularGraph& g, int ell,
                                             int c, const Rational& delta,
                                             std::span<const LeftSubset> family);

LeftRegularGraph restrict(const LeftRegularGraph& g, const LeftSubset& kept);

// (|B| * 2^d) / right_size: average right degree of the edges leaving B.
Rational average_right_degree(const LeftRegularGraph& g, const LeftSubset& b);

// Adjacency text format:
//   BIGRAPH n=<n> d=<d> M=<right_size> label=<label>
//   <left hex>: <right>,<right>,...        (2^d entries per line)
void write_adjacency(std::ostream& out, const LeftRegularGraph& g);
LeftRegularGraph read_adjacency(std::istream& in);

}  // namespace shortlist
