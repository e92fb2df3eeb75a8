#pragma once

#include "shortlist/bset.hpp"
#include "shortlist/complexity.hpp"
#include "shortlist/machine.hpp"
#include "shortlist/rich_owner.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace shortlist {

struct LabConfig {
  int table_n_max = 12;
  std::uint64_t master_seed = 0x5eed0001;
  SearchOptions search{.constants = {},
                       .exact_budget = kDefaultExactBudget,
                       .sampled_trials = 2000,
                       .max_attempts = 32,
                       .workers = 1};
};

struct ChainLevel {
  int ell = 0;
  const RichOwnerGraph* graph = nullptr;
  BSet b;
  std::unique_ptr<SplitAudit> audit;  // B under this level's graph
  std::vector<LeftNode> non_rich;     // members of B not delta-rich, ascending
};

// The augmented chain: levels e+2 .. n+e+1, c = 2,
// built top-down.
class Chain {
 public:
  int n = 0;
  Rational delta{1};
  int e = 0;
  std::vector<std::unique_ptr<ChainLevel>> levels;  // ascending ell

  int bottom() const { return e + 2; }
  int top() const { return n + e + 1; }
  const ChainLevel& level(int ell) const;
  // Master seed length: the largest d_out over the levels.
  int seed_bits() const;
};

// Owns the complexity table, every built graph, B-set, and chain, and gives
// mode-10 programs their meaning. Not thread-safe: one lab per thread.
class Lab : public GraphResolver {
 public:
  explicit Lab(LabConfig config = {});

  const LabConfig& config() const { return config_; }
  const ComplexityTable& table() const { return table_; }
  ToyMachine machine() { return ToyMachine(this); }

  const RichOwnerGraph& graph(const RichOwnerParams& p);
  const Chain& chain(int n, const Rational& delta);
  const BSet& plain(int n, int ell);
  // B_{n,ell} (plain) under G_{n,ell} with the given c and delta.
  const SplitAudit& plain_audit(const RichOwnerParams& p);

  std::optional<int> z_width(const GraphFields& f) override;
  GraphOutcome first_owner(const GraphFields& f, RightId z, std::uint64_t budget) override;

  // Direct (non-machine) computation of the same first owner, no budget.
  std::optional<LeftNode> first_owner_direct(const GraphFields& f, RightId z);

 private:
  using Key = std::tuple<int, int, int, std::int64_t, std::int64_t>;
  static Key key(const RichOwnerParams& p) {
    return {p.n, p.ell, p.c, p.delta.numerator(), p.delta.denominator()};
  }
  // The B-set and graph a mode-10 program refers to, or nullopt.
  std::optional<std::pair<const BSet*, const RichOwnerGraph*>> target(const GraphFields& f);

  LabConfig config_;
  ComplexityTable table_;
  ExtractorSource source_;
  std::map<Key, std::unique_ptr<RichOwnerGraph>> graphs_;
  std::map<std::tuple<int, std::int64_t, std::int64_t>, std::unique_ptr<Chain>> chains_;
  std::map<std::pair<int, int>, std::unique_ptr<BSet>> plain_;
  std::map<Key, std::unique_ptr<SplitAudit>> plain_audits_;
};

}  // namespace shortlist
