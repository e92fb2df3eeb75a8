#pragma once

#include "shortlist/bigraph.hpp"
#include "shortlist/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shortlist {

enum class Verification { unverified, exact_verified, sampled_audited };

struct VerificationStatus {
  Verification kind = Verification::unverified;
  std::uint64_t trials = 0;  // sampled audits only
  Rational worst{0};         // worst deviation seen by the verifying run
};

std::string to_string(const VerificationStatus& s);
VerificationStatus parse_status(const std::string& text);

// E : {0,1}^n x {0,1}^d -> {0,1}^m as a dense table, with its claimed (k, eps)
// certificate. The table is immutable and shared between copies.
class ExtractorInstance {
 public:
  ExtractorInstance(int n, int k, int d, int m, Rational eps,
                    std::vector<std::uint32_t> table, std::uint64_t seed);

  int n() const { return n_; }
  int k() const { return k_; }
  int d() const { return d_; }
  int m() const { return m_; }
  const Rational& eps() const { return eps_; }
  std::uint64_t seed() const { return seed_; }
  int entropy_loss() const { return k_ + d_ - m_; }
  const VerificationStatus& status() const { return status_; }
  void set_status(VerificationStatus s) { status_ = s; }
  // exact-verified, or sampled-audited with every observed deviation < eps.
  bool certified() const;

  std::uint32_t operator()(std::uint64_t x, std::uint64_t y) const {
    return (*table_)[(x << d_) | y];
  }
  const std::vector<std::uint32_t>& table() const { return *table_; }

  // The associated bipartite graph G_E: neighbors of x are E(x, y), y < 2^d.
  LeftRegularGraph graph() const;

 private:
  int n_, k_, d_, m_;
  Rational eps_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
  std::uint64_t seed_;
  VerificationStatus status_;
};

// Uniform distribution on a support of exactly 2^k left nodes.
class FlatSource {
 public:
  explicit FlatSource(LeftSubset support);
  const LeftSubset& support() const { return support_; }
  int k() const { return k_; }

 private:
  LeftSubset support_;
  int k_;
};

// Statistical distance between E(X, U_d) and U_m, i.e.
//   max_A |P(A) - |A|/M| = (1/2) sum_y |p_y - 1/M|, exactly.
Rational tv_deviation(const ExtractorInstance& e, const FlatSource& x);

struct ExactVerdict {
  bool verified = false;
  Rational worst{0};
  std::optional<FlatSource> witness;  // first source attaining `worst`
  std::uint64_t sources_checked = 0;
};

inline constexpr std::uint64_t kDefaultExactBudget = 10'000'000;

// Number of flat sources binomial(2^n, 2^k), saturating at UINT64_MAX.
std::uint64_t flat_source_count(int n, int k);

// Enumerates every flat source of size 2^k in lexicographic combination
// order. Sets status to exact-verified iff every deviation is < eps.
// Throws BudgetExceeded (meaning: use a sampled audit) above the budget.
ExactVerdict verify_exact(ExtractorInstance& e,
                          std::uint64_t budget = kDefaultExactBudget,
                          unsigned workers = 1);

// Worst deviation over `trials` random flat sources. Records a
// sampled-audited status unless the instance is already exact-verified.
Rational audit_sampled(ExtractorInstance& e, std::uint64_t trials,
                       std::uint64_t seed);

struct ExtractorConstants {
  int a_d = 2;
  int a_m = 2;
};

struct ExtractorShape {
  int d = 0;
  int m = 0;
};

// d = ceil(log2(max(n-k,1))) + 2 ceil(log2(1/eps)) + A_d,
// m = k + d - 2 ceil(log2(1/eps)) - A_m.
ExtractorShape extractor_shape(int n, int k, const Rational& eps,
                               const ExtractorConstants& constants = {});

// Fills a table from the seed (one engine word per entry, top m bits).
ExtractorInstance random_extractor(int n, int k, int d, int m,
                                   const Rational& eps, std::uint64_t seed);

struct SearchOptions {
  ExtractorConstants constants;
  std::uint64_t exact_budget = kDefaultExactBudget;
  // 0: exact verification is mandatory. Otherwise, when exact enumeration is
  // over budget, accept a sampled audit with this many trials.
  std::uint64_t sampled_trials = 0;
  int max_attempts = 32;
  unsigned workers = 1;
};

class SearchFailed : public std::runtime_error {
 public:
  SearchFailed(ExtractorInstance best, Rational worst);
  const ExtractorInstance& best() const { return best_; }
  const Rational& worst() const { return worst_; }

 private:
  ExtractorInstance best_;
  Rational worst_;
};

// Draws tables from seeds derived from `seed` (attempt i uses
// derive_seed(seed, {i})) until one verifies.
ExtractorInstance search_extractor(int n, int k, const Rational& eps,
                                   std::uint64_t seed,
                                   const SearchOptions& options = {});

Rational avg_right_degree(const LeftRegularGraph& g, const LeftSubset& b);

struct RichLemmaAudit {
  std::uint64_t s = 0;
  Rational delta{0};
  std::vector<LeftNode> offending;  // members of B not (s, delta)-rich
  std::uint64_t allowed = 0;        // 2^k

  std::uint64_t count() const { return offending.size(); }
  bool holds() const { return count() <= allowed; }
};

// All but 2^k members of B should be (a/eps, 2 eps)-rich in B when the
// restricted extractor graph has average right degree <= a.
RichLemmaAudit audit_rich_lemma(const ExtractorInstance& e, const Rational& a,
                                const LeftSubset& b);

// EXTRACTOR n=<n> k=<k> d=<d> m=<m> eps=<p>/<q> status=<...> seed=<u64>
// followed by a dense hex block: one line per x holding 2^d fixed-width
// outputs. The reader also accepts "<x hex> <y hex> -> <z hex>" lines.
void write_extractor(std::ostream& out, const ExtractorInstance& e);
ExtractorInstance read_extractor(std::istream& in);

}  // namespace shortlist
