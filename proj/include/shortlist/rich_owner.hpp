#pragma once

#include "shortlist/extractor.hpp"
#include "shortlist/split.hpp"

#include <functional>
#include <iosfwd>
#include <string>

namespace shortlist {

// Supplies a certified (k, eps) extractor on n-bit inputs.
using ExtractorSource =
    std::function<ExtractorInstance(int n, int k, const Rational& eps)>;

// search_extractor with a seed derived from (master, n, k, eps).
ExtractorSource searching_source(std::uint64_t master, SearchOptions options);

struct BuilderConstants {
  int k_d = 8;
  int k_m = 10;
};

struct RichOwnerParams {
  int n = 0;
  int ell = 0;
  int c = 0;
  Rational delta{1};

  friend bool operator==(const RichOwnerParams&, const RichOwnerParams&) = default;
};

// The graph G_{n,ell} of the rich owner construction: a verified extractor
// with k = ell - c and eps = delta/4, split with s = a/eps and delta_split = eps.
class RichOwnerGraph {
 public:
  RichOwnerGraph(RichOwnerParams params, ExtractorInstance extractor, std::uint64_t a,
                 SplitGraph split);

  const RichOwnerParams& params() const { return params_; }
  const ExtractorInstance& extractor() const { return extractor_; }
  const SplitGraph& split() const { return split_; }
  LeftRegularGraph graph() const { return split_.graph(); }

  Rational eps() const { return extractor_.eps(); }
  int k() const { return extractor_.k(); }
  std::uint64_t a() const { return a_; }           // average right degree bound
  std::uint64_t s() const { return split_.params().s; }
  std::uint64_t t() const { return split_.t(); }
  int d_out() const { return split_.d(); }
  int m_out() const { return ceil_log2(split_.right_size()); }
  RightId right_size() const { return split_.right_size(); }

  // d_out / (c + log2(n/delta)) and (m_out - ell) / (c + log2(n/delta)),
  // for reporting only.
  double d_ratio() const;
  double m_ratio() const;
  // Exact integer checks of d_out <= K_d (c + log2(n/delta)) and
  // m_out <= ell + K_m (c + log2(n/delta)).
  bool within_bounds(const BuilderConstants& k) const;

 private:
  RichOwnerParams params_;
  ExtractorInstance extractor_;
  std::uint64_t a_;
  SplitGraph split_;
};

// Refuses extractors that are not certified; ell - c <= 0 is a parameter
// error. k is clamped to n (the property is vacuous beyond it).
RichOwnerGraph build_rich_owner(int n, int ell, int c, const Rational& delta,
                                const ExtractorSource& source);

RightId neighbor_at(const RichOwnerGraph& g, LeftNode x, std::uint64_t j);

// RICHOWNER n= ell= c= delta= eps= k= s= t= d_out= m_out= extractor_seed=
// followed by the key=value fields needed to rebuild the extractor.
struct RichOwnerManifest {
  RichOwnerParams params;
  Rational eps{0};
  int k = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  int d_out = 0;
  int m_out = 0;
  std::uint64_t extractor_seed = 0;
  int ext_d = 0;
  int ext_m = 0;
  std::string status;

  friend bool operator==(const RichOwnerManifest&, const RichOwnerManifest&) = default;
};

RichOwnerManifest manifest_of(const RichOwnerGraph& g);
std::string format_manifest(const RichOwnerManifest& m);
RichOwnerManifest parse_manifest(const std::string& line);
// Regenerates the extractor from its seed and re-splits; the result must
// reproduce the manifest exactly.
RichOwnerGraph rebuild(const RichOwnerManifest& m);

}  // namespace shortlist
