#pragma once

#include "shortlist/bits.hpp"
#include "shortlist/lab.hpp"

#include <span>
#include <vector>

namespace shortlist {

// A mode-10 program for right node z of a built graph.
struct AssociatedProgram {
  BitString bits;
  GraphFields fields;
  RightId z = 0;
  std::uint64_t edge = 0;  // edge index of x that selected z
  int seed_bits = 0;       // seed prefix length consumed

  std::size_t length() const { return bits.size(); }
};

// delta of the graph must be 1/inv_delta.
AssociatedProgram associated_program(const RichOwnerGraph& g, RightId z, bool augmented);

// The first `bits` bits of the seed read as an integer, MSB first.
std::uint64_t seed_prefix(const BitString& seed, int bits);

// Picks edge j = seed_prefix(seed, d_out) of x in G_{n,ell} and returns the
// program associated to its right node. Augmented programs use the chain of
// (n, 1/inv_delta) and need c = 2.
AssociatedProgram fixed_length_generate(Lab& lab, LeftNode x, int n, int ell, int c,
                                        std::uint64_t inv_delta, const BitString& seed,
                                        bool augmented = false);

struct CandidateProgramList {
  LeftNode x = 0;
  int n = 0;
  std::uint64_t inv_delta = 1;
  BitString seed;
  std::vector<AssociatedProgram> entries;  // entry i is level bottom + i
};

// One entry per level of the augmented chain, all levels reading prefixes of
// the same seed. The seed needs at least chain.seed_bits() bits.
CandidateProgramList generate_list(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                   const BitString& seed);

// c = ceil(3 log2 n), the smallest c with 2^c >= n^3.
int promise_c(int n);

struct PromiseResult {
  AssociatedProgram program;
  int ell = 0;
  int c = 0;
  // ell <= c: no graph exists for these fields; the empty program is
  // returned (it runs to bottom). Only possible when the promise is false.
  bool degenerate = false;
};

PromiseResult short_program_given_C(Lab& lab, LeftNode x, int n, int C_of_x,
                                    std::uint64_t inv_delta, const BitString& seed);

// Seed prefixes (of a fixed width) on which one level does not produce a
// qualifying program. `all` means every prefix fails.
struct LevelFailure {
  int width = 0;
  bool all = true;
  std::vector<std::uint64_t> failing;  // ascending, each < 2^width
};

// Number of r-bit master seeds whose every level prefix fails, by
// intersecting cylinder sets level by level (widths <= r <= 62).
std::uint64_t count_failing(std::span<const LevelFailure> levels, int r);
// Same count by visiting every seed (r <= 24).
std::uint64_t count_failing_brute(std::span<const LevelFailure> levels, int r);
bool seed_fails(std::span<const LevelFailure> levels, const BitString& seed);

// Per-level facts about x in a chain, independent of c*.
struct LevelView {
  int ell = 0;
  int width = 0;            // d_out
  bool member = false;      // x in B_{n,ell}
  bool within_budget = false;
  std::size_t program_length = 0;
  std::vector<std::uint64_t> blocked;  // edges whose right node has an earlier owner
};

std::vector<LevelView> chain_view(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta);

struct SuccessProfile {
  LeftNode x = 0;
  int n = 0;
  std::uint64_t inv_delta = 1;
  int c_star = 0;
  int r = 0;
  std::uint64_t hits = 0;
  int best_overhead = -1;  // least |p| - C(x) over levels that can produce x; -1 if none

  Rational probability() const;
  // hits / 2^r >= target, exactly.
  bool at_least(const Rational& target) const;
};

// Hit: some entry outputs x and has length <= C(x) + c_star.
SuccessProfile exact_success_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                     int c_star);
SuccessProfile profile_from_view(std::span<const LevelView> view, LeftNode x, int n,
                                 std::uint64_t inv_delta, int c_x, int c_star);

// Runs generate_list and the machine on every seed; r <= 24 only.
SuccessProfile brute_success_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                     int c_star);

struct Calibration {
  int c_star = 0;                  // max over x of the least sufficient c*
  std::vector<int> per_x;          // least sufficient c* per x, -1 if none works
  double k_len = 0;                // max (|entry| - ell) / (c + log2(n/delta))
};

// Smallest c* giving every n-bit x hit probability >= 1 - delta.
Calibration calibrate(Lab& lab, int n, std::uint64_t inv_delta);

struct PromiseProfile {
  LeftNode x = 0;
  int ell = 0;
  int c = 0;
  int r = 0;
  std::uint64_t successes = 0;  // seeds whose program outputs x
  bool in_bad_set = false;      // x not delta-rich in B_{n,ell}
  std::size_t program_length = 0;

  bool at_least(const Rational& target) const;
};

// Exact over all 2^d_out seeds, given the true C(x).
PromiseProfile promise_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta);

}  // namespace shortlist
