#pragma once

#include "shortlist/bits.hpp"
#include "shortlist/machine.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace shortlist {

inline constexpr int kTableCap = 14;

// Exact base-mode complexity C(x) for every string of length <= n_max.
class ComplexityTable {
 public:
  ComplexityTable(int n_max, std::vector<std::uint8_t> values);

  int n_max() const { return n_max_; }
  // Least e with C(x) < |x| + e for every tabulated x.
  int e_const() const { return e_const_; }

  int C(const BitString& x) const;
  int C(LeftNode x, int n) const;
  // Number of n-bit strings with C(x) < ell.
  std::uint64_t count_below(int n, int ell) const;

  friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;

 private:
  static std::size_t slot(LeftNode x, int n) { return ((std::size_t{1} << n) - 1) + x; }

  int n_max_;
  std::vector<std::uint8_t> values_;  // indexed 2^len - 1 + value
  int e_const_;
};

// Runs every program of length <= n_max + 2 (literal programs bound C by
// |x| + 2) on the base machine. n_max above kTableCap is refused.
ComplexityTable complexity_table(int n_max);

// CTABLE version=<tag> n_max=<n>, then "<len>:<hex> <C>" per string.
void write_table(std::ostream& out, const ComplexityTable& t);
ComplexityTable read_table(std::istream& in);

// Every program p with output x on `m` and |p| <= C(x) + c, by exhaustive
// run over all programs of that length range. Sorted by (length, bits).
std::vector<BitString> c_short_oracle(const ToyMachine& m, const ComplexityTable& t,
                                      const BitString& x, int c);

// The same sets for many strings at once: runs every program up to a
// length bound once on the base machine and indexes outputs of length
// <= max_output.
class ShortProgramIndex {
 public:
  ShortProgramIndex(const ComplexityTable& t, int max_output, int max_program);

  int max_program() const { return max_program_; }
  // |c_short_oracle(x, c)|; needs C(x) + c <= max_program.
  std::uint64_t count(const BitString& x, int c) const;

 private:
  const ComplexityTable* table_;
  int max_output_;
  int max_program_;
  std::vector<std::vector<std::uint32_t>> per_length_;  // [slot][program length]
};

}  // namespace shortlist
