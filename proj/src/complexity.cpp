#include "shortlist/complexity.hpp"

#include "shortlist/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace shortlist {

namespace {

// Calls fn(program) for every program of length `len`.
template <class Fn>
void for_each_program(int len, Fn&& fn) {
  const std::uint64_t count = std::uint64_t{1} << len;
  for (std::uint64_t v = 0; v < count; ++v) fn(BitString::from_value(v, len));
}

}  // namespace

ComplexityTable::ComplexityTable(int n_max, std::vector<std::uint8_t> values)
    : n_max_(n_max), values_(std::move(values)) {
  if (n_max < 0 || n_max > kTableCap) throw ParameterError("table n_max out of range");
  if (values_.size() != (std::size_t{2} << n_max) - 1)
    throw InputError("complexity table has wrong size");
  int worst = 0;
  for (int n = 0; n <= n_max; ++n)
    for (LeftNode x = 0; x < (LeftNode{1} << n); ++x)
      worst = std::max(worst, static_cast<int>(values_[slot(x, n)]) - n);
  e_const_ = worst + 1;
}

int ComplexityTable::C(const BitString& x) const {
  if (x.size() > static_cast<std::size_t>(n_max_)) throw InputError("string longer than table");
  return C(x.empty() ? 0 : x.value(), static_cast<int>(x.size()));
}

int ComplexityTable::C(LeftNode x, int n) const {
  if (n < 0 || n > n_max_ || (x >> n) != 0) throw InputError("string outside table");
  return values_[slot(x, n)];
}

std::uint64_t ComplexityTable::count_below(int n, int ell) const {
  std::uint64_t count = 0;
  for (LeftNode x = 0; x < (LeftNode{1} << n); ++x)
    if (C(x, n) < ell) ++count;
  return count;
}

ComplexityTable complexity_table(int n_max) {
  if (n_max < 0 || n_max > kTableCap)
    throw BudgetExceeded("complexity table n_max must lie in [0," + std::to_string(kTableCap) +
                         "]");
  std::vector<std::uint8_t> values((std::size_t{2} << n_max) - 1, 0xff);
  const ToyMachine base;
  for (int len = 0; len <= n_max + kHeaderBits; ++len) {
    for_each_program(len, [&](const BitString& p) {
      const RunResult r = run_program(base, p);
      if (!r.output || r.output->size() > static_cast<std::size_t>(n_max)) return;
      const int n = static_cast<int>(r.output->size());
      auto& v = values[((std::size_t{1} << n) - 1) + (n == 0 ? 0 : r.output->value())];
      v = std::min<std::uint8_t>(v, static_cast<std::uint8_t>(len));
    });
  }
  return ComplexityTable(n_max, std::move(values));
}

void write_table(std::ostream& out, const ComplexityTable& t) {
  out << "CTABLE version=" << kMachineVersion << " n_max=" << t.n_max() << '\n';
  for (int n = 0; n <= t.n_max(); ++n)
    for (LeftNode x = 0; x < (LeftNode{1} << n); ++x)
      out << BitString::from_value(x, n).to_hex() << ' ' << t.C(x, n) << '\n';
}

ComplexityTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing CTABLE header");
  std::istringstream head(line);
  std::string word, version;
  int n_max = -1;
  head >> word;
  if (word != "CTABLE") throw ParseError(1, "expected CTABLE header");
  while (head >> word) {
    if (word.starts_with("version=")) version = word.substr(8);
    if (word.starts_with("n_max=")) n_max = std::stoi(word.substr(6));
  }
  if (version != kMachineVersion)
    throw ParseError(1, "table built for machine '" + version + "', this is " + kMachineVersion);
  if (n_max < 0 || n_max > kTableCap) throw ParseError(1, "bad n_max");
  std::vector<std::uint8_t> values((std::size_t{2} << n_max) - 1, 0xff);
  std::vector<bool> seen(values.size(), false);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string hex;
    int c = -1;
    if (!(row >> hex >> c) || c < 0 || c > 255) throw ParseError(lineno, "expected '<len>:<hex> <C>'");
    BitString x;
    try {
      x = BitString::from_hex(hex);
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
    if (x.size() > static_cast<std::size_t>(n_max)) throw ParseError(lineno, "string too long");
    const int n = static_cast<int>(x.size());
    const std::size_t s = ((std::size_t{1} << n) - 1) + (n == 0 ? 0 : x.value());
    if (seen[s]) throw ParseError(lineno, "duplicate string");
    seen[s] = true;
    values[s] = static_cast<std::uint8_t>(c);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ParseError(lineno, "table is missing strings");
  return ComplexityTable(n_max, std::move(values));
}

std::vector<BitString> c_short_oracle(const ToyMachine& m, const ComplexityTable& t,
                                      const BitString& x, int c) {
  if (c < 0) throw ParameterError("c must be >= 0");
  const int limit = t.C(x) + c;
  if (limit > 26) throw BudgetExceeded("c-short enumeration beyond 2^26 programs");
  std::vector<BitString> out;
  for (int len = 0; len <= limit; ++len) {
    for_each_program(len, [&](const BitString& p) {
      const RunResult r = run_program(m, p);
      if (r.output && *r.output == x) out.push_back(p);
    });
  }
  return out;
}

ShortProgramIndex::ShortProgramIndex(const ComplexityTable& t, int max_output, int max_program)
    : table_(&t), max_output_(max_output), max_program_(max_program) {
  if (max_output > t.n_max()) throw ParameterError("index outputs exceed the table");
  if (max_program > 26) throw BudgetExceeded("program index beyond 2^26 programs");
  per_length_.assign((std::size_t{2} << max_output) - 1,
                     std::vector<std::uint32_t>(static_cast<std::size_t>(max_program) + 1, 0));
  const ToyMachine base;
  for (int len = 0; len <= max_program; ++len) {
    for_each_program(len, [&](const BitString& p) {
      const RunResult r = run_program(base, p);
      if (!r.output || r.output->size() > static_cast<std::size_t>(max_output)) return;
      const int n = static_cast<int>(r.output->size());
      ++per_length_[((std::size_t{1} << n) - 1) + (n == 0 ? 0 : r.output->value())][len];
    });
  }
}

std::uint64_t ShortProgramIndex::count(const BitString& x, int c) const {
  if (x.size() > static_cast<std::size_t>(max_output_)) throw InputError("string outside index");
  const int limit = table_->C(x) + c;
  if (limit > max_program_) throw BudgetExceeded("index too small for this c");
  const int n = static_cast<int>(x.size());
  const auto& row = per_length_[((std::size_t{1} << n) - 1) + (n == 0 ? 0 : x.value())];
  std::uint64_t total = 0;
  for (int len = 0; len <= limit; ++len) total += row[len];
  return total;
}

}  // namespace shortlist
