#include "oracles.hpp"
#include "shortlist/complexity.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/machine.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shortlist;

namespace {

const ComplexityTable& table12() {
  static const ComplexityTable t = complexity_table(12);
  return t;
}

// Shortest base-mode description, from the mode definitions alone: a literal
// costs |x| + 2, a repeat of an L-bit block k times costs
// 2 + gamma(L) + L + gamma(k).
int analytic_C(const std::string& x) {
  int best = static_cast<int>(x.size()) + 2;
  const std::size_t n = x.size();
  for (std::size_t len = 1; len <= n; ++len) {
    if (n % len) continue;
    bool periodic = true;
    for (std::size_t i = len; i < n && periodic; ++i) periodic = x[i] == x[i - len];
    if (!periodic) continue;
    best = std::min(best, 2 + gamma_length(len) + static_cast<int>(len) + gamma_length(n / len));
  }
  return best;
}

std::string bits_of(LeftNode x, int n) { return BitString::from_value(x, n).to_text(); }

}  // namespace

TEST_CASE("machine examples") {
  const ToyMachine m;
  const auto x = BitString::from_text("1011001");
  const auto lit = run_program(m, literal_program(x));
  REQUIRE(lit.halted());
  CHECK(*lit.output == x);
  CHECK_FALSE(run_program(m, BitString{}).halted());
  CHECK_FALSE(run_program(m, BitString::from_text("1")).halted());
  const auto rep = run_program(m, repeat_program(BitString::from_text("01"), 5));
  REQUIRE(rep.halted());
  CHECK(rep.output->to_text() == "0101010101");
  CHECK(repeat_program(BitString::from_text("01"), 5).to_text() == "01" "010" "01" "00101");
  CHECK_FALSE(run_program(m, BitString::from_text("11")).halted());
  CHECK_FALSE(run_program(m, BitString::from_text("110101")).halted());
  // A repeat program must end right after its count.
  auto trailing = repeat_program(BitString::from_text("1"), 3);
  trailing.push_back(false);
  CHECK_FALSE(run_program(m, trailing).halted());
  CHECK_FALSE(run_program(m, BitString::from_text("0100")).halted());
  CHECK_THROWS_AS(repeat_program(BitString{}, 3), InputError);
  CHECK(run_program(m, literal_program(BitString{})).output->empty());
}

TEST_CASE("step budget") {
  CHECK(step_budget(0) == 4096);
  CHECK(step_budget(3) == 4096 * 8);
  CHECK(step_budget(10) == (std::uint64_t{1} << 22));
  CHECK(step_budget(60) == (std::uint64_t{1} << 22));
  const ToyMachine m;
  // 2^20 copies of a 5-bit block needs more steps than a short program may use.
  const auto big = run_program(m, repeat_program(BitString::from_text("10110"), std::uint64_t{1} << 20));
  CHECK_FALSE(big.halted());
}

TEST_CASE("graph programs") {
  const GraphFields f{true, 7, 2, 4, 3};
  const auto p = graph_program(f, 0x2d, 6);
  CHECK(p.to_text().substr(0, 3) == "101");
  const auto d = decode_graph_program(p);
  REQUIRE(d.has_value());
  CHECK(d->fields == f);
  CHECK(d->z_bits.to_text() == "101101");
  CHECK_FALSE(decode_graph_program(literal_program(BitString::from_text("1"))).has_value());
  CHECK_FALSE(run_program(ToyMachine{}, p).halted());  // no resolver
  CHECK_THROWS_AS(graph_program(f, 64, 6), InputError);
}

TEST_CASE("complexity table agrees with the mode arithmetic") {
  const auto& t = table12();
  CHECK(t.n_max() == 12);
  for (int n = 0; n <= 12; ++n)
    for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) {
      const int c = t.C(x, n);
      CHECK(c == analytic_C(bits_of(x, n)));
      CHECK(c <= n + 2);
      CHECK(c < n + t.e_const());
    }
  CHECK(t.C(BitString::from_text(std::string(12, '0'))) == 11);
  CHECK(t.C(BitString::from_text(std::string(12, '0'))) < 12);
  CHECK(t.e_const() == 3);
  for (int n = 0; n <= 12; ++n)
    for (int ell = 0; ell <= 16; ++ell) {
      std::uint64_t below = 0;
      for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) below += t.C(x, n) < ell;
      CHECK(t.count_below(n, ell) == below);
      CHECK(below < (std::uint64_t{1} << ell));
    }
  CHECK_THROWS_AS(complexity_table(15), BudgetExceeded);
  CHECK_THROWS_AS(t.C(BitString::from_text(std::string(13, '1'))), InputError);
}

TEST_CASE("table files") {
  const auto t = complexity_table(8);
  std::stringstream buf;
  write_table(buf, t);
  CHECK(buf.str().rfind("CTABLE version=toy-v1 n_max=8\n", 0) == 0);
  const auto back = read_table(buf);
  CHECK(back == t);
  std::stringstream again;
  write_table(again, back);
  CHECK(again.str() == buf.str());

  std::stringstream other;
  other << "CTABLE version=toy-v0 n_max=1\n";
  CHECK_THROWS_AS(read_table(other), ParseError);
  std::stringstream bad;
  bad << "CTABLE version=toy-v1 n_max=1\n0:0 2\n1:0 3\n1:1 x\n";
  try {
    read_table(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("c-short programs") {
  const ToyMachine m;
  const auto& t = table12();
  for (int n = 0; n <= 6; ++n)
    for (LeftNode v = 0; v < (LeftNode{1} << n); v += 1 + n) {
      const auto x = BitString::from_value(v, n);
      std::vector<BitString> prev;
      for (int c = 0; c <= 3; ++c) {
        const auto progs = c_short_oracle(m, t, x, c);
        if (c == 0) CHECK_FALSE(progs.empty());
        for (const auto& p : progs) {
          CHECK(p.size() <= static_cast<std::size_t>(t.C(x) + c));
          CHECK(*run_program(m, p).output == x);
        }
        for (const auto& p : prev) CHECK(std::find(progs.begin(), progs.end(), p) != progs.end());
        prev = progs;
      }
    }
}

TEST_CASE("program index matches the direct oracle") {
  const ToyMachine m;
  const auto& t = table12();
  const ShortProgramIndex index(t, 6, 12);
  for (int n = 0; n <= 6; ++n)
    for (LeftNode v = 0; v < (LeftNode{1} << n); ++v) {
      const auto x = BitString::from_value(v, n);
      for (int c = 0; c + t.C(x) <= 12 && c <= 4; ++c)
        CHECK(index.count(x, c) == c_short_oracle(m, t, x, c).size());
    }
  CHECK_THROWS_AS(index.count(BitString::from_value(0, 6), 9), BudgetExceeded);
}

TEST_CASE("machine definition file") {
  CHECK(check_machine_definition(machine_definition_path()).empty());
  const auto tmp = std::filesystem::temp_directory_path() / "shortlist-def-test.def";
  {
    std::ifstream in(machine_definition_path());
    std::ofstream out(tmp);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("budget.cap=", 0) == 0) line = "budget.cap=1024";
      out << line << '\n';
    }
  }
  CHECK(check_machine_definition(tmp.string()) == std::vector<std::string>{"budget.cap"});
  std::filesystem::remove(tmp);
}
