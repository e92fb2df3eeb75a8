#include "oracles.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/list_approx.hpp"

#include <doctest.h>

using namespace shortlist;

namespace {

Lab& lab() {
  static Lab l;
  return l;
}

BitString random_seed(int bits, std::uint64_t seed) {
  Rng rng(seed);
  BitString s;
  for (int i = 0; i < bits; ++i) s.push_back(rng.bits(1) != 0);
  return s;
}

LevelFailure random_level(int width, std::uint64_t seed) {
  Rng rng(seed);
  LevelFailure f;
  f.width = width;
  f.all = rng.below(5) == 0;
  if (!f.all)
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << width); ++w)
      if (rng.below(4) != 0) f.failing.push_back(w);
  return f;
}

}  // namespace

TEST_CASE("seed prefixes") {
  const auto s = BitString::from_text("1011000111");
  CHECK(seed_prefix(s, 0) == 0);
  CHECK(seed_prefix(s, 1) == 1);
  CHECK(seed_prefix(s, 4) == 0b1011);
  CHECK(seed_prefix(s, 10) == 0b1011000111);
  CHECK_THROWS_AS(seed_prefix(s, 11), InputError);
}

TEST_CASE("list length and layout") {
  auto& l = lab();
  for (const auto& [n, q] : std::vector<std::pair<int, std::uint64_t>>{{1, 1}, {2, 1}, {4, 2}, {4, 4}}) {
    const auto& ch = l.chain(n, Rational(1, static_cast<std::int64_t>(q)));
    for (std::uint64_t rep = 0; rep < 6; ++rep) {
      const LeftNode x = rep % (LeftNode{1} << n);
      const auto seed = random_seed(ch.seed_bits(), rep);
      const auto list = generate_list(l, x, n, q, seed);
      REQUIRE(list.entries.size() == static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < list.entries.size(); ++i) {
        const auto& e = list.entries[i];
        const int ell = ch.bottom() + static_cast<int>(i);
        const auto& g = *ch.level(ell).graph;
        CHECK(e.fields == GraphFields{true, ell, 2, q, n});
        CHECK(e.seed_bits == g.d_out());
        CHECK(e.edge == seed_prefix(seed, g.d_out()));
        CHECK(e.z == neighbor_at(g, x, e.edge));
        CHECK(e.length() == e.bits.size());
        const auto decoded = decode_graph_program(e.bits);
        REQUIRE(decoded.has_value());
        CHECK(decoded->fields == e.fields);
        CHECK(decoded->z_bits.value() == e.z);
      }
      // Deterministic in the seed.
      const auto again = generate_list(l, x, n, q, seed);
      for (std::size_t i = 0; i < list.entries.size(); ++i)
        CHECK(again.entries[i].bits == list.entries[i].bits);
    }
    CHECK_THROWS_AS(generate_list(l, 0, n, q, random_seed(ch.seed_bits() - 1, 1)), InputError);
  }
}

TEST_CASE("machine output matches the direct first owner") {
  auto& l = lab();
  const ToyMachine m = l.machine();
  for (const auto& [n, q] : std::vector<std::pair<int, std::uint64_t>>{{1, 1}, {2, 1}, {4, 2}}) {
    const auto& ch = l.chain(n, Rational(1, static_cast<std::int64_t>(q)));
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const LeftNode x = rep % (LeftNode{1} << n);
      const auto list = generate_list(l, x, n, q, random_seed(ch.seed_bits(), rep + 100));
      for (const auto& e : list.entries) {
        const auto run = run_program(m, e.bits);
        const auto direct = l.first_owner_direct(e.fields, e.z);
        CHECK(run.halted() == direct.has_value());
        if (direct) CHECK(run.output->value() == *direct);
        // x owns the edge, so some member of B is found whenever x is in B.
        if (ch.level(e.fields.ell).b.contains(x)) CHECK(direct.has_value());
      }
    }
  }
}

TEST_CASE("failing-seed count") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int r = 1 + static_cast<int>(rng.below(14));
    std::vector<LevelFailure> levels;
    const int count = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < count; ++i)
      levels.push_back(random_level(static_cast<int>(rng.below(r + 1)), seed * 11 + i));
    const std::uint64_t fast = count_failing(levels, r);
    CHECK(fast == count_failing_brute(levels, r));
    std::uint64_t by_seed = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s)
      by_seed += seed_fails(levels, BitString::from_value(s, r));
    CHECK(fast == by_seed);
  }
  CHECK(count_failing({}, 5) == 32);
  CHECK_THROWS_AS(count_failing_brute({}, 25), BudgetExceeded);
}

TEST_CASE("exact profile agrees with running every seed") {
  auto& l = lab();
  for (int n : {1, 2}) {
    const auto& ch = l.chain(n, Rational(1));
    REQUIRE(ch.seed_bits() <= 24);
    for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) {
      const auto brute = brute_success_profile(l, x, n, 1, 1000);
      for (int c_star : {0, brute.best_overhead - 1, brute.best_overhead, 1000}) {
        if (c_star < 0) continue;
        const auto exact = exact_success_profile(l, x, n, 1, c_star);
        const auto slow = c_star == 1000 ? brute : brute_success_profile(l, x, n, 1, c_star);
        CHECK(exact.r == slow.r);
        CHECK(exact.hits == slow.hits);
        CHECK(exact.best_overhead == slow.best_overhead);
      }
    }
  }
}

TEST_CASE("success is monotone in c*") {
  auto& l = lab();
  for (LeftNode x = 0; x < 16; ++x) {
    std::uint64_t prev = 0;
    for (int c_star = 0; c_star <= 80; c_star += 5) {
      const auto p = exact_success_profile(l, x, 4, 2, c_star);
      CHECK(p.hits >= prev);
      prev = p.hits;
    }
    CHECK(exact_success_profile(l, x, 4, 2, 80).at_least(Rational(1, 2)));
  }
}

TEST_CASE("calibration") {
  auto& l = lab();
  const auto cal = calibrate(l, 2, 1);
  REQUIRE(cal.per_x.size() == 4);
  CHECK(cal.c_star >= 0);
  for (LeftNode x = 0; x < 4; ++x) {
    const int c = cal.per_x[x];
    // delta = 1: any hit at all meets 1 - delta = 0, so the least c* is 0.
    CHECK(c == 0);
    CHECK(exact_success_profile(l, x, 2, 1, c).at_least(Rational(0)));
  }
  const auto half = calibrate(l, 4, 2);
  for (LeftNode x = 0; x < 16; ++x) {
    const int c = half.per_x[x];
    REQUIRE(c >= 0);
    CHECK(c <= half.c_star);
    CHECK(exact_success_profile(l, x, 4, 2, c).at_least(Rational(1, 2)));
    if (c > 0) CHECK_FALSE(exact_success_profile(l, x, 4, 2, c - 1).at_least(Rational(1, 2)));
  }
}

TEST_CASE("promise algorithm") {
  CHECK(promise_c(1) == 0);
  CHECK(promise_c(2) == 3);
  CHECK(promise_c(4) == 6);
  CHECK(promise_c(8) == 9);
  auto& l = lab();
  // A false promise below c has no graph behind it.
  const auto degenerate = short_program_given_C(l, 3, 8, 4, 4, random_seed(8, 1));
  CHECK(degenerate.degenerate);
  CHECK(degenerate.program.bits.empty());
  CHECK_FALSE(run_program(l.machine(), degenerate.program.bits).halted());

  const int n = 4;
  const ToyMachine m = l.machine();
  for (LeftNode x = 0; x < 16; ++x) {
    const auto prof = promise_profile(l, x, n, 2);
    CHECK(prof.ell == l.table().C(x, n) + 1);
    CHECK(prof.c == 6);
    CHECK_FALSE(prof.in_bad_set);
    CHECK(prof.at_least(Rational(1, 2)));
    for (std::uint64_t rep = 0; rep < 10; ++rep) {
      const auto seed = random_seed(prof.r, x * 100 + rep);
      const auto res = short_program_given_C(l, x, n, l.table().C(x, n), 2, seed);
      REQUIRE_FALSE(res.degenerate);
      CHECK(res.program.length() == prof.program_length);
      const auto run = run_program(m, res.program.bits);
      REQUIRE(run.halted());
      // Fails exactly on the edges an earlier member of B shares.
      const auto& audit = l.plain_audit(RichOwnerParams{n, prof.ell, prof.c, Rational(1, 2)});
      const auto& g = l.graph(RichOwnerParams{n, prof.ell, prof.c, Rational(1, 2)});
      const auto blocked = audit.blocked_prime_indices(x, res.program.edge / g.t());
      const bool is_blocked =
          std::binary_search(blocked.begin(), blocked.end(), res.program.edge % g.t());
      CHECK((run.output->value() == x) == !is_blocked);
    }
  }
}
