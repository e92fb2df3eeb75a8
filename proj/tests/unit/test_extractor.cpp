#include "oracles.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/extractor.hpp"

#include <doctest.h>

#include <sstream>

using namespace shortlist;

namespace {

ExtractorInstance seed_copy(int n, int k, int d, const Rational& eps) {
  std::vector<std::uint32_t> t(std::size_t{1} << (n + d));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint32_t>(i & ((1u << d) - 1));
  return ExtractorInstance(n, k, d, d, eps, std::move(t), 0);
}

ExtractorInstance constant(int n, int k, int d, int m, const Rational& eps) {
  return ExtractorInstance(n, k, d, m, eps, std::vector<std::uint32_t>(std::size_t{1} << (n + d), 0), 0);
}

}  // namespace

TEST_CASE("tv_deviation") {
  const auto id = seed_copy(4, 2, 3, Rational(1, 4));
  CHECK(tv_deviation(id, FlatSource(oracle::random_subset(4, 4, 1))) == Rational(0));
  const auto c = constant(4, 2, 2, 3, Rational(1, 4));
  CHECK(tv_deviation(c, FlatSource(oracle::random_subset(4, 4, 1))) == Rational(7, 8));

  const auto e = random_extractor(4, 2, 2, 3, Rational(1, 2), 99);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto x = oracle::random_subset(4, 4, s);
    CHECK(tv_deviation(e, FlatSource(x)) == oracle::deviation(e, {x.begin(), x.end()}));
  }
  CHECK_THROWS_AS(FlatSource(oracle::random_subset(4, 3, 1)), InputError);
}

TEST_CASE("verify_exact") {
  for (int k = 0; k <= 4; ++k) {
    auto id = seed_copy(4, k, 2, Rational(1, 16));
    CHECK(verify_exact(id).verified);
    CHECK(id.status().kind == Verification::exact_verified);
  }
  auto c = constant(4, 2, 2, 1, Rational(1, 4));
  const auto v = verify_exact(c);
  CHECK_FALSE(v.verified);
  REQUIRE(v.witness.has_value());
  CHECK(v.worst == Rational(1, 2));
  CHECK(c.status().kind == Verification::unverified);

  // Existence at n=4, k=2, d=2, m=3, eps=1/2.
  int verified = 0;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    auto e = random_extractor(4, 2, 2, 3, Rational(1, 2), seed);
    const auto verdict = verify_exact(e);
    CHECK(verdict.worst == oracle::worst_deviation(e));
    CHECK(verdict.sources_checked == 1820);
    verified += verdict.verified;
  }
  CHECK(verified >= 1);

  auto big = random_extractor(8, 3, 4, 4, Rational(1, 2), 1);
  CHECK_THROWS_AS(verify_exact(big), BudgetExceeded);
}

TEST_CASE("ties count as failures") {
  // Constant output with m = 1: deviation exactly 1/2.
  auto c = constant(3, 1, 1, 1, Rational(1, 2));
  CHECK_FALSE(verify_exact(c).verified);
}

TEST_CASE("parallel verification matches the sequential verdict") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto a = random_extractor(5, 2, 3, 2, Rational(1, 4), seed);
    auto b = a;
    const auto va = verify_exact(a, kDefaultExactBudget, 1);
    const auto vb = verify_exact(b, kDefaultExactBudget, 3);
    CHECK(va.verified == vb.verified);
    CHECK(va.worst == vb.worst);
    CHECK(va.witness.has_value() == vb.witness.has_value());
    if (va.witness) CHECK(va.witness->support() == vb.witness->support());
  }
}

TEST_CASE("audit_sampled") {
  auto id = seed_copy(5, 2, 3, Rational(1, 4));
  CHECK(audit_sampled(id, 500, 3) == Rational(0));

  auto e = random_extractor(4, 2, 3, 2, Rational(1, 2), 5);
  const auto exact = verify_exact(e).worst;
  CHECK(audit_sampled(e, 2000, 1) <= exact);
  CHECK(e.status().kind == Verification::exact_verified);  // never downgraded

  auto f = random_extractor(6, 3, 4, 5, Rational(1, 2), 8);
  auto g = f;
  CHECK(audit_sampled(f, 10000, 42) == audit_sampled(g, 10000, 42));
  CHECK(f.status().kind == Verification::sampled_audited);
  CHECK(f.status().trials == 10000);
}

TEST_CASE("search_extractor shape and determinism") {
  const auto shape = extractor_shape(4, 2, Rational(1, 2));
  CHECK(shape.d == 5);
  CHECK(shape.m == 3);
  const auto e = search_extractor(4, 2, Rational(1, 2), 7);
  CHECK(e.d() == 5);
  CHECK(e.m() == 3);
  CHECK(e.entropy_loss() == 4);
  CHECK(e.status().kind == Verification::exact_verified);
  const auto again = search_extractor(4, 2, Rational(1, 2), 7);
  CHECK(again.table() == e.table());
  CHECK(again.seed() == e.seed());

  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      for (const Rational eps : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
        const auto s = extractor_shape(n, k, eps);
        const int l = ceil_log2_inverse(eps);
        CHECK(s.m == k + s.d - 2 * l - 2);
      }

  // eps = 1: every table verifies on the first attempt.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto one = search_extractor(3, 1, Rational(1), seed);
    CHECK(one.seed() == derive_seed(seed, {0}));
  }
}

TEST_CASE("search failure carries the best candidate") {
  // Single-point sources mapped onto far more outputs than seeds can cover.
  SearchOptions opt;
  opt.constants = ExtractorConstants{0, -6};
  opt.max_attempts = 3;
  const auto shape = extractor_shape(4, 0, Rational(1, 16), opt.constants);
  REQUIRE(shape.m > shape.d - 4);
  try {
    search_extractor(4, 0, Rational(1, 16), 1, opt);
    FAIL("expected SearchFailed");
  } catch (const SearchFailed& f) {
    CHECK(f.worst() >= Rational(1, 16));
    CHECK(f.best().status().kind == Verification::unverified);
  }
}

TEST_CASE("avg_right_degree") {
  LeftRegularGraph ident(3, 0, 8, [](LeftNode x, std::uint64_t) { return x; }, "identity");
  CHECK(avg_right_degree(ident, LeftSubset::full(3)) == Rational(1));

  const auto e = search_extractor(4, 2, Rational(1, 2), 7);
  const auto b = oracle::random_subset(4, 4, 3);
  CHECK(avg_right_degree(e.graph(), b) == Rational(1 << e.entropy_loss()));
  const auto b2 = oracle::random_subset(4, 11, 4);
  CHECK(avg_right_degree(e.graph(), b2) ==
        Rational(static_cast<std::int64_t>(11 << e.d()), std::int64_t{1} << e.m()));
}

TEST_CASE("rich-node lemma audit") {
  auto id = seed_copy(4, 2, 3, Rational(1, 4));
  verify_exact(id);
  const auto full = LeftSubset::full(4);
  const Rational a = avg_right_degree(id.graph(), full);
  CHECK(audit_rich_lemma(id, a, full).holds());
  CHECK(audit_rich_lemma(id, a, LeftSubset(4)).count() == 0);

  const auto e = search_extractor(4, 2, Rational(1, 2), 7);
  const Rational ae = avg_right_degree(e.graph(), full);
  const auto audit = audit_rich_lemma(e, ae, full);
  CHECK(audit.count() <= 4);
  CHECK(audit.s == static_cast<std::uint64_t>(ceil(ae / e.eps())));
  // Offending nodes are exactly the brute-force non-rich ones.
  std::vector<LeftNode> want;
  for (LeftNode x = 0; x < 16; ++x)
    if (!oracle::rich(e.graph(), {full.begin(), full.end()}, x, audit.s, audit.delta)) want.push_back(x);
  CHECK(audit.offending == want);

  auto unverified = random_extractor(4, 2, 5, 3, Rational(1, 2), 1);
  CHECK_THROWS_AS(audit_rich_lemma(unverified, ae, full), Refused);
  CHECK_THROWS_AS(audit_rich_lemma(e, Rational(1, 100), full), ParameterError);
}

TEST_CASE("deleting left nodes preserves verification") {
  auto e = search_extractor(4, 2, Rational(1, 2), 7);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto kept = oracle::random_subset(4, 4 + s, s);
    // Worst over flat sources inside kept, by brute force.
    std::vector<LeftNode> pool(kept.begin(), kept.end()), cur;
    Rational worst(0);
    auto rec = [&](auto&& self, std::size_t next) -> void {
      if (cur.size() == 4) {
        worst = std::max(worst, oracle::deviation(e, cur));
        return;
      }
      for (std::size_t i = next; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    CHECK(worst < e.eps());
  }
}

TEST_CASE("extractor files") {
  const auto e = search_extractor(4, 2, Rational(1, 2), 7);
  std::stringstream buf;
  write_extractor(buf, e);
  const auto back = read_extractor(buf);
  CHECK(back.table() == e.table());
  CHECK(back.seed() == e.seed());
  CHECK(to_string(back.status()) == to_string(e.status()));
  std::stringstream again;
  write_extractor(again, back);
  CHECK(again.str() == buf.str());

  std::stringstream sparse;
  sparse << "EXTRACTOR n=1 k=1 d=1 m=1 eps=1/2 status=unverified seed=3\n"
         << "0 0 -> 1\n0 1 -> 0\n1 0 -> 0\n1 1 -> 1\n";
  const auto s = read_extractor(sparse);
  CHECK(s(0, 0) == 1);
  CHECK(s(1, 1) == 1);

  std::stringstream bad;
  bad << "EXTRACTOR n=1 k=1 d=1 m=1 eps=1/2 status=unverified seed=3\n"
      << "0 0 -> 1\n0 1 -> 7\n";
  try {
    read_extractor(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
  }
}
