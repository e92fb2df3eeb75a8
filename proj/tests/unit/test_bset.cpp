#include "oracles.hpp"
#include "shortlist/bset.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/lab.hpp"

#include <doctest.h>

#include <algorithm>

using namespace shortlist;

namespace {

const ComplexityTable& table() {
  static const ComplexityTable t = complexity_table(12);
  return t;
}

std::vector<LeftNode> by_complexity(std::vector<LeftNode> xs, int n) {
  std::stable_sort(xs.begin(), xs.end());
  std::stable_sort(xs.begin(), xs.end(),
                   [&](LeftNode a, LeftNode b) { return table().C(a, n) < table().C(b, n); });
  return xs;
}

}  // namespace

TEST_CASE("plain B-sets") {
  const auto& t = table();
  for (int n = 1; n <= 12; ++n)
    for (int ell = 1; ell <= n + t.e_const() + 1; ++ell) {
      const auto b = plain_B(t, n, ell);
      std::vector<LeftNode> want;
      for (LeftNode x = 0; x < (LeftNode{1} << n); ++x)
        if (t.C(x, n) < ell) want.push_back(x);
      CHECK(b.first_type == want);
      CHECK(b.second_type.empty());
      CHECK(b.order == by_complexity(want, n));
      CHECK(b.size() < (std::uint64_t{1} << ell));
      CHECK_FALSE(b.augmented);
    }
  CHECK(plain_B(t, 5, 1).size() == 0);
  CHECK(plain_B(t, 12, 12).contains(0));           // 0^12 is compressible
  CHECK_FALSE(plain_B(t, 12, 12).contains(0x5a3));
  CHECK_THROWS_AS(plain_B(t, 13, 4), InputError);
}

TEST_CASE("augmented B-sets from a synthetic level above") {
  const auto& t = table();
  const int n = 12;
  for (int ell = 11; ell <= 14; ++ell) {
    const auto above = plain_B(t, n, ell + 1);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      // Any subset of the level above may be declared non-rich.
      std::vector<LeftNode> non_rich;
      Rng rng(seed);
      for (LeftNode x : above.first_type)
        if (rng.below(3) == 0) non_rich.push_back(x);
      const auto b = augmented_B(t, n, ell, &above, non_rich);
      std::vector<LeftNode> first, second;
      for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) {
        if (t.C(x, n) < ell - 1) first.push_back(x);
        else if (std::find(non_rich.begin(), non_rich.end(), x) != non_rich.end()) second.push_back(x);
      }
      CHECK(b.augmented);
      CHECK(b.first_type == first);
      CHECK(b.second_type == second);
      std::vector<LeftNode> all = first;
      all.insert(all.end(), second.begin(), second.end());
      CHECK(b.order == by_complexity(all, n));
      for (LeftNode x : all) CHECK(b.contains(x));
    }
  }
  const auto above = plain_B(t, n, 13);
  const std::vector<LeftNode> outside{0x5a3};
  CHECK_THROWS_AS(augmented_B(t, n, 12, &above, outside), InputError);
  CHECK_THROWS_AS(augmented_B(t, n, 11, &above, {}), InputError);
  CHECK_THROWS_AS(augmented_B(t, n, 12, nullptr, {}), InputError);
}

TEST_CASE("top level holds only first-type strings") {
  const auto& t = table();
  for (int n = 1; n <= 12; ++n) {
    const int top = n + t.e_const() + 1;
    const auto b = augmented_B(t, n, top, nullptr, {});
    CHECK(b.second_type.empty());
    CHECK(b.first_type == plain_B(t, n, top - 1).first_type);
    CHECK(b.size() <= (std::uint64_t{1} << top));
  }
}

TEST_CASE("chain size bounds") {
  Lab lab;
  for (const auto& [n, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {4, 2}}) {
    const auto& ch = lab.chain(n, Rational(1, q));
    CHECK(ch.levels.size() == static_cast<std::size_t>(n));
    CHECK(ch.bottom() == ch.e + 2);
    CHECK(ch.top() == n + ch.e + 1);
    CHECK(ch.level(ch.top()).b.second_type.empty());
    for (const auto& l : ch.levels) {
      CHECK(l->b.size() <= (std::uint64_t{1} << l->ell));
      CHECK(l->b.augmented);
      CHECK(l->non_rich.size() <= (std::uint64_t{1} << (l->ell - 2)));
      CHECK(l->graph->params() == RichOwnerParams{n, l->ell, 2, Rational(1, q)});
      CHECK(l->graph->within_bounds(BuilderConstants{}));
      if (l->ell < ch.top()) {
        const auto& up = ch.level(l->ell + 1);
        const auto rebuilt = augmented_B(lab.table(), n, l->ell, up.b, *up.graph);
        CHECK(rebuilt.order == l->b.order);
        CHECK(l->b.second_type.size() <= (std::uint64_t{1} << (l->ell - 1)));
      }
    }
  }
}
