#include "shortlist/primes.hpp"

#include "shortlist/errors.hpp"

#include <bit>
#include <cmath>

namespace shortlist {

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit <= 2) return out;
  std::vector<bool> composite(limit, false);
  for (std::uint64_t i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::uint64_t t) {
  if (t == 0) throw ParameterError("first_primes needs t >= 1");
  if (t > (std::uint64_t{1} << 26)) throw BudgetExceeded("too many primes requested");
  std::uint64_t limit = prime_upper_bound(t) + 1;
  auto out = primes_below(limit);
  out.resize(t);
  return out;
}

std::uint64_t prime_upper_bound(std::uint64_t t) {
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11};
  if (t == 0) throw ParameterError("prime_upper_bound needs t >= 1");
  if (t < 6) return kSmall[t - 1];
  const std::uint64_t bw = std::bit_width(t);
  const std::uint64_t bw2 = std::bit_width(bw);
  return (7 * t * (bw + bw2)) / 10 + 1;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    if (v % p != 0) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace shortlist
