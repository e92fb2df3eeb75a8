#pragma once

#include <cstdint>
#include <vector>

namespace shortlist {

// All primes p < limit, ascending (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

// The first t primes, ascending.
std::vector<std::uint64_t> first_primes(std::uint64_t t);

// Integer upper bound on the t-th prime p_t (t >= 1):
//   t < 6  : p_t itself,
//   t >= 6 : floor(7 * t * (bw(t) + bw(bw(t))) / 10) + 1, bw = bit width,
// which dominates t ln t + t ln ln t. Pure integer arithmetic so encodings
// derived from it are identical on every platform.
std::uint64_t prime_upper_bound(std::uint64_t t);

// Prime factors of v >= 1 (distinct, ascending), by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

}  // namespace shortlist
