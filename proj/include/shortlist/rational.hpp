#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace shortlist {

using Rational = boost::rational<std::int64_t>;

// Accepts "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);

// Always "<num>/<den>", e.g. "1/4", "3/1".
std::string to_string(const Rational& r);

// Decimal rendering for plotting only; never used on verification paths.
std::string to_decimal(const Rational& r, int digits = 6);

std::int64_t ceil(const Rational& r);

// Smallest j >= 0 with 2^j >= 1/r, for 0 < r <= 1.
int ceil_log2_inverse(const Rational& r);

// Smallest j >= 0 with 2^j >= v, for v >= 1.
int ceil_log2(std::uint64_t v);

bool is_power_of_two(std::uint64_t v);

}  // namespace shortlist
