#include "shortlist/rational.hpp"

#include "shortlist/errors.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace shortlist {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal(const Rational& r, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits,
                static_cast<double>(r.numerator()) /
                    static_cast<double>(r.denominator()));
  return buf;
}

std::int64_t ceil(const Rational& r) {
  const std::int64_t q = r.numerator() / r.denominator();
  const std::int64_t rem = r.numerator() % r.denominator();
  return rem > 0 ? q + 1 : q;
}

int ceil_log2_inverse(const Rational& r) {
  if (r <= 0 || r > 1) throw ParameterError("expected a rational in (0,1]");
  int j = 0;
  // 2^j * num >= den
  __int128 lhs = r.numerator();
  while (lhs < r.denominator()) {
    lhs *= 2;
    ++j;
  }
  return j;
}

int ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return 64 - std::countl_zero(v - 1);
}

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

}  // namespace shortlist
