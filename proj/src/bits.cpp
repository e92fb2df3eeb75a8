#include "shortlist/bits.hpp"

#include "shortlist/errors.hpp"

#include <bit>
#include <charconv>

namespace shortlist {

BitString BitString::from_value(std::uint64_t value, int length) {
  BitString out;
  out.append(value, length);
  return out;
}

BitString BitString::from_text(std::string_view text) {
  BitString out;
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw InputError("bit string may only contain 0 and 1");
    out.push_back(ch == '1');
  }
  return out;
}

BitString BitString::from_hex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InputError("expected <len>:<hex>, got '" + std::string(text) + "'");
  std::size_t len = 0;
  auto lhs = text.substr(0, colon);
  auto [p, ec] = std::from_chars(lhs.data(), lhs.data() + lhs.size(), len);
  if (ec != std::errc() || p != lhs.data() + lhs.size())
    throw InputError("bad length in '" + std::string(text) + "'");
  const auto hex = text.substr(colon + 1);
  BitString out;
  // Each hex digit contributes 4 bits; keep the low `len` bits overall.
  std::vector<bool> all;
  for (char ch : hex) {
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else throw InputError("bad hex digit in '" + std::string(text) + "'");
    for (int b = 3; b >= 0; --b) all.push_back((v >> b) & 1);
  }
  if (all.size() < len) all.insert(all.begin(), len - all.size(), false);
  for (std::size_t i = 0; i + len < all.size(); ++i)
    if (all[i]) throw InputError("value exceeds length in '" + std::string(text) + "'");
  for (std::size_t i = all.size() - len; i < all.size(); ++i) out.push_back(all[i]);
  return out;
}

void BitString::append(std::uint64_t value, int width) {
  for (int i = width - 1; i >= 0; --i)
    bits_.push_back(i < 64 && ((value >> i) & 1));
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::value() const {
  if (bits_.size() > 64) throw InputError("bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (bool b : bits_) v = (v << 1) | (b ? 1 : 0);
  return v;
}

BitString BitString::repeated(std::uint64_t times) const {
  BitString out;
  out.bits_.reserve(bits_.size() * times);
  for (std::uint64_t i = 0; i < times; ++i) out.append(*this);
  return out;
}

std::string BitString::to_text() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string BitString::to_hex() const {
  const std::size_t digits = bits_.empty() ? 1 : (bits_.size() + 3) / 4;
  std::string hex(digits, '0');
  // Right-align: bit i (from the end) goes to digit (digits-1 - i/4).
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const std::size_t from_end = bits_.size() - 1 - i;
    if (!bits_[i]) continue;
    char& d = hex[digits - 1 - from_end / 4];
    int v = (d <= '9') ? d - '0' : d - 'a' + 10;
    v |= 1 << (from_end % 4);
    d = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
  }
  return std::to_string(bits_.size()) + ":" + hex;
}

BitString gamma_encode(std::uint64_t v) {
  if (v == 0) throw InputError("gamma code is defined for v >= 1");
  const int w = std::bit_width(v);
  BitString out;
  out.append(0, w - 1);
  out.append(v, w);
  return out;
}

int gamma_length(std::uint64_t v) { return 2 * std::bit_width(v) - 1; }

std::optional<bool> BitReader::bit() {
  if (pos_ >= bits_.size()) return std::nullopt;
  return bits_[pos_++];
}

std::optional<std::uint64_t> BitReader::fixed(int width) {
  if (width > 64 || remaining() < static_cast<std::size_t>(width)) return std::nullopt;
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (bits_[pos_++] ? 1 : 0);
  return v;
}

std::optional<std::uint64_t> BitReader::gamma() {
  int zeros = 0;
  while (true) {
    auto b = bit();
    if (!b) return std::nullopt;
    if (*b) break;
    if (++zeros > 63) return std::nullopt;
  }
  std::uint64_t v = 1;
  for (int i = 0; i < zeros; ++i) {
    auto b = bit();
    if (!b) return std::nullopt;
    v = (v << 1) | (*b ? 1 : 0);
  }
  return v;
}

std::optional<BitString> BitReader::take(std::size_t count) {
  if (remaining() < count) return std::nullopt;
  BitString out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(bits_[pos_++]);
  return out;
}

BitString BitReader::rest() { return *take(remaining()); }

std::string to_hex(std::uint64_t v, int digits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), kDigits[v & 15]);
    v >>= 4;
  } while (v != 0);
  if (static_cast<int>(s.size()) < digits) s.insert(0, digits - s.size(), '0');
  return s;
}

std::uint64_t parse_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty())
    throw InputError("not a hex number: '" + std::string(text) + "'");
  return v;
}

}  // namespace shortlist
