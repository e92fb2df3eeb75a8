#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shortlist {

// A finite binary string, first bit = most significant when read as an
// integer. Used for toy-machine programs and their outputs.
class BitString {
 public:
  BitString() = default;

  static BitString from_value(std::uint64_t value, int length);
  // Parses "0101..." (characters other than 0/1 rejected).
  static BitString from_text(std::string_view text);
  // Parses "<len>:<hex>" (see to_hex).
  static BitString from_hex(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }

  void push_back(bool b) { bits_.push_back(b); }
  void append(std::uint64_t value, int width);
  void append(const BitString& other);

  // Numeric value; requires size() <= 64.
  std::uint64_t value() const;

  BitString repeated(std::uint64_t times) const;

  std::string to_text() const;
  // "<len>:<hex>", hex digits = max(1, ceil(len/4)), value right-aligned.
  std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<bool> bits_;
};

// Elias gamma code for v >= 1: (bitwidth(v) - 1) zeros, then v in binary.
BitString gamma_encode(std::uint64_t v);
int gamma_length(std::uint64_t v);

// Sequential reader over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  bool at_end() const { return pos_ == bits_.size(); }
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bits_.size() - pos_; }

  std::optional<bool> bit();
  std::optional<std::uint64_t> fixed(int width);
  std::optional<std::uint64_t> gamma();
  std::optional<BitString> take(std::size_t count);
  BitString rest();

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

// Hex with a fixed digit count (zero padded), lowercase.
std::string to_hex(std::uint64_t v, int digits = 0);
std::uint64_t parse_hex(std::string_view text);

}  // namespace shortlist
