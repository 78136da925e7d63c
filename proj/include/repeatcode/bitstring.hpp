#pragma once
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repeatcode {

// Packed bit vector over {0,1}*. Bit 0 is the leftmost character of the
// string form; the empty string is a valid value everywhere.
class BitString {
 public:
  BitString() = default;

  static BitString zeros(std::size_t n);
  static BitString ones(std::size_t n);
  static BitString from_string(std::string_view s);  // '0'/'1' only
  // Big-endian: the first bit of the result is the most significant bit.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool bit(std::size_t i) const {  // 0-indexed
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void push_back(bool b);
  void append(const BitString& other);
  void append_run(bool b, std::size_t count);

  std::size_t weight() const;
  std::size_t weight_range(std::size_t lo, std::size_t hi) const;  // [lo,hi)

  BitString slice(std::size_t lo, std::size_t hi) const;  // [lo,hi), 0-indexed
  // 1-indexed inclusive substring x_i^j; requires 1 <= i and j <= size().
  // i > j yields the empty string.
  BitString substring(std::size_t i, std::size_t j) const;

  // Bits [pos, pos+len) packed into a word, bit k of the result = bit(pos+k).
  std::uint64_t window_u64(std::size_t pos, std::size_t len) const;
  // Big-endian integer value of the whole string; requires size() <= 64.
  std::uint64_t to_uint() const;

  std::size_t find_first_one() const;  // size() when there is none
  std::size_t find_last_one() const;   // size() when there is none

  std::vector<std::uint8_t> unpack() const;
  std::string to_string() const;

  bool operator==(const BitString& o) const;
  bool operator!=(const BitString& o) const { return !(*this == o); }
  // Length-major total order (used only to fix deterministic iteration).
  bool operator<(const BitString& o) const;

  struct Hash {
    std::size_t operator()(const BitString& b) const;
  };

 private:
  std::vector<std::uint64_t> words_;
  std::size_t len_ = 0;
};

struct TrimResult {
  BitString trimmed;
  std::size_t left_cut = 0;   // zeros removed from the front
  std::size_t right_cut = 0;  // zeros removed from the back
};

// Removes leading and trailing zeros. All-zero input trims to the empty
// string with left_cut = size() and right_cut = 0.
TrimResult trim(const BitString& x);

// True iff every window of length floor(zeta*size()) has weight within
// [gamma*L, (1-gamma)*L]. Requires zeta in (0,1), gamma in (0,1/2) and a
// non-degenerate window (floor(zeta*size()) >= 1); throws otherwise.
bool check_balance(const BitString& x, double zeta, double gamma);

std::size_t longest_zero_run(const BitString& x);
// Longest maximal zero run with ones on both sides (runs touching either
// end of the string are excluded).
std::size_t longest_internal_zero_run(const BitString& x);

}  // namespace repeatcode
