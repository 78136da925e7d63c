#include "repeatcode/bitstring.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace repeatcode {

namespace {
inline std::size_t words_for(std::size_t bits) { return (bits + 63) >> 6; }
}  // namespace

BitString BitString::zeros(std::size_t n) {
  BitString b;
  b.len_ = n;
  b.words_.assign(words_for(n), 0);
  return b;
}

BitString BitString::ones(std::size_t n) {
  BitString b = zeros(n);
  for (std::size_t w = 0; w < b.words_.size(); ++w) b.words_[w] = ~0ull;
  if (n & 63) b.words_.back() &= (1ull << (n & 63)) - 1;
  return b;
}

BitString BitString::from_string(std::string_view s) {
  BitString b = zeros(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.words_[i >> 6] |= 1ull << (i & 63);
    else if (s[i] != '0')
      throw std::invalid_argument("BitString::from_string: invalid character");
  }
  return b;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw std::invalid_argument("BitString::from_uint: width > 64");
  if (width < 64 && (value >> width) != 0)
    throw std::invalid_argument("BitString::from_uint: value does not fit width");
  BitString b = zeros(width);
  for (std::size_t i = 0; i < width; ++i)
    if ((value >> (width - 1 - i)) & 1) b.words_[i >> 6] |= 1ull << (i & 63);
  return b;
}

void BitString::push_back(bool b) {
  if ((len_ & 63) == 0) words_.push_back(0);
  if (b) words_[len_ >> 6] |= 1ull << (len_ & 63);
  ++len_;
}

void BitString::append(const BitString& other) {
  if (other.len_ == 0) return;
  const std::size_t shift = len_ & 63;
  const std::size_t new_len = len_ + other.len_;
  words_.resize(words_for(new_len), 0);
  if (shift == 0) {
    for (std::size_t w = 0; w < other.words_.size(); ++w)
      words_[(len_ >> 6) + w] = other.words_[w];
  } else {
    std::size_t w0 = len_ >> 6;
    for (std::size_t w = 0; w < other.words_.size(); ++w) {
      words_[w0 + w] |= other.words_[w] << shift;
      if (w0 + w + 1 < words_.size())
        words_[w0 + w + 1] |= other.words_[w] >> (64 - shift);
    }
  }
  len_ = new_len;
  if (len_ & 63) words_.back() &= (1ull << (len_ & 63)) - 1;
}

void BitString::append_run(bool b, std::size_t count) {
  if (count == 0) return;
  const std::size_t new_len = len_ + count;
  words_.resize(words_for(new_len), 0);
  if (b) {
    for (std::size_t i = len_; i < new_len; ++i) words_[i >> 6] |= 1ull << (i & 63);
  }
  len_ = new_len;
}

std::size_t BitString::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::size_t BitString::weight_range(std::size_t lo, std::size_t hi) const {
  if (lo >= hi) return 0;
  std::size_t w = 0;
  std::size_t first = lo >> 6, last = (hi - 1) >> 6;
  for (std::size_t k = first; k <= last; ++k) {
    std::uint64_t word = words_[k];
    if (k == first && (lo & 63)) word &= ~0ull << (lo & 63);
    if (k == last && (hi & 63)) word &= (1ull << (hi & 63)) - 1;
    w += static_cast<std::size_t>(std::popcount(word));
  }
  return w;
}

BitString BitString::slice(std::size_t lo, std::size_t hi) const {
  if (hi > len_ || lo > hi) throw std::invalid_argument("BitString::slice: bad range");
  BitString out = zeros(hi - lo);
  for (std::size_t i = lo; i < hi; ++i)
    if (bit(i)) out.words_[(i - lo) >> 6] |= 1ull << ((i - lo) & 63);
  return out;
}

BitString BitString::substring(std::size_t i, std::size_t j) const {
  if (i < 1 || j > len_) throw std::invalid_argument("BitString::substring: out of range");
  if (i > j) return BitString();
  return slice(i - 1, j);
}

std::uint64_t BitString::window_u64(std::size_t pos, std::size_t len) const {
  if (len > 64 || pos + len > len_)
    throw std::invalid_argument("BitString::window_u64: bad range");
  if (len == 0) return 0;
  const std::size_t w = pos >> 6, off = pos & 63;
  std::uint64_t v = words_[w] >> off;
  if (off != 0 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
  if (len < 64) v &= (1ull << len) - 1;
  return v;
}

std::uint64_t BitString::to_uint() const {
  if (len_ > 64) throw std::invalid_argument("BitString::to_uint: too long");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < len_; ++i) v = (v << 1) | (bit(i) ? 1u : 0u);
  return v;
}

std::size_t BitString::find_first_one() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != 0) {
      std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
      return i < len_ ? i : len_;
    }
  return len_;
}

std::size_t BitString::find_last_one() const {
  for (std::size_t w = words_.size(); w-- > 0;)
    if (words_[w] != 0)
      return (w << 6) + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
  return len_;
}

std::vector<std::uint8_t> BitString::unpack() const {
  std::vector<std::uint8_t> out(len_);
  for (std::size_t i = 0; i < len_; ++i) out[i] = bit(i) ? 1 : 0;
  return out;
}

std::string BitString::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

bool BitString::operator==(const BitString& o) const {
  return len_ == o.len_ && words_ == o.words_;
}

bool BitString::operator<(const BitString& o) const {
  if (len_ != o.len_) return len_ < o.len_;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] != o.words_[w]) return words_[w] < o.words_[w];
  return false;
}

std::size_t BitString::Hash::operator()(const BitString& b) const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ b.len_;
  for (std::uint64_t w : b.words_) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

TrimResult trim(const BitString& x) {
  TrimResult r;
  std::size_t first = x.find_first_one();
  if (first == x.size()) {
    r.left_cut = x.size();
    r.right_cut = 0;
    return r;
  }
  std::size_t last = x.find_last_one();
  r.left_cut = first;
  r.right_cut = x.size() - 1 - last;
  r.trimmed = x.slice(first, last + 1);
  return r;
}

bool check_balance(const BitString& x, double zeta, double gamma) {
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::invalid_argument("check_balance: zeta must be in (0,1)");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("check_balance: gamma must be in (0,1/2)");
  const std::size_t l = static_cast<std::size_t>(std::floor(zeta * static_cast<double>(x.size())));
  if (l < 1) throw std::invalid_argument("check_balance: window length is zero");
  const double lo = gamma * static_cast<double>(l);
  const double hi = (1.0 - gamma) * static_cast<double>(l);
  std::size_t w = x.weight_range(0, l);
  for (std::size_t i = 0;; ++i) {
    const double dw = static_cast<double>(w);
    if (dw < lo || dw > hi) return false;
    if (i + l >= x.size()) break;
    w += x.bit(i + l) ? 1 : 0;
    w -= x.bit(i) ? 1 : 0;
  }
  return true;
}

std::size_t longest_zero_run(const BitString& x) {
  std::size_t best = 0, cur = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.bit(i)) {
      cur = 0;
    } else {
      ++cur;
      if (cur > best) best = cur;
    }
  }
  return best;
}

std::size_t longest_internal_zero_run(const BitString& x) {
  std::size_t first = x.find_first_one();
  if (first == x.size()) return 0;
  std::size_t last = x.find_last_one();
  std::size_t best = 0, cur = 0;
  for (std::size_t i = first; i <= last; ++i) {
    if (x.bit(i)) {
      cur = 0;
    } else {
      ++cur;
      if (cur > best) best = cur;
    }
  }
  return best;
}

}  // namespace repeatcode
