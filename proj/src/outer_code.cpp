#include "repeatcode/outer_code.hpp"

#include <stdexcept>

namespace repeatcode {

int OuterCodeParams::header_bits() const {
  int h = 0;
  while ((1 << h) < rs.n_rs) ++h;
  return h;
}

void OuterCodeParams::validate() const {
  rs.validate();
  if (rs.n_rs >= (1 << header_bits()))
    throw std::invalid_argument(
        "OuterCodeParams: n_rs must be below 2^header_bits so header 0 stays reserved");
}

std::vector<BitString> enc_outer(const OuterCodeParams& p, const BitString& data) {
  p.validate();
  if (static_cast<int>(data.size()) != p.data_bits())
    throw std::invalid_argument("enc_outer: data length != k_rs * q");

  std::vector<int> symbols(p.rs.k_rs);
  for (int i = 0; i < p.rs.k_rs; ++i)
    symbols[i] = static_cast<int>(data.slice(i * p.rs.q, (i + 1) * p.rs.q).to_uint());
  const std::vector<int> codeword = rs_encode(p.rs, symbols);

  const int h = p.header_bits();
  std::vector<BitString> out;
  out.reserve(p.rs.n_rs);
  for (int i = 0; i < p.rs.n_rs; ++i) {
    const std::uint64_t packed =
        (static_cast<std::uint64_t>(i + 1) << p.rs.q) | static_cast<std::uint64_t>(codeword[i]);
    out.push_back(BitString::from_uint(packed, h + p.rs.q));
  }
  return out;
}

OuterDecodeResult dec_outer(const OuterCodeParams& p, const std::vector<BitString>& received) {
  p.validate();
  const int sb = p.symbol_bits();

  constexpr int kEmpty = -2;
  constexpr int kPoisoned = -3;
  std::vector<int> slot(p.rs.n_rs, kEmpty);
  for (const BitString& sym : received) {
    if (static_cast<int>(sym.size()) != sb)
      throw std::invalid_argument("dec_outer: symbol has wrong bit length");
    const std::uint64_t packed = sym.to_uint();
    const int index = static_cast<int>(packed >> p.rs.q);
    if (index < 1 || index > p.rs.n_rs) continue;  // includes the reserved header 0
    const int value = static_cast<int>(packed & ((1u << p.rs.q) - 1));
    int& s = slot[index - 1];
    if (s == kPoisoned) continue;        // conflict already seen; stays erased
    if (s == kEmpty) s = value;
    else if (s != value) s = kPoisoned;  // conflicting duplicate
  }

  OuterDecodeResult res;
  std::vector<int> word(p.rs.n_rs);
  for (int i = 0; i < p.rs.n_rs; ++i) {
    if (slot[i] >= 0) {
      word[i] = slot[i];
    } else {
      word[i] = kErased;
      ++res.erasures;
    }
  }

  RsDecodeResult rs = rs_decode(p.rs, word);
  if (!rs.ok) return res;
  res.ok = true;
  res.errors_corrected = rs.errors_corrected;
  for (int i = 0; i < p.rs.k_rs; ++i)
    res.data.append(BitString::from_uint(static_cast<std::uint64_t>(rs.data[i]), p.rs.q));
  return res;
}

}  // namespace repeatcode
