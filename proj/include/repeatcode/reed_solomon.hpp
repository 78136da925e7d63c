#pragma once

#include <cstdint>
#include <vector>

#include "repeatcode/gf2m.hpp"

namespace repeatcode {

// Erasure marker for rs_decode inputs.
inline constexpr int kErased = -1;

struct RsParams {
  int q = 4;                    // symbols live in GF(2^q)
  int n_rs = 15;                // block length, <= 2^q - 1 (shortened below that)
  int k_rs = 11;                // data symbols
  std::uint32_t field_poly = 0; // field modulus bitmask; 0 selects the default

  int parity() const { return n_rs - k_rs; }
  void validate() const;  // throws std::invalid_argument
};

struct RsDecodeResult {
  bool ok = false;              // accepted; rs_decode additionally verified it
  std::vector<int> data;        // k_rs data symbols, filled when ok
  std::vector<int> corrected;   // full corrected word, filled when ok
  int errors_corrected = 0;     // corrections applied at non-erased positions
  int erasure_count = 0;
};

// Systematic encoder: output[0..k) = data, output[k..n) = parity from
// division by the generator with roots alpha^1..alpha^(n-k). out[i] is the
// x^(n-1-i) coefficient of the codeword polynomial.
std::vector<int> rs_encode(const RsParams& p, const std::vector<int>& data);

// Error-and-erasure decoder (Forney syndromes + Berlekamp-Massey + Chien +
// Forney). received[i] is a symbol value or kErased. The result is verified:
// the corrected word must re-encode to itself and the correction budget
// 2e + s <= n_rs - k_rs must hold, otherwise ok = false.
RsDecodeResult rs_decode(const RsParams& p, const std::vector<int>& received);

// Same algebra, no verification: trusts whatever the locator/evaluator
// arithmetic produces. Exists so tests can measure what verification adds;
// never use it as a production decoder.
RsDecodeResult rs_decode_raw(const RsParams& p, const std::vector<int>& received);

}  // namespace repeatcode
