#pragma once

#include <vector>

#include "repeatcode/bitstring.hpp"
#include "repeatcode/reed_solomon.hpp"

namespace repeatcode {

// Index-headed symbols over an RS core. Each transmitted symbol carries its
// own position, so the decoder never needs positional bookkeeping: symbols
// may arrive permuted, duplicated, or missing.
struct OuterCodeParams {
  RsParams rs;

  int header_bits() const;               // h = ceil(log2(n_rs))
  int symbol_bits() const { return header_bits() + rs.q; }
  int data_bits() const { return rs.k_rs * rs.q; }
  // Header value 0 is reserved as "no information" (an uninformative inner
  // decode yields message 0, which must drop instead of landing in a slot),
  // so n_rs must leave value 0 unused: n_rs < 2^h.
  void validate() const;
};

struct OuterDecodeResult {
  bool ok = false;
  BitString data;        // k_rs * q bits when ok
  int erasures = 0;      // empty or conflicted slots
  int errors_corrected = 0;
};

// data -> n_rs symbols, each h index bits (values 1..n_rs, big-endian)
// followed by q payload bits.
std::vector<BitString> enc_outer(const OuterCodeParams& p, const BitString& data);

// Slot received symbols by header: out-of-range headers drop; conflicting
// duplicates poison the slot (sticky erasure); equal duplicates keep. Then
// RS error/erasure decode. Symbols of the wrong bit length are the caller's
// problem and rejected here.
OuterDecodeResult dec_outer(const OuterCodeParams& p, const std::vector<BitString>& received);

}  // namespace repeatcode
