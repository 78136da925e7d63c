#pragma once

#include <cstddef>
#include <vector>

#include "repeatcode/bitstring.hpp"
#include "repeatcode/channel.hpp"
#include "repeatcode/inner_code.hpp"
#include "repeatcode/outer_code.hpp"

namespace repeatcode {

enum class SegmentationMode { repeat, dobrushin };

// Outer code -> inner code -> zero buffers. Decoding segments the received
// word at buffer evidence, ML-decodes each segment, and lets symbol headers
// rebuild positions before RS error/erasure decoding.
struct ConcatParams {
  InnerCode inner;
  OuterCodeParams outer;
  SegmentationMode mode = SegmentationMode::repeat;
  double eta = 0.25;
  double nu = 0.0;     // dobrushin mode: window fraction
  double kappa = 0.0;  // dobrushin mode: density margin over f

  // Derived at build time.
  int buffer_len_b = 0;
  int k_prime = 0;            // number of inner blocks = outer.n_rs
  long long total_len_n = 0;  // k'*(block_len + b) - b
  int buffer_threshold = 0;   // repeat mode: min zero-run length of a buffer
  int window_len = 0;         // dobrushin mode
  double density_threshold = 0.0;  // dobrushin mode: f + kappa

  double realized_rate() const {
    return static_cast<double>(outer.data_bits()) / static_cast<double>(total_len_n);
  }
};

// Validates wiring (inner message bits == outer symbol bits), mode-specific
// parameters, and in repeat mode scans the codebook so that segmentation of a
// clean encoded word returns exactly the inner codewords (words start/end
// with 1 and contain no internal zero run reaching buffer_threshold).
// Throws config_error.
ConcatParams build_params(InnerCode inner, OuterCodeParams outer, double eta,
                          SegmentationMode mode = SegmentationMode::repeat, double nu = 0.0,
                          double kappa = 0.0);

struct EncodedWord {
  BitString word;                // total_len_n bits
  std::vector<int> symbol_msgs;  // true inner message per block, size k'
};

EncodedWord concat_encode_traced(const ConcatParams& p, const BitString& message);
BitString concat_encode(const ConcatParams& p, const BitString& message);

struct SegmentSpan {
  std::size_t begin = 0, end = 0;  // half-open, in received-word coordinates
};

// Repeat mode: maximal zero runs of length >= buffer_threshold are buffers;
// what lies between consecutive buffers (and before the first / after the
// last) is a segment; empty pieces are dropped. Dobrushin mode: a sliding
// ones-density window enters buffer state when density < density_threshold;
// the buffer spans from the first bit of the entering window through the
// last bit of the leaving window.
std::vector<SegmentSpan> segment_spans(const ConcatParams& p, const BitString& y);
std::vector<BitString> segment(const ConcatParams& p, const BitString& y);

struct ConcatDecodeResult {
  bool ok = false;
  BitString message;  // outer data bits when ok
  int segment_count = 0;
  int outer_erasures = 0;
  int outer_errors_corrected = 0;
};

ConcatDecodeResult concat_decode(const ConcatParams& p, const BitString& y);

// Decoding-failure sources, counted against ground-truth channel alignment.
struct ErrorTaxonomy {
  int type1_buffer_lost = 0;         // adjacent blocks merged into one segment
  int type2_codeword_vanished = 0;   // block overlapped by no segment
  int type3_spurious_buffer = 0;     // extra segments: splits and pure noise
  int type4_inner_decode_fail = 0;   // clean 1:1 segment decoded to wrong msg
  int weighted_edit_distance = 0;    // 3*t1 + t2 + 3*t3 + 2*t4

  int weighted() const {
    return 3 * type1_buffer_lost + type2_codeword_vanished + 3 * type3_spurious_buffer +
           2 * type4_inner_decode_fail;
  }
};

// Instrumented classification: `true_msgs` from concat_encode_traced, `trace`
// from apply_traced on the transmission channel, `y` the received word.
ErrorTaxonomy classify_errors(const ConcatParams& p, const std::vector<int>& true_msgs,
                              const ChannelTrace& trace, const BitString& y);

}  // namespace repeatcode
