#pragma once

#include <cstdint>
#include <vector>

#include "repeatcode/bitstring.hpp"
#include "repeatcode/channel.hpp"
#include "repeatcode/rng.hpp"

namespace repeatcode {

// A small block code decoded by exhaustive maximum likelihood against a
// trimming channel law. Codebooks come from randomized search over balanced
// words; soundness is certified empirically, not proved.
struct InnerCode {
  int msg_bits_m = 0;
  int block_len = 0;
  double zeta = 0.0;
  double gamma = 0.0;
  std::vector<BitString> codebook;  // 2^msg_bits_m words, index = message value
  ChannelModel model;               // trimming law the code decodes against
  double est_failure_prob = 0.0;
  double est_failure_stderr = 0.0;
  std::uint64_t search_seed = 0;

  int size() const { return 1 << msg_bits_m; }
  // Distinctness, uniform length, balance of every word. Throws on violation.
  void validate() const;
};

struct InnerSearchConfig {
  int msg_bits_m = 4;
  int block_len = 16;
  double zeta = 0.25;
  double gamma = 0.25;
  int num_candidates = 16;
  int mc_trials = 400;
  // Codeword screens beyond balance: words start and end with 1, and internal
  // zero runs must be strictly shorter than this (<= 0 disables the screen).
  // Callers building concatenated codes pass their buffer threshold here so a
  // clean codeword can never be split by segmentation.
  int max_internal_zero_run_excl = 0;
};

struct InnerDecodeResult {
  int msg = 0;
  double log2_likelihood = 0.0;  // of the winner
  double second_best_gap = 0.0;  // +inf when only one codeword has support
  bool uninformative = false;    // every codeword had zero likelihood
};

struct FailureEstimate {
  double p_hat = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
};

// Samples random codebooks of distinct screened words, scores each candidate
// by Monte Carlo block failure under ML decoding (common random numbers
// across candidates), returns the best. The model must be a trimming law.
// Throws config_error if the screens are infeasible (10^6 consecutive
// rejections) and resource_error if 2^m exceeds the row budget.
InnerCode search_inner_code(const ChannelModel& model, const InnerSearchConfig& cfg,
                            std::uint64_t seed);

const BitString& enc_inner(const InnerCode& code, int msg);

// Exhaustive ML decode; ties broken by smallest message index. Any y is
// admissible, including the empty string.
InnerDecodeResult dec_inner_ml(const InnerCode& code, const BitString& y);

// Fresh-seed empirical block failure rate of the code under its own model.
FailureEstimate estimate_failure(const InnerCode& code, int trials, std::uint64_t seed);

}  // namespace repeatcode
