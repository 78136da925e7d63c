#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repeatcode/bitstring.hpp"
#include "repeatcode/repeat_dist.hpp"
#include "repeatcode/rng.hpp"

namespace repeatcode {

// Finite-support distribution over output fragments for one input bit.
struct OutputDistribution {
  // Sorted by (length, bits) so that sampling and enumeration are
  // deterministic regardless of construction order.
  std::vector<std::pair<BitString, double>> entries;
  double expected_len = 0.0;
  double expected_weight = 0.0;
  int max_len = 0;

  const BitString& sample(Rng& rng) const;
};

OutputDistribution make_output_dist(std::vector<std::pair<std::string, double>> table);
// Fragment law of a repeat distribution for input bit `bit`: emits bit^r.
OutputDistribution repeat_output_dist(const RepeatDistribution& dist, bool bit);

enum class ChannelKind { repeat, trimming_repeat, dobrushin, trimming_dobrushin };

// A memoryless bit-to-fragment channel, optionally composed with trimming.
//  - repeat kinds: every input bit b is replaced by b^r, r ~ `repeat` i.i.d.
//  - dobrushin kinds: input 0 emits a fragment ~ d0, input 1 emits ~ d1.
//  - trimming_repeat removes leading/trailing zeros from the whole output.
//  - trimming_dobrushin removes t_l ~ trim_left bits from the front and
//    t_r ~ trim_right bits from the back (clampled to the output length).
struct ChannelModel {
  ChannelKind kind = ChannelKind::repeat;
  RepeatDistribution repeat;
  OutputDistribution d0, d1;
  RepeatDistribution trim_left, trim_right;  // trimming_dobrushin only

  // E[w(Y0)] / E|Y0|, recomputed from d0 (dobrushin kinds).
  double ones_fraction_f = 0.0;

  bool is_repeat_kind() const {
    return kind == ChannelKind::repeat || kind == ChannelKind::trimming_repeat;
  }
  bool is_trimming() const {
    return kind == ChannelKind::trimming_repeat || kind == ChannelKind::trimming_dobrushin;
  }
  // Expected output length per input bit.
  double mean_output_per_bit() const;
  // Biased: E|Y0| = E|Y1|, E[w(Y0)] < E|Y0|/2, E[w(Y1)] > E|Y1|/2.
  bool biased() const;
  // Count of per-bit fragment choices (enumeration branching factor).
  std::size_t support_size(bool bit) const;
};

ChannelModel make_repeat_channel(RepeatDistribution dist, bool trimming = false);
ChannelModel make_dobrushin_channel(OutputDistribution d0, OutputDistribution d1);
ChannelModel make_trimming_dobrushin_channel(OutputDistribution d0, OutputDistribution d1,
                                             RepeatDistribution tl, RepeatDistribution tr);
// repeat -> trimming_repeat; dobrushin -> trimming_dobrushin (trim laws
// required). Trimming kinds pass through unchanged.
ChannelModel trimming_version(const ChannelModel& model);
ChannelModel trimming_version(const ChannelModel& model, const RepeatDistribution& tl,
                              const RepeatDistribution& tr);
// The inverse direction: the law of the raw (untrimmed) transmission.
ChannelModel transmission_version(const ChannelModel& model);

// Ground-truth alignment recorded by the sampler for instrumented runs.
struct ChannelTrace {
  std::vector<std::uint32_t> out_len;  // pre-trim fragment length per input bit
  std::size_t trim_left = 0;           // bits actually cut from the front
  std::size_t trim_right = 0;          // bits actually cut from the back
};

// Samples the channel. Draw order is frozen: one fragment draw per input bit
// left to right, then (trimming_dobrushin) t_l, then t_r.
BitString apply(const ChannelModel& model, const BitString& x, std::uint64_t seed);
BitString apply_traced(const ChannelModel& model, const BitString& x, std::uint64_t seed,
                       ChannelTrace* trace);

}  // namespace repeatcode
