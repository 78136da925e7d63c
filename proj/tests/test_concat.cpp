#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "repeatcode/concat.hpp"
#include "repeatcode/errors.hpp"

using namespace repeatcode;

namespace {

// (7, k) outer core over GF(8): header 3 + payload 3 = 6 inner message bits.
ConcatParams identity_codec(int k_rs, std::uint64_t seed = 5) {
  const ChannelModel trc = make_repeat_channel(make_deletion(0.0), true);
  InnerSearchConfig cfg;
  cfg.msg_bits_m = 6;
  cfg.block_len = 12;
  cfg.num_candidates = 2;
  cfg.mc_trials = 20;
  cfg.max_internal_zero_run_excl = 3;  // matches the derived buffer threshold
  const InnerCode inner = search_inner_code(trc, cfg, seed);
  OuterCodeParams outer;
  outer.rs = RsParams{3, 7, k_rs, 0};
  return build_params(inner, outer, 0.5);
}

BitString draw_message(Rng& rng, const ConcatParams& p) {
  BitString b;
  for (int i = 0; i < p.outer.data_bits(); ++i) b.push_back(rng.next_bernoulli(0.5));
  return b;
}

// Identity trace: every transmitted bit arrives once, nothing trimmed.
ChannelTrace clean_trace(std::size_t n) {
  ChannelTrace t;
  t.out_len.assign(n, 1);
  return t;
}

// Rebuilds the received word a trace describes for a deletion/duplication
// pattern applied to `sent` (repeat channels only: bit i arrives out_len[i]
// times). Keeps y and the trace consistent by construction.
BitString replay(const BitString& sent, const ChannelTrace& t) {
  BitString y;
  for (std::size_t i = 0; i < sent.size(); ++i)
    y.append_run(sent.bit(i), t.out_len[i]);
  return y;
}

}  // namespace

TEST_CASE("build wiring and derived quantities") {
  const ConcatParams p = identity_codec(5);
  CHECK(p.buffer_len_b == 6);
  CHECK(p.k_prime == 7);
  CHECK(p.total_len_n == 7 * (12 + 6) - 6);
  CHECK(p.buffer_threshold == 3);
  CHECK(p.realized_rate() == doctest::Approx(15.0 / 120.0));
}

TEST_CASE("build rejects bad wiring") {
  const ChannelModel trc = make_repeat_channel(make_deletion(0.0), true);
  InnerSearchConfig cfg;
  cfg.msg_bits_m = 6;
  cfg.block_len = 12;
  cfg.num_candidates = 2;
  cfg.mc_trials = 20;
  cfg.max_internal_zero_run_excl = 3;
  const InnerCode inner = search_inner_code(trc, cfg, 5);

  OuterCodeParams outer;
  outer.rs = RsParams{3, 7, 5, 0};

  // Message width mismatch: 2^5 symbols cannot carry header+payload of 6.
  InnerCode narrow = inner;
  narrow.msg_bits_m = 5;
  narrow.codebook.resize(32);
  CHECK_THROWS_AS(build_params(narrow, outer, 0.5), config_error);

  CHECK_THROWS_AS(build_params(inner, outer, 0.0), config_error);
  CHECK_THROWS_AS(build_params(inner, outer, 1.0), config_error);
  CHECK_THROWS_AS(build_params(inner, outer, 0.01), config_error);  // b rounds to 0

  OuterCodeParams pow2;
  pow2.rs = RsParams{3, 8, 5, 0};  // 8 = 2^3 leaves no reserved header value
  CHECK_THROWS_AS(build_params(inner, pow2, 0.5), std::invalid_argument);

  // Dobrushin mode demands a fragment channel with bias and a margin.
  CHECK_THROWS_AS(build_params(inner, outer, 0.5, SegmentationMode::dobrushin, 0.5, 0.2),
                  config_error);
}

TEST_CASE("encoded layout: blocks joined by zero buffers") {
  const ConcatParams p = identity_codec(5);
  Rng rng(17);
  const BitString msg = draw_message(rng, p);
  const EncodedWord enc = concat_encode_traced(p, msg);
  REQUIRE(enc.word.size() == static_cast<std::size_t>(p.total_len_n));
  REQUIRE(enc.symbol_msgs.size() == 7);
  CHECK(concat_encode(p, msg) == enc.word);

  const std::vector<BitString> symbols = enc_outer(p.outer, msg);
  for (int j = 0; j < 7; ++j) {
    const std::size_t base = static_cast<std::size_t>(j) * 18;
    const BitString block = enc.word.slice(base, base + 12);
    CHECK(static_cast<int>(symbols[static_cast<std::size_t>(j)].to_uint()) ==
          enc.symbol_msgs[static_cast<std::size_t>(j)]);
    CHECK(block == enc_inner(p.inner, enc.symbol_msgs[static_cast<std::size_t>(j)]));
    if (j < 6)
      for (std::size_t i = base + 12; i < base + 18; ++i) CHECK_FALSE(enc.word.bit(i));
  }
  CHECK_THROWS_AS(concat_encode(p, BitString::zeros(7)), std::invalid_argument);
}

TEST_CASE("segmentation of a clean word recovers exactly the blocks") {
  const ConcatParams p = identity_codec(5);
  Rng rng(18);
  const EncodedWord enc = concat_encode_traced(p, draw_message(rng, p));
  const std::vector<SegmentSpan> spans = segment_spans(p, enc.word);
  REQUIRE(spans.size() == 7);
  for (int j = 0; j < 7; ++j) {
    CHECK(spans[static_cast<std::size_t>(j)].begin == static_cast<std::size_t>(j) * 18);
    CHECK(spans[static_cast<std::size_t>(j)].end == static_cast<std::size_t>(j) * 18 + 12);
  }
  const std::vector<BitString> segs = segment(p, enc.word);
  REQUIRE(segs.size() == 7);
  for (int j = 0; j < 7; ++j)
    CHECK(segs[static_cast<std::size_t>(j)] ==
          enc_inner(p.inner, enc.symbol_msgs[static_cast<std::size_t>(j)]));
}

TEST_CASE("identity round trip") {
  const ConcatParams p = identity_codec(5);
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const BitString msg = draw_message(rng, p);
    const ConcatDecodeResult r = concat_decode(p, concat_encode(p, msg));
    REQUIRE(r.ok);
    CHECK(r.message == msg);
    CHECK(r.segment_count == 7);
    CHECK(r.outer_erasures == 0);
    CHECK(r.outer_errors_corrected == 0);
  }
}

TEST_CASE("taxonomy of hand-injected channel events") {
  // Parity 3 here, so each single injection below stays within the decoding
  // budget and the final decode must still succeed.
  const ConcatParams p = identity_codec(4);
  Rng rng(20);
  const BitString msg = draw_message(rng, p);
  const EncodedWord enc = concat_encode_traced(p, msg);
  const std::size_t stride = 18;

  SUBCASE("clean pass counts nothing") {
    const ChannelTrace t = clean_trace(enc.word.size());
    const ErrorTaxonomy tax = classify_errors(p, enc.symbol_msgs, t, replay(enc.word, t));
    CHECK(tax.type1_buffer_lost == 0);
    CHECK(tax.type2_codeword_vanished == 0);
    CHECK(tax.type3_spurious_buffer == 0);
    CHECK(tax.type4_inner_decode_fail == 0);
    CHECK(tax.weighted_edit_distance == 0);
  }

  SUBCASE("deleted buffer merges neighbors") {
    ChannelTrace t = clean_trace(enc.word.size());
    for (std::size_t i = 2 * stride + 12; i < 3 * stride; ++i) t.out_len[i] = 0;
    const BitString y = replay(enc.word, t);
    const ErrorTaxonomy tax = classify_errors(p, enc.symbol_msgs, t, y);
    CHECK(tax.type1_buffer_lost == 1);
    CHECK(tax.type2_codeword_vanished == 0);
    CHECK(tax.type3_spurious_buffer == 0);
    CHECK(tax.weighted_edit_distance == 3);
    const ConcatDecodeResult r = concat_decode(p, y);
    REQUIRE(r.ok);
    CHECK(r.message == msg);
  }

  SUBCASE("deleted codeword leaves an empty slot") {
    ChannelTrace t = clean_trace(enc.word.size());
    for (std::size_t i = 3 * stride; i < 3 * stride + 12; ++i) t.out_len[i] = 0;
    const BitString y = replay(enc.word, t);
    const ErrorTaxonomy tax = classify_errors(p, enc.symbol_msgs, t, y);
    CHECK(tax.type2_codeword_vanished == 1);
    CHECK(tax.type1_buffer_lost == 0);
    CHECK(tax.weighted_edit_distance == 1);
    const ConcatDecodeResult r = concat_decode(p, y);
    REQUIRE(r.ok);
    CHECK(r.message == msg);
    CHECK(r.outer_erasures == 1);
  }

  SUBCASE("stretched zero run splits a codeword") {
    ChannelTrace t = clean_trace(enc.word.size());
    // Find an internal zero inside block 1 and replicate it enough to reach
    // the buffer threshold.
    std::size_t pos = stride;
    while (enc.word.bit(pos)) ++pos;
    REQUIRE(pos < stride + 12);
    t.out_len[pos] = 1 + 3;
    const BitString y = replay(enc.word, t);
    const ErrorTaxonomy tax = classify_errors(p, enc.symbol_msgs, t, y);
    CHECK(tax.type3_spurious_buffer == 1);
    CHECK(tax.type1_buffer_lost == 0);
    CHECK(tax.type2_codeword_vanished == 0);
    CHECK(tax.weighted_edit_distance == 3);
    const ConcatDecodeResult r = concat_decode(p, y);
    REQUIRE(r.ok);
    CHECK(r.message == msg);
  }

  SUBCASE("clean segment decoding to the wrong message") {
    const ChannelTrace t = clean_trace(enc.word.size());
    BitString y = replay(enc.word, t);
    // Replace block 5 with a different codeword, bit by bit.
    const int wrong = (enc.symbol_msgs[5] + 1) % p.inner.size();
    const BitString& w = enc_inner(p.inner, wrong);
    BitString patched;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const std::size_t base = 5 * stride;
      patched.push_back(i >= base && i < base + 12 ? w.bit(i - base) : y.bit(i));
    }
    const ErrorTaxonomy tax = classify_errors(p, enc.symbol_msgs, t, patched);
    CHECK(tax.type4_inner_decode_fail == 1);
    CHECK(tax.weighted_edit_distance == 2);
    const ConcatDecodeResult r = concat_decode(p, patched);
    REQUIRE(r.ok);
    CHECK(r.message == msg);
  }

  SUBCASE("classification validates its inputs") {
    ChannelTrace t = clean_trace(enc.word.size() - 1);
    CHECK_THROWS_AS(classify_errors(p, enc.symbol_msgs, t, enc.word),
                    std::invalid_argument);
    const ChannelTrace ok = clean_trace(enc.word.size());
    std::vector<int> short_msgs(enc.symbol_msgs.begin(), enc.symbol_msgs.end() - 1);
    CHECK_THROWS_AS(classify_errors(p, short_msgs, ok, enc.word), std::invalid_argument);
  }
}

TEST_CASE("density segmentation on crafted strings") {
  // Identity fragment channel: 0 -> "0", 1 -> "1", f = 0.
  const OutputDistribution d0 = make_output_dist({{"0", 1.0}});
  const OutputDistribution d1 = make_output_dist({{"1", 1.0}});
  const ChannelModel dc = make_dobrushin_channel(d0, d1);
  const RepeatDistribution law = make_repeat_table({{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}});
  const ChannelModel tdc = trimming_version(dc, law, law);

  InnerSearchConfig cfg;
  cfg.msg_bits_m = 6;
  cfg.block_len = 12;
  cfg.num_candidates = 4;
  cfg.mc_trials = 60;
  cfg.max_internal_zero_run_excl = 3;
  const InnerCode inner = search_inner_code(tdc, cfg, 55);
  OuterCodeParams outer;
  outer.rs = RsParams{3, 7, 4, 0};
  // eta 0.5, nu 0.5 -> window 3; kappa 0.25 -> threshold 0.25.
  const ConcatParams p =
      build_params(inner, outer, 0.5, SegmentationMode::dobrushin, 0.5, 0.25);
  CHECK(p.window_len == 3);
  CHECK(p.density_threshold == doctest::Approx(0.25));

  // Entry at the first all-zero window, exit swallows through the last bit
  // of the first window that clears the threshold.
  const std::vector<SegmentSpan> spans =
      segment_spans(p, BitString::from_string("111000000111"));
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].begin == 0);
  CHECK(spans[0].end == 3);
  CHECK(spans[1].begin == 10);
  CHECK(spans[1].end == 12);

  // Inputs shorter than one window form a single segment.
  const std::vector<SegmentSpan> tiny = segment_spans(p, BitString::from_string("11"));
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].begin == 0);
  CHECK(tiny[0].end == 2);

  // A word that ends inside a buffer has no tail segment.
  const std::vector<SegmentSpan> tailless =
      segment_spans(p, BitString::from_string("11100000"));
  REQUIRE(tailless.size() == 1);
  CHECK(tailless[0].begin == 0);
  CHECK(tailless[0].end == 3);

  // End-to-end through the identity fragment channel.
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    BitString msg;
    for (int i = 0; i < p.outer.data_bits(); ++i) msg.push_back(rng.next_bernoulli(0.5));
    const ConcatDecodeResult r = concat_decode(p, concat_encode(p, msg));
    REQUIRE(r.ok);
    CHECK(r.message == msg);
  }
}
