#include "repeatcode/concat.hpp"

#include <cmath>
#include <stdexcept>

#include "repeatcode/errors.hpp"

namespace repeatcode {

namespace {

std::vector<SegmentSpan> spans_repeat(const ConcatParams& p, const BitString& y) {
  std::vector<SegmentSpan> out;
  const std::size_t n = y.size();
  const std::size_t thr = static_cast<std::size_t>(p.buffer_threshold);
  std::size_t seg_start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (y.bit(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !y.bit(j)) ++j;
    if (j - i >= thr) {  // qualifying zero run = buffer
      if (i > seg_start) out.push_back({seg_start, i});
      seg_start = j;
    }
    i = j;
  }
  if (n > seg_start) out.push_back({seg_start, n});
  return out;
}

std::vector<SegmentSpan> spans_dobrushin(const ConcatParams& p, const BitString& y) {
  std::vector<SegmentSpan> out;
  const std::size_t n = y.size();
  const std::size_t w = static_cast<std::size_t>(p.window_len);
  if (n < w) {
    if (n > 0) out.push_back({0, n});
    return out;
  }
  std::size_t seg_start = 0;
  bool in_buffer = false;
  std::size_t ones = y.weight_range(0, w);
  for (std::size_t t = 0;; ++t) {
    const double frac = static_cast<double>(ones) / static_cast<double>(w);
    if (!in_buffer && frac < p.density_threshold) {
      in_buffer = true;
      if (t > seg_start) out.push_back({seg_start, t});  // buffer starts at t
    } else if (in_buffer && frac >= p.density_threshold) {
      in_buffer = false;
      // buffer runs through the last bit of the window that triggered exit
      seg_start = std::max(seg_start, t + w);
    }
    if (t + w >= n) break;
    ones -= y.bit(t) ? 1 : 0;
    ones += y.bit(t + w) ? 1 : 0;
  }
  if (!in_buffer && n > seg_start) out.push_back({seg_start, n});
  return out;
}

}  // namespace

ConcatParams build_params(InnerCode inner, OuterCodeParams outer, double eta,
                          SegmentationMode mode, double nu, double kappa) {
  inner.validate();
  outer.validate();
  if (inner.msg_bits_m != outer.symbol_bits())
    throw config_error("concat: inner message bits must equal outer symbol bits");
  if (!(eta > 0.0 && eta < 1.0)) throw config_error("concat: eta must be in (0, 1)");

  ConcatParams p;
  p.inner = std::move(inner);
  p.outer = outer;
  p.mode = mode;
  p.eta = eta;
  p.nu = nu;
  p.kappa = kappa;
  p.buffer_len_b = static_cast<int>(std::lround(eta * p.inner.block_len));
  if (p.buffer_len_b < 1) throw config_error("concat: buffer length rounds to zero");
  p.k_prime = outer.rs.n_rs;
  p.total_len_n = static_cast<long long>(p.k_prime) *
                      (p.inner.block_len + p.buffer_len_b) -
                  p.buffer_len_b;

  if (mode == SegmentationMode::repeat) {
    if (!p.inner.model.is_repeat_kind())
      throw config_error("concat: repeat segmentation needs a repeat-kind inner model");
    const double mu = p.inner.model.repeat.mean;
    p.buffer_threshold =
        static_cast<int>(std::floor(0.5 * mu * eta * p.inner.block_len));
    if (p.buffer_threshold < 1)
      throw config_error("concat: buffer threshold must be at least 1");
    // A clean codeword must never contain buffer evidence, or segmentation
    // would split it even without noise.
    for (const BitString& w : p.inner.codebook) {
      if (w.bit(0) != 1 || w.bit(w.size() - 1) != 1)
        throw config_error("concat: codewords must start and end with 1");
      if (longest_internal_zero_run(w) >= static_cast<std::size_t>(p.buffer_threshold))
        throw config_error("concat: codeword contains a zero run reaching the buffer threshold");
    }
  } else {
    if (p.inner.model.is_repeat_kind())
      throw config_error("concat: dobrushin segmentation needs a dobrushin-kind inner model");
    if (!p.inner.model.biased())
      throw config_error("concat: dobrushin segmentation needs a biased model");
    const double f = p.inner.model.ones_fraction_f;
    if (!(kappa > 0.0 && kappa < 0.5 - f))
      throw config_error("concat: kappa must be in (0, 1/2 - f)");
    if (!(nu > 0.0)) throw config_error("concat: nu must be positive");
    p.window_len = static_cast<int>(std::lround(nu * eta * p.inner.block_len));
    if (p.window_len < 1) throw config_error("concat: window length rounds to zero");
    p.density_threshold = f + kappa;
  }
  return p;
}

EncodedWord concat_encode_traced(const ConcatParams& p, const BitString& message) {
  const std::vector<BitString> symbols = enc_outer(p.outer, message);
  EncodedWord enc;
  enc.symbol_msgs.reserve(symbols.size());
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    if (j > 0) enc.word.append_run(0, p.buffer_len_b);
    const int msg = static_cast<int>(symbols[j].to_uint());
    enc.symbol_msgs.push_back(msg);
    enc.word.append(enc_inner(p.inner, msg));
  }
  return enc;
}

BitString concat_encode(const ConcatParams& p, const BitString& message) {
  return concat_encode_traced(p, message).word;
}

std::vector<SegmentSpan> segment_spans(const ConcatParams& p, const BitString& y) {
  return p.mode == SegmentationMode::repeat ? spans_repeat(p, y) : spans_dobrushin(p, y);
}

std::vector<BitString> segment(const ConcatParams& p, const BitString& y) {
  std::vector<BitString> out;
  for (const SegmentSpan& s : segment_spans(p, y)) out.push_back(y.slice(s.begin, s.end));
  return out;
}

ConcatDecodeResult concat_decode(const ConcatParams& p, const BitString& y) {
  ConcatDecodeResult res;
  std::vector<BitString> received;
  for (const BitString& seg : segment(p, y)) {
    const InnerDecodeResult r = dec_inner_ml(p.inner, seg);
    // Uninformative decodes yield message 0, whose header 0 is reserved and
    // drops at the outer layer.
    received.push_back(
        BitString::from_uint(static_cast<std::uint64_t>(r.msg), p.inner.msg_bits_m));
  }
  res.segment_count = static_cast<int>(received.size());
  const OuterDecodeResult outer = dec_outer(p.outer, received);
  res.ok = outer.ok;
  res.message = outer.data;
  res.outer_erasures = outer.erasures;
  res.outer_errors_corrected = outer.errors_corrected;
  return res;
}

ErrorTaxonomy classify_errors(const ConcatParams& p, const std::vector<int>& true_msgs,
                              const ChannelTrace& trace, const BitString& y) {
  if (static_cast<int>(true_msgs.size()) != p.k_prime)
    throw std::invalid_argument("classify_errors: true_msgs size != k_prime");
  if (trace.out_len.size() != static_cast<std::size_t>(p.total_len_n))
    throw std::invalid_argument("classify_errors: trace does not match total length");

  // Output span of each transmitted block, via per-input-bit output lengths.
  std::vector<std::size_t> cum(trace.out_len.size() + 1, 0);
  for (std::size_t i = 0; i < trace.out_len.size(); ++i) cum[i + 1] = cum[i] + trace.out_len[i];
  const int stride = p.inner.block_len + p.buffer_len_b;
  std::vector<std::pair<std::size_t, std::size_t>> block_span(p.k_prime);
  for (int j = 0; j < p.k_prime; ++j) {
    const std::size_t in_lo = static_cast<std::size_t>(j) * stride;
    block_span[j] = {cum[in_lo], cum[in_lo + p.inner.block_len]};
  }

  const std::vector<SegmentSpan> segs = segment_spans(p, y);
  std::vector<std::vector<int>> segs_of_block(p.k_prime);
  std::vector<std::vector<int>> blocks_of_seg(segs.size());
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (int j = 0; j < p.k_prime; ++j) {
      const auto [lo, hi] = block_span[j];
      if (segs[s].begin < hi && lo < segs[s].end) {  // nonempty overlap
        segs_of_block[j].push_back(static_cast<int>(s));
        blocks_of_seg[s].push_back(j);
      }
    }
  }

  ErrorTaxonomy tax;
  for (int j = 0; j + 1 < p.k_prime; ++j) {
    bool merged = false;
    for (int s : segs_of_block[j])
      for (int s2 : segs_of_block[j + 1])
        if (s == s2) merged = true;
    if (merged) ++tax.type1_buffer_lost;
  }
  for (int j = 0; j < p.k_prime; ++j) {
    if (segs_of_block[j].empty()) {
      ++tax.type2_codeword_vanished;
    } else if (segs_of_block[j].size() > 1) {
      tax.type3_spurious_buffer += static_cast<int>(segs_of_block[j].size()) - 1;
    }
  }
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (blocks_of_seg[s].empty()) {
      ++tax.type3_spurious_buffer;  // pure-noise segment
      continue;
    }
    if (blocks_of_seg[s].size() != 1) continue;
    const int j = blocks_of_seg[s][0];
    if (segs_of_block[j].size() != 1) continue;
    const InnerDecodeResult r = dec_inner_ml(p.inner, y.slice(segs[s].begin, segs[s].end));
    if (r.uninformative || r.msg != true_msgs[j]) ++tax.type4_inner_decode_fail;
  }
  tax.weighted_edit_distance = tax.weighted();
  return tax;
}

}  // namespace repeatcode
