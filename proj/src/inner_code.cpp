#include "repeatcode/inner_code.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "repeatcode/errors.hpp"
#include "repeatcode/likelihood.hpp"

namespace repeatcode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxRejections = 1000000;

bool passes_screens(const BitString& w, const InnerSearchConfig& cfg) {
  if (w.bit(0) != 1 || w.bit(w.size() - 1) != 1) return false;
  if (cfg.max_internal_zero_run_excl > 0 &&
      longest_internal_zero_run(w) >=
          static_cast<std::size_t>(cfg.max_internal_zero_run_excl))
    return false;
  return check_balance(w, cfg.zeta, cfg.gamma);
}

BitString random_word(Rng& rng, int len) {
  BitString w;
  for (int i = 0; i < len; ++i) w.push_back(rng.next_bernoulli(0.5));
  return w;
}

// One screened word, or throws config_error after kMaxRejections misses.
BitString draw_screened(Rng& rng, const InnerSearchConfig& cfg) {
  for (int miss = 0; miss < kMaxRejections; ++miss) {
    BitString w = random_word(rng, cfg.block_len);
    if (passes_screens(w, cfg)) return w;
  }
  throw config_error("inner search: balance/screen parameters look infeasible");
}

}  // namespace

void InnerCode::validate() const {
  if (msg_bits_m < 1 || msg_bits_m > 20)
    throw std::invalid_argument("InnerCode: msg_bits_m out of range");
  if (static_cast<int>(codebook.size()) != size())
    throw std::invalid_argument("InnerCode: codebook size != 2^msg_bits_m");
  std::set<BitString> seen;
  for (const BitString& w : codebook) {
    if (static_cast<int>(w.size()) != block_len)
      throw std::invalid_argument("InnerCode: codeword length != block_len");
    if (!check_balance(w, zeta, gamma))
      throw std::invalid_argument("InnerCode: unbalanced codeword");
    if (!seen.insert(w).second)
      throw std::invalid_argument("InnerCode: duplicate codeword");
  }
}

InnerCode search_inner_code(const ChannelModel& model, const InnerSearchConfig& cfg,
                            std::uint64_t seed) {
  if (!model.is_trimming())
    throw config_error("inner search: decoding law must be a trimming channel");
  if (cfg.msg_bits_m < 1 || cfg.msg_bits_m > 14)
    throw config_error("inner search: msg_bits_m out of supported range [1, 14]");
  if (cfg.block_len < cfg.msg_bits_m || cfg.block_len > 64)
    throw config_error("inner search: block_len must be in [msg_bits_m, 64]");
  if (cfg.num_candidates < 1 || cfg.mc_trials < 1)
    throw config_error("inner search: need at least one candidate and one trial");

  const int book = 1 << cfg.msg_bits_m;
  Rng rng(split_seed(seed, kStreamInnerSearch));

  // Candidate codebooks of distinct screened words.
  std::vector<std::vector<BitString>> candidates(cfg.num_candidates);
  for (auto& cand : candidates) {
    std::set<BitString> seen;
    int misses = 0;
    while (static_cast<int>(cand.size()) < book) {
      BitString w = draw_screened(rng, cfg);
      if (seen.insert(w).second) {
        cand.push_back(std::move(w));
        misses = 0;
      } else if (++misses >= kMaxRejections) {
        throw config_error("inner search: cannot find 2^m distinct screened words");
      }
    }
  }

  // Score with common random numbers: trial t uses the same message index and
  // the same channel seed for every candidate, so ranking noise mostly cancels.
  std::vector<std::uint64_t> trial_seeds(cfg.mc_trials);
  std::vector<int> trial_msgs(cfg.mc_trials);
  for (int t = 0; t < cfg.mc_trials; ++t) {
    trial_seeds[t] = rng.next_u64();
    trial_msgs[t] = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(book)));
  }

  InnerCode best;
  int best_failures = cfg.mc_trials + 1;
  int best_index = -1;
  for (int c = 0; c < cfg.num_candidates; ++c) {
    InnerCode code;
    code.msg_bits_m = cfg.msg_bits_m;
    code.block_len = cfg.block_len;
    code.zeta = cfg.zeta;
    code.gamma = cfg.gamma;
    code.codebook = candidates[c];
    code.model = model;
    int failures = 0;
    for (int t = 0; t < cfg.mc_trials; ++t) {
      const BitString y = apply(model, code.codebook[trial_msgs[t]], trial_seeds[t]);
      const InnerDecodeResult r = dec_inner_ml(code, y);
      if (r.uninformative || r.msg != trial_msgs[t]) ++failures;
    }
    if (failures < best_failures) {
      best_failures = failures;
      best = std::move(code);
      best_index = c;
    }
  }
  (void)best_index;

  best.est_failure_prob = static_cast<double>(best_failures) / cfg.mc_trials;
  best.est_failure_stderr =
      std::sqrt(best.est_failure_prob * (1.0 - best.est_failure_prob) / cfg.mc_trials);
  best.search_seed = seed;
  best.validate();
  return best;
}

const BitString& enc_inner(const InnerCode& code, int msg) {
  if (msg < 0 || msg >= code.size())
    throw std::invalid_argument("enc_inner: message out of range");
  return code.codebook[msg];
}

InnerDecodeResult dec_inner_ml(const InnerCode& code, const BitString& y) {
  InnerDecodeResult res;
  double best = kNegInf, second = kNegInf;
  int best_msg = 0;
  for (int msg = 0; msg < code.size(); ++msg) {
    const double ll = log2_likelihood(code.model, code.codebook[msg], y);
    if (ll > best) {
      second = best;
      best = ll;
      best_msg = msg;
    } else if (ll > second) {
      second = ll;
    }
  }
  if (best == kNegInf) {
    res.msg = 0;
    res.log2_likelihood = kNegInf;
    res.second_best_gap = 0.0;
    res.uninformative = true;
    return res;
  }
  res.msg = best_msg;
  res.log2_likelihood = best;
  res.second_best_gap =
      second == kNegInf ? std::numeric_limits<double>::infinity() : best - second;
  return res;
}

FailureEstimate estimate_failure(const InnerCode& code, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_failure: trials must be >= 1");
  Rng rng(split_seed(seed, kStreamInnerSearch));
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const int msg = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(code.size())));
    const BitString y = apply(code.model, code.codebook[msg], rng.next_u64());
    const InnerDecodeResult r = dec_inner_ml(code, y);
    if (r.uninformative || r.msg != msg) ++failures;
  }
  FailureEstimate est;
  est.trials = trials;
  est.p_hat = static_cast<double>(failures) / trials;
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / trials);
  return est;
}

}  // namespace repeatcode
