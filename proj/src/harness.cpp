#include "repeatcode/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "repeatcode/errors.hpp"
#include "repeatcode/transition_table.hpp"

namespace repeatcode {

namespace {

[[noreturn]] void bad(const std::string& what) { throw config_error("config: " + what); }

double binomial_stderr(double p, int n) { return std::sqrt(p * (1.0 - p) / n); }

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

RepeatDistribution uniform_trim_law(int w) {
  std::map<int, double> table;
  for (int i = 0; i <= w; ++i) table[i] = 1.0;
  return make_repeat_table(table);
}

// The transmission channel configured for the run; must be untrimmed.
ChannelModel transmission_channel(const ExperimentConfig& cfg) {
  ChannelModel ch = channel_from_json(cfg.channel_spec);
  if (ch.is_trimming())
    bad("transmission channel must be a repeat or dobrushin kind (trimming is internal)");
  return ch;
}

// The law the inner code decodes against: trimming composed over the
// transmission channel. Dobrushin mode models the segmentation slack as
// uniform cuts of up to one density window on each side.
ChannelModel decode_model(const ExperimentConfig& cfg, const ChannelModel& transmission) {
  if (transmission.is_repeat_kind()) return trimming_version(transmission);
  const int w = static_cast<int>(std::lround(cfg.nu * cfg.eta * cfg.inner_search.block_len));
  if (w < 1) bad("nu * eta * block_len rounds below one window bit");
  const RepeatDistribution law = uniform_trim_law(w);
  return trimming_version(transmission, law, law);
}

int repeat_buffer_threshold(const ExperimentConfig& cfg, const ChannelModel& transmission) {
  return static_cast<int>(
      std::floor(0.5 * transmission.repeat.mean * cfg.eta * cfg.inner_search.block_len));
}

ConcatParams build_codec(const ExperimentConfig& cfg, const ChannelModel& transmission) {
  InnerSearchConfig search = cfg.inner_search;
  if (transmission.is_repeat_kind() && cfg.mode == SegmentationMode::repeat)
    search.max_internal_zero_run_excl = repeat_buffer_threshold(cfg, transmission);
  const InnerCode inner =
      search_inner_code(decode_model(cfg, transmission), search, cfg.master_seed);
  return build_params(inner, cfg.outer, cfg.eta, cfg.mode, cfg.nu, cfg.kappa);
}

BitString random_message(Rng& rng, int bits) {
  BitString msg;
  for (int i = 0; i < bits; ++i) msg.push_back(rng.next_bernoulli(0.5));
  return msg;
}

BitString sample_balanced_word(Rng& rng, int len, double zeta, double gamma) {
  for (int miss = 0; miss < 1000000; ++miss) {
    BitString w;
    for (int i = 0; i < len; ++i) w.push_back(rng.next_bernoulli(0.5));
    if (check_balance(w, zeta, gamma)) return w;
  }
  throw config_error("lemma checks: cannot sample a balanced word at this length");
}

struct WindowCount {
  long long windows = 0;
  long long hits = 0;
  double rate() const { return windows == 0 ? 0.0 : static_cast<double>(hits) / windows; }
};

// Slides length-w windows over y, counting ones-density on the wrong side of
// the threshold (below for codeword material, at-or-above for buffers).
void count_misclassified(const BitString& y, int w, double threshold, bool is_buffer,
                         WindowCount& acc) {
  if (y.size() < static_cast<std::size_t>(w)) return;
  std::size_t ones = y.weight_range(0, w);
  for (std::size_t t = 0;; ++t) {
    const double frac = static_cast<double>(ones) / w;
    const bool looks_like_buffer = frac < threshold;
    acc.windows += 1;
    if (looks_like_buffer != is_buffer) acc.hits += 1;
    if (t + w >= y.size()) break;
    ones -= y.bit(t) ? 1 : 0;
    ones += y.bit(t + w) ? 1 : 0;
  }
}

}  // namespace

ExperimentConfig experiment_config_from_json(const ojson& j) {
  ExperimentConfig cfg;
  if (!j.contains("channel")) bad("missing key 'channel'");
  cfg.channel_spec = j.at("channel");

  if (j.contains("inner_search")) {
    const ojson& s = j.at("inner_search");
    cfg.inner_search.msg_bits_m = s.value("msg_bits_m", cfg.inner_search.msg_bits_m);
    cfg.inner_search.block_len = s.value("block_len", cfg.inner_search.block_len);
    cfg.inner_search.zeta = s.value("zeta", cfg.inner_search.zeta);
    cfg.inner_search.gamma = s.value("gamma", cfg.inner_search.gamma);
    cfg.inner_search.num_candidates = s.value("num_candidates", cfg.inner_search.num_candidates);
    cfg.inner_search.mc_trials = s.value("mc_trials", cfg.inner_search.mc_trials);
  }
  if (j.contains("outer")) cfg.outer = outer_params_from_json(j.at("outer"));

  const std::string mode = j.value("mode", std::string("repeat"));
  if (mode == "repeat") cfg.mode = SegmentationMode::repeat;
  else if (mode == "dobrushin") cfg.mode = SegmentationMode::dobrushin;
  else bad("mode must be 'repeat' or 'dobrushin'");

  cfg.eta = j.value("eta", cfg.eta);
  cfg.nu = j.value("nu", cfg.nu);
  cfg.kappa = j.value("kappa", cfg.kappa);
  cfg.trial_count = j.value("trial_count", cfg.trial_count);
  if (cfg.trial_count < 1) bad("trial_count must be >= 1");
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.declared_failure_bound = j.value("declared_failure_bound", cfg.declared_failure_bound);

  if (j.contains("scaling")) {
    for (const ojson& s : j.at("scaling").at("sizes")) {
      ExperimentConfig::ScalingSize sz;
      sz.q = s.at("q").get<int>();
      sz.n_rs = s.at("n_rs").get<int>();
      sz.k_rs = s.at("k_rs").get<int>();
      sz.msg_bits_m = s.at("msg_bits_m").get<int>();
      sz.block_len = s.at("block_len").get<int>();
      cfg.scaling_sizes.push_back(sz);
    }
  }
  if (j.contains("lemma")) {
    const ojson& l = j.at("lemma");
    cfg.lemma_trim_gap_n_max = l.value("trim_gap_n_max", cfg.lemma_trim_gap_n_max);
    cfg.lemma_dobrushin_n_max = l.value("dobrushin_n_max", cfg.lemma_dobrushin_n_max);
    cfg.lemma_trim_support_w = l.value("trim_support_w", cfg.lemma_trim_support_w);
    if (l.contains("segmentation_ms"))
      cfg.lemma_segmentation_ms = l.at("segmentation_ms").get<std::vector<int>>();
    cfg.lemma_samples = l.value("samples", cfg.lemma_samples);
  }
  return cfg;
}

SimulationResult run_simulation(const ExperimentConfig& cfg, const std::string& out_dir) {
  const ChannelModel channel = transmission_channel(cfg);
  const ConcatParams params = build_codec(cfg, channel);
  std::filesystem::create_directories(out_dir);

  std::string csv = "# schema: repeatcode-trials-v1\n";
  csv +=
      "trial,success,segments,type1,type2,type3,type4,weighted,outer_erasures,"
      "outer_errors_corrected\n";

  SimulationResult res;
  res.params = params;
  res.trials = cfg.trial_count;
  res.realized_rate = params.realized_rate();
  std::map<int, int> hist[4];

  const std::uint64_t trials_root = split_seed(cfg.master_seed, kStreamTrials);
  for (int i = 0; i < cfg.trial_count; ++i) {
    const std::uint64_t trial_seed = split_seed(trials_root, static_cast<std::uint64_t>(i));
    Rng msg_rng(split_seed(trial_seed, kStreamMessages));
    const BitString message = random_message(msg_rng, params.outer.data_bits());

    const EncodedWord enc = concat_encode_traced(params, message);
    ChannelTrace trace;
    const BitString y =
        apply_traced(channel, enc.word, split_seed(trial_seed, kStreamChannel), &trace);

    const ConcatDecodeResult dec = concat_decode(params, y);
    const bool success = dec.ok && dec.message == message;
    if (!success) ++res.failures;

    const ErrorTaxonomy tax = classify_errors(params, enc.symbol_msgs, trace, y);
    res.totals.type1_buffer_lost += tax.type1_buffer_lost;
    res.totals.type2_codeword_vanished += tax.type2_codeword_vanished;
    res.totals.type3_spurious_buffer += tax.type3_spurious_buffer;
    res.totals.type4_inner_decode_fail += tax.type4_inner_decode_fail;
    ++hist[0][tax.type1_buffer_lost];
    ++hist[1][tax.type2_codeword_vanished];
    ++hist[2][tax.type3_spurious_buffer];
    ++hist[3][tax.type4_inner_decode_fail];

    csv += std::to_string(i) + ',' + (success ? '1' : '0') + ',' +
           std::to_string(dec.segment_count) + ',' + std::to_string(tax.type1_buffer_lost) +
           ',' + std::to_string(tax.type2_codeword_vanished) + ',' +
           std::to_string(tax.type3_spurious_buffer) + ',' +
           std::to_string(tax.type4_inner_decode_fail) + ',' +
           std::to_string(tax.weighted_edit_distance) + ',' +
           std::to_string(dec.outer_erasures) + ',' +
           std::to_string(dec.outer_errors_corrected) + '\n';
  }
  res.totals.weighted_edit_distance = res.totals.weighted();
  res.failure_rate = static_cast<double>(res.failures) / res.trials;
  res.stderr_ = binomial_stderr(res.failure_rate, res.trials);
  res.bound_declared = cfg.declared_failure_bound >= 0.0;
  res.within_declared_bound =
      !res.bound_declared || res.failure_rate <= cfg.declared_failure_bound;

  ojson summary{{"schema", "repeatcode-summary-v1"},
                {"trial_count", res.trials},
                {"failures", res.failures},
                {"failure_rate", res.failure_rate},
                {"stderr", res.stderr_},
                {"realized_rate", res.realized_rate},
                {"master_seed", cfg.master_seed}};
  summary["taxonomy_totals"] = ojson{{"type1_buffer_lost", res.totals.type1_buffer_lost},
                                     {"type2_codeword_vanished", res.totals.type2_codeword_vanished},
                                     {"type3_spurious_buffer", res.totals.type3_spurious_buffer},
                                     {"type4_inner_decode_fail", res.totals.type4_inner_decode_fail},
                                     {"weighted_edit_distance", res.totals.weighted_edit_distance}};
  const char* hist_names[4] = {"type1_buffer_lost", "type2_codeword_vanished",
                               "type3_spurious_buffer", "type4_inner_decode_fail"};
  ojson histograms = ojson::object();
  for (int t = 0; t < 4; ++t) {
    ojson h = ojson::object();
    for (const auto& [count, trials] : hist[t]) h[std::to_string(count)] = trials;
    histograms[hist_names[t]] = std::move(h);
  }
  summary["taxonomy_histograms"] = std::move(histograms);
  if (res.bound_declared) {
    summary["declared_failure_bound"] = cfg.declared_failure_bound;
    summary["within_declared_bound"] = res.within_declared_bound;
  }

  ojson code = concat_params_to_json(params);
  code["channel"] = cfg.channel_spec;
  code["master_seed"] = cfg.master_seed;

  write_file(out_dir + "/trials.csv", csv);
  write_file(out_dir + "/summary.json", summary.dump(2) + "\n");
  write_file(out_dir + "/code.json", code.dump(2) + "\n");
  return res;
}

std::vector<ScalingPoint> run_scaling_study(const ExperimentConfig& cfg,
                                            const std::string& out_dir) {
  if (cfg.scaling_sizes.size() < 3) bad("scaling study needs at least 3 sizes");
  std::filesystem::create_directories(out_dir);

  std::vector<ScalingPoint> points;
  std::string csv = "# schema: repeatcode-scaling-v1\n";
  csv += "n_rs,k_rs,total_len_n,trials,failures,failure_rate,stderr\n";
  for (const auto& sz : cfg.scaling_sizes) {
    ExperimentConfig sub = cfg;
    sub.scaling_sizes.clear();
    sub.outer.rs.q = sz.q;
    sub.outer.rs.n_rs = sz.n_rs;
    sub.outer.rs.k_rs = sz.k_rs;
    sub.outer.rs.field_poly = 0;
    sub.inner_search.msg_bits_m = sz.msg_bits_m;
    sub.inner_search.block_len = sz.block_len;
    const SimulationResult r =
        run_simulation(sub, out_dir + "/size_" + std::to_string(sz.n_rs));
    ScalingPoint pt;
    pt.n_rs = sz.n_rs;
    pt.k_rs = sz.k_rs;
    pt.total_len_n = r.params.total_len_n;
    pt.trials = r.trials;
    pt.failures = r.failures;
    pt.failure_rate = r.failure_rate;
    pt.stderr_ = r.stderr_;
    points.push_back(pt);
    csv += std::to_string(pt.n_rs) + ',' + std::to_string(pt.k_rs) + ',' +
           std::to_string(pt.total_len_n) + ',' + std::to_string(pt.trials) + ',' +
           std::to_string(pt.failures) + ',' + fmt_double(pt.failure_rate) + ',' +
           fmt_double(pt.stderr_) + '\n';
  }
  write_file(out_dir + "/scaling.csv", csv);
  return points;
}

LemmaReport run_lemma_checks(const ExperimentConfig& cfg, const std::string& out_dir) {
  const ChannelModel channel = transmission_channel(cfg);
  std::filesystem::create_directories(out_dir);
  LemmaReport rep;

  if (channel.is_repeat_kind()) {
    // (a) exact RC-vs-TRC information loss, uniform input, plus the bound
    // from revealing the trim pair: gap <= 2 * H(L, R).
    for (int n = 1; n <= cfg.lemma_trim_gap_n_max; ++n) {
      const TransitionTable rc = build_transition_table(channel, n);
      const TransitionTable trc = build_transition_table(trimming_version(channel), n);
      const std::vector<double> uniform(rc.rows.size(), 1.0 / rc.rows.size());
      TrimGapRow row;
      row.n = n;
      row.i_rc = mutual_information(uniform, rc);
      row.i_trc = mutual_information(uniform, trc);
      row.gap = std::abs(row.i_rc - row.i_trc);
      row.gap_per_bit = row.gap / n;

      std::map<std::pair<std::size_t, std::size_t>, double> pair_mass;
      for (std::size_t xi = 0; xi < rc.rows.size(); ++xi)
        for (const auto& [col, prob] : rc.rows[xi]) {
          const TrimResult t = trim(rc.outputs[static_cast<std::size_t>(col)]);
          pair_mass[{t.left_cut, t.right_cut}] += uniform[xi] * prob;
        }
      std::vector<double> mass;
      for (const auto& [pair, m] : pair_mass) mass.push_back(m);
      row.entropy_bound = 2.0 * entropy_bits(mass);
      rep.trim_gap.push_back(row);
    }
  } else {
    // (b) trimming cost bound: cutting Tl + Tr bits can destroy at most their
    // values plus their counts: slack = E[Tl] + E[Tr] + H(Tl) + H(Tr).
    const RepeatDistribution law = uniform_trim_law(cfg.lemma_trim_support_w);
    const ChannelModel tdc = trimming_version(channel, law, law);
    const double slack = 2.0 * (law.mean + entropy_bits(law.pmf));
    for (int n = 1; n <= cfg.lemma_dobrushin_n_max; ++n) {
      DobrushinMiRow row;
      row.n = n;
      row.slack = slack;
      row.mi_dc = maximize_mi(build_transition_table(channel, n)).mutual_information_bits;
      row.mi_tdc = maximize_mi(build_transition_table(tdc, n)).mutual_information_bits;
      row.holds = row.mi_tdc >= row.mi_dc - slack - 1e-9;
      rep.dobrushin_mi.push_back(row);
    }

    // (c) window-density misclassification of balanced words vs buffers.
    if (!channel.biased()) bad("segmentation check needs a biased dobrushin channel");
    const double threshold = channel.ones_fraction_f + cfg.kappa;
    Rng rng(split_seed(cfg.master_seed, kStreamLemma));
    for (int m : cfg.lemma_segmentation_ms) {
      SegmentationRow row;
      row.m = m;
      row.window_len = static_cast<int>(std::lround(cfg.nu * cfg.eta * m));
      const int buf_len = static_cast<int>(std::lround(cfg.eta * m));
      if (row.window_len < 1 || buf_len < 1) bad("segmentation check: window rounds to zero");
      WindowCount cw, buf;
      for (int s = 0; s < cfg.lemma_samples; ++s) {
        const BitString word =
            sample_balanced_word(rng, m, cfg.inner_search.zeta, cfg.inner_search.gamma);
        count_misclassified(apply(channel, word, rng.next_u64()), row.window_len, threshold,
                            false, cw);
        count_misclassified(apply(channel, BitString::zeros(buf_len), rng.next_u64()),
                            row.window_len, threshold, true, buf);
      }
      if (cw.windows == 0 || buf.windows == 0)
        bad("segmentation check: outputs shorter than the window at m=" + std::to_string(m));
      row.codeword_misclass = cw.rate();
      row.buffer_misclass = buf.rate();
      row.combined = 0.5 * (row.codeword_misclass + row.buffer_misclass);
      rep.segmentation.push_back(row);
    }
  }

  ojson j{{"schema", "repeatcode-lemma-v1"}};
  ojson a = ojson::array();
  for (const TrimGapRow& r : rep.trim_gap)
    a.push_back(ojson{{"n", r.n},
                      {"i_rc", r.i_rc},
                      {"i_trc", r.i_trc},
                      {"gap", r.gap},
                      {"gap_per_bit", r.gap_per_bit},
                      {"entropy_bound", r.entropy_bound}});
  j["trim_gap"] = std::move(a);
  ojson b = ojson::array();
  for (const DobrushinMiRow& r : rep.dobrushin_mi)
    b.push_back(ojson{{"n", r.n},
                      {"mi_dc", r.mi_dc},
                      {"mi_tdc", r.mi_tdc},
                      {"slack", r.slack},
                      {"holds", r.holds}});
  j["dobrushin_mi"] = std::move(b);
  ojson c = ojson::array();
  for (const SegmentationRow& r : rep.segmentation)
    c.push_back(ojson{{"m", r.m},
                      {"window_len", r.window_len},
                      {"codeword_misclass", r.codeword_misclass},
                      {"buffer_misclass", r.buffer_misclass},
                      {"combined", r.combined}});
  j["segmentation"] = std::move(c);
  write_file(out_dir + "/lemma_checks.json", j.dump(2) + "\n");
  return rep;
}

}  // namespace repeatcode
