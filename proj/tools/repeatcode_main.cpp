#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "repeatcode/errors.hpp"
#include "repeatcode/harness.hpp"

namespace {

using repeatcode::ojson;

ojson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw repeatcode::config_error("cannot open config file: " + path);
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw repeatcode::config_error(std::string("config is not valid JSON: ") + e.what());
  }
}

std::string read_bits(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw repeatcode::config_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::string bits;
  for (char c : text) {
    if (c == '0' || c == '1') bits.push_back(c);
    else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
      throw repeatcode::config_error("input must be an ASCII bit string");
  }
  return bits;
}

void write_line(const std::string& path, const std::string& line) {
  if (path.empty() || path == "-") {
    std::cout << line << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << line << '\n';
}

std::string channel_description(const ojson& spec) {
  std::string desc;
  for (const auto& [key, val] : spec.items()) {
    if (!desc.empty()) desc += ' ';
    desc += key + '=' + (val.is_string() ? val.get<std::string>() : val.dump());
  }
  std::string safe;
  for (char c : desc)
    safe.push_back(c == ',' ? ';' : c);
  return safe;
}

int run(int argc, char** argv) {
  CLI::App app{"concatenated codes for bit-repeat and fragment channels"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", out_file, code_path, in_path;
  int n_min = 1, n_max = 6;

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo end-to-end evaluation");
  simulate->add_option("--config", config_path, "experiment config JSON")->required();
  simulate->add_option("--out", out_dir, "output directory");

  CLI::App* search = app.add_subcommand("search-inner", "randomized inner-code search");
  search->add_option("--config", config_path, "experiment config JSON")->required();
  search->add_option("--out", out_file, "inner code JSON path")->required();

  CLI::App* info = app.add_subcommand("info-rate", "exact small-n information rates");
  info->add_option("--config", config_path, "experiment config JSON")->required();
  info->add_option("--out", out_file, "CSV path (default stdout)");
  info->add_option("--n-min", n_min, "smallest blocklength");
  info->add_option("--n-max", n_max, "largest blocklength");

  CLI::App* lemma = app.add_subcommand("lemma-checks", "exact and statistical model checks");
  lemma->add_option("--config", config_path, "experiment config JSON")->required();
  lemma->add_option("--out", out_dir, "output directory");

  CLI::App* scaling = app.add_subcommand("scaling", "failure rate across outer-code sizes");
  scaling->add_option("--config", config_path, "experiment config JSON")->required();
  scaling->add_option("--out", out_dir, "output directory");

  CLI::App* encode = app.add_subcommand("encode", "encode a message with a built codec");
  encode->add_option("--code", code_path, "code.json from simulate/search")->required();
  encode->add_option("--in", in_path, "message bits file ('-' = stdin)");
  encode->add_option("--out", out_file, "output file ('-' = stdout)");

  CLI::App* decode = app.add_subcommand("decode", "decode a received word");
  decode->add_option("--code", code_path, "code.json from simulate/search")->required();
  decode->add_option("--in", in_path, "received bits file ('-' = stdin)");
  decode->add_option("--out", out_file, "output file ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using namespace repeatcode;
  if (simulate->parsed()) {
    const ExperimentConfig cfg = experiment_config_from_json(load_json_file(config_path));
    const SimulationResult res = run_simulation(cfg, out_dir);
    std::printf("trials=%d failures=%d failure_rate=%.6g stderr=%.3g realized_rate=%.6g\n",
                res.trials, res.failures, res.failure_rate, res.stderr_, res.realized_rate);
    if (res.bound_declared)
      std::printf("declared_failure_bound=%.6g within_bound=%s\n",
                  cfg.declared_failure_bound, res.within_declared_bound ? "yes" : "no");
    std::printf("outputs: %s/trials.csv %s/summary.json %s/code.json\n", out_dir.c_str(),
                out_dir.c_str(), out_dir.c_str());
    return 0;
  }

  if (search->parsed()) {
    const ExperimentConfig cfg = experiment_config_from_json(load_json_file(config_path));
    const ChannelModel channel = channel_from_json(cfg.channel_spec);
    ChannelModel model;
    InnerSearchConfig scfg = cfg.inner_search;
    if (channel.is_trimming()) {
      model = channel;
    } else if (channel.is_repeat_kind()) {
      model = trimming_version(channel);
      if (cfg.mode == SegmentationMode::repeat)
        scfg.max_internal_zero_run_excl = static_cast<int>(
            0.5 * channel.repeat.mean * cfg.eta * cfg.inner_search.block_len);
    } else {
      const int w =
          static_cast<int>(std::lround(cfg.nu * cfg.eta * cfg.inner_search.block_len));
      if (w < 1) throw config_error("nu * eta * block_len rounds below one window bit");
      std::map<int, double> uniform;
      for (int i = 0; i <= w; ++i) uniform[i] = 1.0;
      const RepeatDistribution law = make_repeat_table(uniform);
      model = trimming_version(channel, law, law);
    }
    const InnerCode code = search_inner_code(model, scfg, cfg.master_seed);
    std::ofstream out(out_file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_file);
    out << inner_code_to_json(code).dump(2) << '\n';
    std::printf("m=%d block_len=%d est_failure_prob=%.6g stderr=%.3g -> %s\n",
                code.msg_bits_m, code.block_len, code.est_failure_prob,
                code.est_failure_stderr, out_file.c_str());
    return 0;
  }

  if (info->parsed()) {
    const ExperimentConfig cfg = experiment_config_from_json(load_json_file(config_path));
    const ChannelModel channel = channel_from_json(cfg.channel_spec);
    if (channel.is_trimming())
      throw config_error("info-rate expects an untrimmed channel spec");
    ChannelModel trimmed;
    if (channel.is_repeat_kind()) {
      trimmed = trimming_version(channel);
    } else {
      std::map<int, double> uniform;
      for (int i = 0; i <= cfg.lemma_trim_support_w; ++i) uniform[i] = 1.0;
      const RepeatDistribution law = make_repeat_table(uniform);
      trimmed = trimming_version(channel, law, law);
    }
    if (n_min < 1 || n_max < n_min) throw config_error("need 1 <= n-min <= n-max");
    const std::string desc = channel_description(cfg.channel_spec);
    std::string csv = "n,channel,i_rc,i_trc,gap,optimizer_entropy\n";
    for (int n = n_min; n <= n_max; ++n) {
      const CapacityEstimate plain = maximize_mi(build_transition_table(channel, n));
      const CapacityEstimate trim = maximize_mi(build_transition_table(trimmed, n));
      double opt_entropy = 0.0;
      for (double p : trim.optimizer_input_dist)
        if (p > 0.0) opt_entropy -= p * std::log2(p);
      char row[256];
      std::snprintf(row, sizeof row, "%d,%s,%.12g,%.12g,%.12g,%.12g\n", n, desc.c_str(),
                    plain.mutual_information_bits, trim.mutual_information_bits,
                    std::abs(plain.mutual_information_bits - trim.mutual_information_bits),
                    opt_entropy);
      csv += row;
    }
    if (out_file.empty() || out_file == "-") {
      std::fputs(csv.c_str(), stdout);
    } else {
      std::ofstream out(out_file, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + out_file);
      out << csv;
    }
    return 0;
  }

  if (lemma->parsed()) {
    const ExperimentConfig cfg = experiment_config_from_json(load_json_file(config_path));
    const LemmaReport rep = run_lemma_checks(cfg, out_dir);
    for (const TrimGapRow& r : rep.trim_gap)
      std::printf("trim_gap n=%d i_rc=%.6f i_trc=%.6f gap/bit=%.3g bound=%.3g\n", r.n, r.i_rc,
                  r.i_trc, r.gap_per_bit, r.entropy_bound);
    for (const DobrushinMiRow& r : rep.dobrushin_mi)
      std::printf("dobrushin_mi n=%d mi_dc=%.6f mi_tdc=%.6f slack=%.3g holds=%s\n", r.n,
                  r.mi_dc, r.mi_tdc, r.slack, r.holds ? "yes" : "no");
    for (const SegmentationRow& r : rep.segmentation)
      std::printf("segmentation m=%d window=%d codeword=%.4g buffer=%.4g combined=%.4g\n", r.m,
                  r.window_len, r.codeword_misclass, r.buffer_misclass, r.combined);
    std::printf("outputs: %s/lemma_checks.json\n", out_dir.c_str());
    return 0;
  }

  if (scaling->parsed()) {
    const ExperimentConfig cfg = experiment_config_from_json(load_json_file(config_path));
    const auto points = run_scaling_study(cfg, out_dir);
    for (const ScalingPoint& p : points)
      std::printf("n_rs=%d k_rs=%d total_len=%lld failure_rate=%.6g stderr=%.3g\n", p.n_rs,
                  p.k_rs, p.total_len_n, p.failure_rate, p.stderr_);
    std::printf("outputs: %s/scaling.csv\n", out_dir.c_str());
    return 0;
  }

  const ConcatParams params = concat_params_from_json(load_json_file(code_path));
  if (encode->parsed()) {
    const std::string bits = read_bits(in_path);
    if (static_cast<int>(bits.size()) != params.outer.data_bits())
      throw config_error("message must have exactly k_rs*q bits");
    write_line(out_file, concat_encode(params, BitString::from_string(bits)).to_string());
    return 0;
  }
  // decode
  const BitString y = BitString::from_string(read_bits(in_path));
  const ConcatDecodeResult res = concat_decode(params, y);
  write_line(out_file, res.ok ? res.message.to_string() : std::string("FAILURE"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const repeatcode::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 2;
  } catch (const repeatcode::resource_error& e) {
    std::fprintf(stderr, "resource budget exceeded: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
