#include "repeatcode/json_io.hpp"

#include <map>
#include <string>

#include "repeatcode/errors.hpp"

namespace repeatcode {

namespace {

[[noreturn]] void bad(const std::string& what) { throw config_error("config: " + what); }

const ojson& need(const ojson& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::vector<std::pair<std::string, double>> fragment_table_from_json(const ojson& j) {
  if (!j.is_object()) bad("fragment table must be an object of {bits: prob}");
  std::vector<std::pair<std::string, double>> table;
  for (const auto& [bits, prob] : j.items()) {
    for (char c : bits)
      if (c != '0' && c != '1') bad("fragment keys must be bit strings");
    table.emplace_back(bits, prob.get<double>());
  }
  return table;
}

ojson fragment_table_to_json(const OutputDistribution& d) {
  ojson j = ojson::object();
  for (const auto& [bits, prob] : d.entries) j[bits.to_string()] = prob;
  return j;
}

}  // namespace

RepeatDistribution repeat_dist_from_json(const ojson& j) {
  if (!j.is_object()) bad("repeat distribution must be an object");
  if (j.contains("type")) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "deletion") return make_deletion(need(j, "d").get<double>());
    if (type == "poisson")
      return make_poisson(need(j, "lambda").get<double>(),
                          j.value("tail_tol", 1e-9));
    bad("unknown repeat distribution type '" + type + "'");
  }
  std::map<int, double> table;
  for (const auto& [key, val] : need(j, "pmf").items()) {
    std::size_t pos = 0;
    int r = 0;
    try {
      r = std::stoi(key, &pos);
    } catch (const std::exception&) {
      bad("pmf keys must be integers");
    }
    if (pos != key.size() || r < 0) bad("pmf keys must be non-negative integers");
    table[r] = val.get<double>();
  }
  return make_repeat_table(table);
}

ojson repeat_dist_to_json(const RepeatDistribution& d) {
  ojson pmf = ojson::object();
  for (int r = 0; r <= d.max_r(); ++r)
    if (d(r) > 0.0) pmf[std::to_string(r)] = d(r);
  return ojson{{"pmf", pmf}};
}

ChannelModel channel_from_json(const ojson& j) {
  const std::string kind = need(j, "kind").get<std::string>();
  if (kind == "repeat" || kind == "trimming_repeat") {
    ojson dist = j;
    dist.erase("kind");
    return make_repeat_channel(repeat_dist_from_json(dist), kind == "trimming_repeat");
  }
  if (kind == "dobrushin" || kind == "trimming_dobrushin") {
    OutputDistribution d0 = make_output_dist(fragment_table_from_json(need(j, "d0")));
    OutputDistribution d1 = make_output_dist(fragment_table_from_json(need(j, "d1")));
    if (kind == "dobrushin") return make_dobrushin_channel(std::move(d0), std::move(d1));
    return make_trimming_dobrushin_channel(std::move(d0), std::move(d1),
                                           repeat_dist_from_json(need(j, "trim_left")),
                                           repeat_dist_from_json(need(j, "trim_right")));
  }
  bad("unknown channel kind '" + kind + "'");
}

ojson channel_to_json(const ChannelModel& m) {
  ojson j;
  switch (m.kind) {
    case ChannelKind::repeat:
    case ChannelKind::trimming_repeat:
      j["kind"] = m.kind == ChannelKind::repeat ? "repeat" : "trimming_repeat";
      j["pmf"] = repeat_dist_to_json(m.repeat)["pmf"];
      return j;
    case ChannelKind::dobrushin:
    case ChannelKind::trimming_dobrushin:
      j["kind"] = m.kind == ChannelKind::dobrushin ? "dobrushin" : "trimming_dobrushin";
      j["d0"] = fragment_table_to_json(m.d0);
      j["d1"] = fragment_table_to_json(m.d1);
      if (m.kind == ChannelKind::trimming_dobrushin) {
        j["trim_left"] = repeat_dist_to_json(m.trim_left);
        j["trim_right"] = repeat_dist_to_json(m.trim_right);
      }
      return j;
  }
  bad("unserializable channel kind");
}

ojson outer_params_to_json(const OuterCodeParams& p) {
  const GF2m field(p.rs.q, p.rs.field_poly);
  return ojson{{"q", p.rs.q},
               {"n_rs", p.rs.n_rs},
               {"k_rs", p.rs.k_rs},
               {"irreducible_poly", field.modulus()}};
}

OuterCodeParams outer_params_from_json(const ojson& j) {
  OuterCodeParams p;
  p.rs.q = need(j, "q").get<int>();
  p.rs.n_rs = need(j, "n_rs").get<int>();
  p.rs.k_rs = need(j, "k_rs").get<int>();
  p.rs.field_poly = j.value("irreducible_poly", 0u);
  p.validate();
  return p;
}

ojson inner_code_to_json(const InnerCode& code) {
  ojson j{{"msg_bits_m", code.msg_bits_m},
          {"block_len", code.block_len},
          {"zeta", code.zeta},
          {"gamma", code.gamma},
          {"est_failure_prob", code.est_failure_prob},
          {"est_failure_stderr", code.est_failure_stderr},
          {"search_seed", code.search_seed},
          {"model", channel_to_json(code.model)}};
  ojson book = ojson::array();
  for (const BitString& w : code.codebook) book.push_back(w.to_string());
  j["codebook"] = std::move(book);
  return j;
}

InnerCode inner_code_from_json(const ojson& j) {
  InnerCode code;
  code.msg_bits_m = need(j, "msg_bits_m").get<int>();
  code.block_len = need(j, "block_len").get<int>();
  code.zeta = need(j, "zeta").get<double>();
  code.gamma = need(j, "gamma").get<double>();
  code.est_failure_prob = j.value("est_failure_prob", 0.0);
  code.est_failure_stderr = j.value("est_failure_stderr", 0.0);
  code.search_seed = j.value("search_seed", std::uint64_t{0});
  code.model = channel_from_json(need(j, "model"));
  for (const auto& w : need(j, "codebook"))
    code.codebook.push_back(BitString::from_string(w.get<std::string>()));
  code.validate();
  return code;
}

ojson concat_params_to_json(const ConcatParams& p) {
  ojson j{{"schema", "repeatcode-code-v1"},
          {"mode", p.mode == SegmentationMode::repeat ? "repeat" : "dobrushin"},
          {"eta", p.eta},
          {"nu", p.nu},
          {"kappa", p.kappa},
          {"inner", inner_code_to_json(p.inner)},
          {"outer", outer_params_to_json(p.outer)}};
  j["derived"] = ojson{{"buffer_len_b", p.buffer_len_b},
                       {"k_prime", p.k_prime},
                       {"total_len_n", p.total_len_n},
                       {"buffer_threshold", p.buffer_threshold},
                       {"window_len", p.window_len},
                       {"density_threshold", p.density_threshold},
                       {"realized_rate", p.realized_rate()}};
  return j;
}

ConcatParams concat_params_from_json(const ojson& j) {
  const std::string mode_str = need(j, "mode").get<std::string>();
  if (mode_str != "repeat" && mode_str != "dobrushin") bad("mode must be repeat or dobrushin");
  const SegmentationMode mode =
      mode_str == "repeat" ? SegmentationMode::repeat : SegmentationMode::dobrushin;
  return build_params(inner_code_from_json(need(j, "inner")),
                      outer_params_from_json(need(j, "outer")), need(j, "eta").get<double>(),
                      mode, j.value("nu", 0.0), j.value("kappa", 0.0));
}

}  // namespace repeatcode
