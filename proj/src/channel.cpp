#include "repeatcode/channel.hpp"

#include <algorithm>
#include <cmath>

#include "repeatcode/errors.hpp"

namespace repeatcode {

const BitString& OutputDistribution::sample(Rng& rng) const {
  double u = rng.next_double();
  double acc = 0.0;
  for (const auto& [frag, p] : entries) {
    acc += p;
    if (u < acc) return frag;
  }
  return entries.back().first;
}

OutputDistribution make_output_dist(std::vector<std::pair<std::string, double>> table) {
  if (table.empty()) throw config_error("output distribution: empty table");
  OutputDistribution d;
  double sum = 0.0;
  for (auto& [s, p] : table) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw config_error("output distribution: masses must be non-negative and finite");
    sum += p;
    d.entries.emplace_back(BitString::from_string(s), p);
  }
  if (!(sum > 0.0)) throw config_error("output distribution: total mass must be positive");
  std::sort(d.entries.begin(), d.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // Merge duplicate fragments so the support is a proper set.
  std::vector<std::pair<BitString, double>> merged;
  for (auto& e : d.entries) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  d.entries.clear();
  for (auto& e : merged)
    if (e.second > 0.0) d.entries.push_back(std::move(e));
  for (auto& [frag, p] : d.entries) {
    p /= sum;
    d.expected_len += p * static_cast<double>(frag.size());
    d.expected_weight += p * static_cast<double>(frag.weight());
    d.max_len = std::max(d.max_len, static_cast<int>(frag.size()));
  }
  return d;
}

OutputDistribution repeat_output_dist(const RepeatDistribution& dist, bool bit) {
  OutputDistribution d;
  for (int r = 0; r <= dist.max_r(); ++r) {
    if (dist(r) == 0.0) continue;
    BitString frag;
    frag.append_run(bit, static_cast<std::size_t>(r));
    d.entries.emplace_back(std::move(frag), dist(r));
    d.expected_len += dist(r) * r;
    if (bit) d.expected_weight += dist(r) * r;
    d.max_len = r;
  }
  return d;
}

double ChannelModel::mean_output_per_bit() const {
  if (is_repeat_kind()) return repeat.mean;
  return d0.expected_len;  // biased models have E|Y0| = E|Y1|
}

bool ChannelModel::biased() const {
  if (is_repeat_kind()) return false;
  if (std::abs(d0.expected_len - d1.expected_len) > 1e-9) return false;
  return d0.expected_weight < 0.5 * d0.expected_len - 1e-12 &&
         d1.expected_weight > 0.5 * d1.expected_len + 1e-12;
}

std::size_t ChannelModel::support_size(bool bit) const {
  if (is_repeat_kind()) return repeat.pmf.size();
  return bit ? d1.entries.size() : d0.entries.size();
}

ChannelModel make_repeat_channel(RepeatDistribution dist, bool trimming) {
  ChannelModel m;
  m.kind = trimming ? ChannelKind::trimming_repeat : ChannelKind::repeat;
  m.repeat = std::move(dist);
  return m;
}

ChannelModel make_dobrushin_channel(OutputDistribution d0, OutputDistribution d1) {
  ChannelModel m;
  m.kind = ChannelKind::dobrushin;
  m.d0 = std::move(d0);
  m.d1 = std::move(d1);
  if (!(m.d0.expected_len > 0.0))
    throw config_error("dobrushin channel: E|Y0| must be positive");
  m.ones_fraction_f = m.d0.expected_weight / m.d0.expected_len;
  return m;
}

ChannelModel make_trimming_dobrushin_channel(OutputDistribution d0, OutputDistribution d1,
                                             RepeatDistribution tl, RepeatDistribution tr) {
  ChannelModel m = make_dobrushin_channel(std::move(d0), std::move(d1));
  m.kind = ChannelKind::trimming_dobrushin;
  m.trim_left = std::move(tl);
  m.trim_right = std::move(tr);
  return m;
}

ChannelModel trimming_version(const ChannelModel& model) {
  if (model.is_trimming()) return model;
  if (model.kind == ChannelKind::repeat) {
    ChannelModel m = model;
    m.kind = ChannelKind::trimming_repeat;
    return m;
  }
  throw config_error("trimming_version: dobrushin channels need explicit trim laws");
}

ChannelModel trimming_version(const ChannelModel& model, const RepeatDistribution& tl,
                              const RepeatDistribution& tr) {
  if (model.is_repeat_kind()) return trimming_version(model);
  ChannelModel m = model;
  m.kind = ChannelKind::trimming_dobrushin;
  m.trim_left = tl;
  m.trim_right = tr;
  return m;
}

ChannelModel transmission_version(const ChannelModel& model) {
  ChannelModel m = model;
  m.kind = model.is_repeat_kind() ? ChannelKind::repeat : ChannelKind::dobrushin;
  return m;
}

BitString apply_traced(const ChannelModel& model, const BitString& x, std::uint64_t seed,
                       ChannelTrace* trace) {
  Rng rng(seed);
  BitString y;
  if (trace) {
    trace->out_len.clear();
    trace->out_len.reserve(x.size());
    trace->trim_left = trace->trim_right = 0;
  }
  if (model.is_repeat_kind()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      int r = model.repeat.sample(rng);
      y.append_run(x.bit(i), static_cast<std::size_t>(r));
      if (trace) trace->out_len.push_back(static_cast<std::uint32_t>(r));
    }
    if (model.kind == ChannelKind::trimming_repeat) {
      TrimResult t = trim(y);
      if (trace) {
        trace->trim_left = t.left_cut;
        trace->trim_right = t.right_cut;
      }
      return t.trimmed;
    }
    return y;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const BitString& frag = (x.bit(i) ? model.d1 : model.d0).sample(rng);
    y.append(frag);
    if (trace) trace->out_len.push_back(static_cast<std::uint32_t>(frag.size()));
  }
  if (model.kind == ChannelKind::trimming_dobrushin) {
    std::size_t tl = static_cast<std::size_t>(model.trim_left.sample(rng));
    std::size_t tr = static_cast<std::size_t>(model.trim_right.sample(rng));
    if (tl + tr >= y.size()) {
      if (trace) {
        trace->trim_left = std::min(tl, y.size());
        trace->trim_right = y.size() - std::min(tl, y.size());
      }
      return BitString();
    }
    if (trace) {
      trace->trim_left = tl;
      trace->trim_right = tr;
    }
    return y.slice(tl, y.size() - tr);
  }
  return y;
}

BitString apply(const ChannelModel& model, const BitString& x, std::uint64_t seed) {
  return apply_traced(model, x, seed, nullptr);
}

}  // namespace repeatcode
