#include "repeatcode/transition_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "repeatcode/errors.hpp"

namespace repeatcode {

BitString input_word(int n, std::uint32_t index) {
  return BitString::from_uint(index, static_cast<std::size_t>(n));
}

namespace {

// Accumulates P(output prefix) over all fragment choices for bits i..n-1.
void dfs_fragments(const ChannelModel& model, const std::vector<std::uint8_t>& xb,
                   std::size_t i, BitString& prefix, double prob,
                   std::map<BitString, double>& acc) {
  if (i == xb.size()) {
    acc[prefix] += prob;
    return;
  }
  if (model.is_repeat_kind()) {
    const RepeatDistribution& d = model.repeat;
    for (int r = 0; r <= d.max_r(); ++r) {
      if (d.pmf[static_cast<std::size_t>(r)] == 0.0) continue;
      const std::size_t old_len = prefix.size();
      prefix.append_run(xb[i] != 0, static_cast<std::size_t>(r));
      dfs_fragments(model, xb, i + 1, prefix, prob * d.pmf[static_cast<std::size_t>(r)], acc);
      prefix = prefix.slice(0, old_len);
    }
  } else {
    const OutputDistribution& d = xb[i] ? model.d1 : model.d0;
    for (const auto& [frag, p] : d.entries) {
      if (p == 0.0) continue;
      const std::size_t old_len = prefix.size();
      prefix.append(frag);
      dfs_fragments(model, xb, i + 1, prefix, prob * p, acc);
      prefix = prefix.slice(0, old_len);
    }
  }
}

std::map<BitString, double> row_law(const ChannelModel& model, const BitString& x) {
  std::map<BitString, double> pre;
  BitString prefix;
  dfs_fragments(model, x.unpack(), 0, prefix, 1.0, pre);
  switch (model.kind) {
    case ChannelKind::repeat:
    case ChannelKind::dobrushin:
      return pre;
    case ChannelKind::trimming_repeat: {
      std::map<BitString, double> out;
      for (const auto& [y, p] : pre) out[trim(y).trimmed] += p;
      return out;
    }
    case ChannelKind::trimming_dobrushin: {
      std::map<BitString, double> out;
      const auto& tl = model.trim_left;
      const auto& tr = model.trim_right;
      for (const auto& [y, p] : pre)
        for (int a = 0; a <= tl.max_r(); ++a)
          for (int b = 0; b <= tr.max_r(); ++b) {
            const double q = p * tl(a) * tr(b);
            if (q == 0.0) continue;
            if (static_cast<std::size_t>(a) + static_cast<std::size_t>(b) >= y.size())
              out[BitString()] += q;
            else
              out[y.slice(static_cast<std::size_t>(a), y.size() - static_cast<std::size_t>(b))] +=
                  q;
          }
      return out;
    }
  }
  return pre;
}

}  // namespace

TransitionTable build_transition_table(const ChannelModel& model, int n,
                                       const TableBudget& budget) {
  if (n < 1) throw config_error("build_transition_table: n must be >= 1");
  if (n > 30) throw resource_error("build_transition_table: n too large");
  const std::size_t rows = std::size_t{1} << n;
  if (rows > budget.max_rows)
    throw resource_error("build_transition_table: 2^n exceeds the row budget");
  double leaves = 1.0;
  for (int i = 0; i < n; ++i) leaves *= static_cast<double>(std::max(
      model.support_size(false), model.support_size(true)));
  if (model.kind == ChannelKind::trimming_dobrushin)
    leaves *= static_cast<double>(model.trim_left.pmf.size()) *
              static_cast<double>(model.trim_right.pmf.size());
  if (static_cast<double>(rows) * leaves > budget.max_leaf_ops)
    throw resource_error("build_transition_table: enumeration budget exceeded");

  TransitionTable t;
  t.n = n;
  t.rows.resize(rows);
  t.row_sums.resize(rows, 0.0);
  for (std::size_t xi = 0; xi < rows; ++xi) {
    const BitString x = input_word(n, static_cast<std::uint32_t>(xi));
    auto law = row_law(model, x);
    auto& row = t.rows[xi];
    row.reserve(law.size());
    for (const auto& [y, p] : law) {
      auto it = t.out_index.find(y);
      int col;
      if (it == t.out_index.end()) {
        col = static_cast<int>(t.outputs.size());
        t.out_index.emplace(y, col);
        t.outputs.push_back(y);
      } else {
        col = it->second;
      }
      row.emplace_back(col, p);
      t.row_sums[xi] += p;
    }
    std::sort(row.begin(), row.end());
  }
  return t;
}

}  // namespace repeatcode
