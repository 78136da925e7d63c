#include "repeatcode/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace repeatcode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRescaleFloor = 1e-120;

// run0[j] / run1[j]: length of the maximal constant run of 0s / 1s ending at
// output position j (1-indexed; entry 0 is 0).
void build_runs(const std::vector<std::uint8_t>& yb, std::vector<int>& run0,
                std::vector<int>& run1) {
  const std::size_t ny = yb.size();
  run0.assign(ny + 1, 0);
  run1.assign(ny + 1, 0);
  for (std::size_t j = 1; j <= ny; ++j) {
    run0[j] = yb[j - 1] ? 0 : run0[j - 1] + 1;
    run1[j] = yb[j - 1] ? run1[j - 1] + 1 : 0;
  }
}

// Rescales row (and the extra accumulator) by an exact power of two so that
// the maximum lands near 1; accumulates the shift in log2_scale.
bool rescale(std::vector<double>& row, double* extra, double& log2_scale) {
  double m = extra ? *extra : 0.0;
  for (double v : row) m = std::max(m, v);
  if (m == 0.0) return false;
  if (m >= kRescaleFloor) return true;
  int k;
  std::frexp(m, &k);
  for (double& v : row) v = std::ldexp(v, -k);
  if (extra) *extra = std::ldexp(*extra, -k);
  log2_scale += k;
  return true;
}

}  // namespace

double likelihood_rc_linear(const RepeatDistribution& dist, const BitString& x,
                            const BitString& y) {
  const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  const int B = dist.max_r();
  if (ny > nx * B) return 0.0;
  const auto xb = x.unpack();
  const auto yb = y.unpack();
  std::vector<int> run0, run1;
  build_runs(yb, run0, run1);
  std::vector<double> cur(static_cast<std::size_t>(ny) + 1, 0.0), nxt(cur);
  cur[0] = 1.0;
  for (int i = 1; i <= nx; ++i) {
    const bool b = xb[static_cast<std::size_t>(i - 1)] != 0;
    const std::vector<int>& run = b ? run1 : run0;
    for (int j = 0; j <= ny; ++j) {
      double acc = dist.pmf[0] * cur[static_cast<std::size_t>(j)];
      const int rmax = std::min(B, std::min(run[static_cast<std::size_t>(j)], j));
      for (int r = 1; r <= rmax; ++r)
        acc += dist.pmf[static_cast<std::size_t>(r)] * cur[static_cast<std::size_t>(j - r)];
      nxt[static_cast<std::size_t>(j)] = acc;
    }
    std::swap(cur, nxt);
  }
  return cur[static_cast<std::size_t>(ny)];
}

double log2_likelihood_rc(const RepeatDistribution& dist, const BitString& x,
                          const BitString& y) {
  const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  const int B = dist.max_r();
  if (ny > nx * B) return kNegInf;
  const auto xb = x.unpack();
  const auto yb = y.unpack();
  std::vector<int> run0, run1;
  build_runs(yb, run0, run1);
  std::vector<double> cur(static_cast<std::size_t>(ny) + 1, 0.0), nxt(cur);
  cur[0] = 1.0;
  double log2_scale = 0.0;
  for (int i = 1; i <= nx; ++i) {
    const bool b = xb[static_cast<std::size_t>(i - 1)] != 0;
    const int* run = (b ? run1 : run0).data();
    const double* pmf = dist.pmf.data();
    // Cells outside [lo, hi] can no longer contribute to T[nx][ny].
    const int lo = std::max(0, ny - (nx - i) * B);
    const int hi = std::min(ny, i * B);
    if (lo > 0) nxt[static_cast<std::size_t>(lo - 1)] = 0.0;
    for (int j = lo; j <= hi; ++j) {
      double acc = pmf[0] * cur[static_cast<std::size_t>(j)];
      const int rmax = std::min(B, std::min(run[j], j));
      for (int r = 1; r <= rmax; ++r) acc += pmf[r] * cur[static_cast<std::size_t>(j - r)];
      nxt[static_cast<std::size_t>(j)] = acc;
    }
    if (hi < ny) nxt[static_cast<std::size_t>(hi + 1)] = 0.0;
    std::swap(cur, nxt);
    if (!rescale(cur, nullptr, log2_scale)) return kNegInf;
  }
  const double v = cur[static_cast<std::size_t>(ny)];
  return v > 0.0 ? std::log2(v) + log2_scale : kNegInf;
}

namespace {

// Core of the trimming-repeat likelihood. State U[j] = P(prefix of x emitted
// some run of zeros followed by exactly y_1..y_j); U[0] absorbs all-zero
// outputs of any length. `done` absorbs histories whose emission already
// covered the final 1 of y; later bits may then only append zeros.
template <bool Scaled>
double trc_dp(const RepeatDistribution& dist, const BitString& x, const BitString& y,
              bool log_result) {
  const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  const int B = dist.max_r();
  const auto xb = x.unpack();
  if (ny == 0) {
    // Every 1 must be dropped entirely; zeros may emit anything.
    int ones = 0;
    for (int i = 0; i < nx; ++i) ones += xb[static_cast<std::size_t>(i)];
    if (ones == 0) return log_result ? 0.0 : 1.0;
    if (dist.pmf[0] == 0.0) return log_result ? kNegInf : 0.0;
    const double ll = ones * std::log2(dist.pmf[0]);
    return log_result ? ll : std::exp2(ll);
  }
  if (!y.bit(0) || !y.bit(static_cast<std::size_t>(ny - 1)) || ny > nx * B)
    return log_result ? kNegInf : 0.0;
  const auto yb = y.unpack();
  std::vector<int> run0, run1;
  build_runs(yb, run0, run1);
  std::vector<double> cur(static_cast<std::size_t>(ny) + 1, 0.0), nxt(cur);
  cur[0] = 1.0;
  double done = 0.0;
  double log2_scale = 0.0;
  const double p0 = dist.pmf[0];
  for (int i = 1; i <= nx; ++i) {
    const bool b = xb[static_cast<std::size_t>(i - 1)] != 0;
    const int* run = (b ? run1 : run0).data();
    const double* pmf = dist.pmf.data();
    double newdone = done * (b ? p0 : 1.0);
    if (b) {
      const int rmax = std::min(B, std::min(run1[static_cast<std::size_t>(ny)], ny));
      for (int r = 1; r <= rmax; ++r)
        newdone += pmf[r] * cur[static_cast<std::size_t>(ny - r)];
    }
    nxt[0] = cur[0] * (b ? p0 : 1.0);
    for (int j = 1; j <= ny; ++j) {
      double acc = p0 * cur[static_cast<std::size_t>(j)];
      const int rmax = std::min(B, std::min(run[j], j));
      for (int r = 1; r <= rmax; ++r) acc += pmf[r] * cur[static_cast<std::size_t>(j - r)];
      nxt[static_cast<std::size_t>(j)] = acc;
    }
    std::swap(cur, nxt);
    done = newdone;
    if constexpr (Scaled) {
      if (!rescale(cur, &done, log2_scale)) return log_result ? kNegInf : 0.0;
    }
  }
  if (log_result) return done > 0.0 ? std::log2(done) + log2_scale : kNegInf;
  return std::ldexp(done, static_cast<int>(log2_scale));
}

}  // namespace

double likelihood_trc_linear(const RepeatDistribution& dist, const BitString& x,
                             const BitString& y) {
  return trc_dp<false>(dist, x, y, false);
}

double log2_likelihood_trc(const RepeatDistribution& dist, const BitString& x,
                           const BitString& y) {
  return trc_dp<true>(dist, x, y, true);
}

namespace {

struct Fragment {
  std::uint64_t bits;
  int len;
  double p;
};

std::vector<Fragment> pack_fragments(const OutputDistribution& d) {
  std::vector<Fragment> out;
  out.reserve(d.entries.size());
  for (const auto& [frag, p] : d.entries) {
    Fragment f;
    f.len = static_cast<int>(frag.size());
    f.bits = f.len ? frag.window_u64(0, frag.size()) : 0;
    f.p = p;
    out.push_back(f);
  }
  return out;
}

template <bool Scaled>
double dobrushin_dp(const OutputDistribution& d0, const OutputDistribution& d1,
                    const BitString& x, const BitString& y, bool log_result) {
  const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  const int maxf = std::max(d0.max_len, d1.max_len);
  if (ny > nx * maxf) return log_result ? kNegInf : 0.0;
  const auto xb = x.unpack();
  const auto f0 = pack_fragments(d0);
  const auto f1 = pack_fragments(d1);
  std::vector<double> cur(static_cast<std::size_t>(ny) + 1, 0.0), nxt(cur);
  cur[0] = 1.0;
  double log2_scale = 0.0;
  for (int i = 1; i <= nx; ++i) {
    const auto& frags = xb[static_cast<std::size_t>(i - 1)] ? f1 : f0;
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int j = 0; j <= ny; ++j) {
      double acc = 0.0;
      for (const Fragment& f : frags) {
        if (f.len > j) continue;
        if (f.len == 0 ||
            y.window_u64(static_cast<std::size_t>(j - f.len), static_cast<std::size_t>(f.len)) ==
                f.bits)
          acc += f.p * cur[static_cast<std::size_t>(j - f.len)];
      }
      nxt[static_cast<std::size_t>(j)] = acc;
    }
    std::swap(cur, nxt);
    if constexpr (Scaled) {
      if (!rescale(cur, nullptr, log2_scale)) return log_result ? kNegInf : 0.0;
    }
  }
  const double v = cur[static_cast<std::size_t>(ny)];
  if (log_result) return v > 0.0 ? std::log2(v) + log2_scale : kNegInf;
  return std::ldexp(v, static_cast<int>(log2_scale));
}

}  // namespace

double likelihood_dobrushin_linear(const OutputDistribution& d0, const OutputDistribution& d1,
                                   const BitString& x, const BitString& y) {
  return dobrushin_dp<false>(d0, d1, x, y, false);
}

double log2_likelihood_dobrushin(const OutputDistribution& d0, const OutputDistribution& d1,
                                 const BitString& x, const BitString& y) {
  return dobrushin_dp<true>(d0, d1, x, y, true);
}

std::vector<double> fragment_length_dist(const OutputDistribution& d0,
                                         const OutputDistribution& d1, const BitString& x) {
  std::vector<double> dist{1.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const OutputDistribution& d = x.bit(i) ? d1 : d0;
    std::vector<double> nxt(dist.size() + static_cast<std::size_t>(d.max_len), 0.0);
    for (std::size_t l = 0; l < dist.size(); ++l) {
      if (dist[l] == 0.0) continue;
      for (const auto& [frag, p] : d.entries) nxt[l + frag.size()] += dist[l] * p;
    }
    dist = std::move(nxt);
  }
  return dist;
}

namespace {

// P(fragment channel output = *^tl y *^tr) where * matches either bit value.
// Wildcard positions are summed over exactly because every output position
// is covered by exactly one emitted fragment.
double log2_wildcard_dobrushin(const std::vector<Fragment>& f0, const std::vector<Fragment>& f1,
                               const std::vector<std::uint8_t>& xb, const BitString& y, int tl,
                               int tr) {
  const int ny = static_cast<int>(y.size());
  const int nz = tl + ny + tr;
  const int nx = static_cast<int>(xb.size());
  std::vector<double> cur(static_cast<std::size_t>(nz) + 1, 0.0), nxt(cur);
  cur[0] = 1.0;
  double log2_scale = 0.0;
  for (int i = 1; i <= nx; ++i) {
    const auto& frags = xb[static_cast<std::size_t>(i - 1)] ? f1 : f0;
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int j = 0; j <= nz; ++j) {
      double acc = 0.0;
      for (const Fragment& f : frags) {
        if (f.len > j) continue;
        bool match = true;
        if (f.len > 0) {
          // Overlap of fragment span [j-len, j) with the pinned region
          // [tl, tl+ny) of z.
          const int lo = std::max(j - f.len, tl);
          const int hi = std::min(j, tl + ny);
          if (lo < hi) {
            const int flen = hi - lo;
            const std::uint64_t fbits = (f.bits >> (lo - (j - f.len))) &
                                        (flen < 64 ? ((1ull << flen) - 1) : ~0ull);
            const std::uint64_t ybits = y.window_u64(static_cast<std::size_t>(lo - tl),
                                                     static_cast<std::size_t>(flen));
            match = fbits == ybits;
          }
        }
        if (match) acc += f.p * cur[static_cast<std::size_t>(j - f.len)];
      }
      nxt[static_cast<std::size_t>(j)] = acc;
    }
    std::swap(cur, nxt);
    if (!rescale(cur, nullptr, log2_scale)) return kNegInf;
  }
  const double v = cur[static_cast<std::size_t>(nz)];
  return v > 0.0 ? std::log2(v) + log2_scale : kNegInf;
}

double log2_sum_exp2(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double t : terms)
    if (t != kNegInf) s += std::exp2(t - m);
  return m + std::log2(s);
}

}  // namespace

double log2_likelihood_trimming_dobrushin(const ChannelModel& model, const BitString& x,
                                          const BitString& y) {
  const auto& tl_dist = model.trim_left;
  const auto& tr_dist = model.trim_right;
  if (y.empty()) {
    // Output is empty iff the trim counts cover the whole fragment output.
    std::vector<double> lens = fragment_length_dist(model.d0, model.d1, x);
    std::vector<double> cdf(lens.size());
    double acc = 0.0;
    for (std::size_t l = 0; l < lens.size(); ++l) {
      acc += lens[l];
      cdf[l] = acc;
    }
    double total = 0.0;
    for (int tl = 0; tl <= tl_dist.max_r(); ++tl)
      for (int tr = 0; tr <= tr_dist.max_r(); ++tr) {
        const std::size_t cover = static_cast<std::size_t>(tl) + static_cast<std::size_t>(tr);
        const double p_len =
            cover >= lens.size() - 1 ? 1.0 : cdf[cover];
        total += tl_dist(tl) * tr_dist(tr) * p_len;
      }
    return total > 0.0 ? std::log2(total) : kNegInf;
  }
  const auto xb = x.unpack();
  const auto f0 = pack_fragments(model.d0);
  const auto f1 = pack_fragments(model.d1);
  std::vector<double> terms;
  for (int tl = 0; tl <= tl_dist.max_r(); ++tl) {
    if (tl_dist(tl) == 0.0) continue;
    for (int tr = 0; tr <= tr_dist.max_r(); ++tr) {
      if (tr_dist(tr) == 0.0) continue;
      const double ll = log2_wildcard_dobrushin(f0, f1, xb, y, tl, tr);
      if (ll != kNegInf)
        terms.push_back(ll + std::log2(tl_dist(tl)) + std::log2(tr_dist(tr)));
    }
  }
  return log2_sum_exp2(terms);
}

double log2_likelihood(const ChannelModel& model, const BitString& x, const BitString& y) {
  switch (model.kind) {
    case ChannelKind::repeat:
      return log2_likelihood_rc(model.repeat, x, y);
    case ChannelKind::trimming_repeat:
      return log2_likelihood_trc(model.repeat, x, y);
    case ChannelKind::dobrushin:
      return log2_likelihood_dobrushin(model.d0, model.d1, x, y);
    case ChannelKind::trimming_dobrushin:
      return log2_likelihood_trimming_dobrushin(model, x, y);
  }
  return kNegInf;
}

}  // namespace repeatcode
