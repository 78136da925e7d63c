#include "repeatcode/info_rate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "repeatcode/errors.hpp"

namespace repeatcode {

namespace {

void check_dist(const std::vector<double>& p, std::size_t want) {
  if (p.size() != want) throw std::invalid_argument("input distribution: wrong size");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw std::invalid_argument("input distribution: negative mass");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("input distribution: does not sum to 1");
}

std::vector<double> output_marginal(const std::vector<double>& p, const TransitionTable& t) {
  std::vector<double> q(t.outputs.size(), 0.0);
  for (std::size_t xi = 0; xi < t.rows.size(); ++xi) {
    if (p[xi] == 0.0) continue;
    for (const auto& [col, v] : t.rows[xi]) q[static_cast<std::size_t>(col)] += p[xi] * v;
  }
  return q;
}

// D(x) = sum_y P(y|x) log2(P(y|x)/q(y)).
double relative_entropy_row(const TransitionTable& t, std::size_t xi,
                            const std::vector<double>& q) {
  double d = 0.0;
  for (const auto& [col, v] : t.rows[xi]) {
    if (v == 0.0) continue;
    const double qy = std::max(q[static_cast<std::size_t>(col)], 1e-300);
    d += v * std::log2(v / qy);
  }
  return d;
}

}  // namespace

double mutual_information(const std::vector<double>& p, const TransitionTable& t) {
  check_dist(p, t.rows.size());
  const std::vector<double> q = output_marginal(p, t);
  double mi = 0.0;
  for (std::size_t xi = 0; xi < t.rows.size(); ++xi)
    if (p[xi] > 0.0) mi += p[xi] * relative_entropy_row(t, xi, q);
  return mi;
}

CapacityEstimate maximize_mi(const TransitionTable& t, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_mi: tol must be positive");
  const std::size_t rows = t.rows.size();
  CapacityEstimate est;
  est.n = t.n;
  std::vector<double> p(rows, 1.0 / static_cast<double>(rows));
  std::vector<double> d(rows, 0.0);
  for (int it = 1; it <= max_iter; ++it) {
    const std::vector<double> q = output_marginal(p, t);
    double upper = -1.0;  // max_x D(x) bounds the supremum from above
    double mi = 0.0;
    for (std::size_t xi = 0; xi < rows; ++xi) {
      d[xi] = relative_entropy_row(t, xi, q);
      upper = std::max(upper, d[xi]);
      if (p[xi] > 0.0) mi += p[xi] * d[xi];
    }
    est.mi_trace.push_back(mi);
    // Multiplicative update; Z lower-bounds achievable MI after the update.
    double z = 0.0;
    for (std::size_t xi = 0; xi < rows; ++xi) {
      p[xi] *= std::exp2(d[xi]);
      z += p[xi];
    }
    for (double& v : p) v /= z;
    const double lower = std::log2(z);
    est.iterations = it;
    est.convergence_gap = upper - lower;
    if (est.convergence_gap < tol) {
      est.converged = true;
      break;
    }
  }
  est.optimizer_input_dist = p;
  est.mutual_information_bits = mutual_information(p, t);
  est.info_rate = est.mutual_information_bits / static_cast<double>(t.n);
  return est;
}

RcTrcComparison compare_rc_trc(const RepeatDistribution& dist, int n,
                               const std::vector<double>& input, const TableBudget& budget) {
  const TransitionTable rc = build_transition_table(make_repeat_channel(dist, false), n, budget);
  const TransitionTable trc = build_transition_table(make_repeat_channel(dist, true), n, budget);
  RcTrcComparison c;
  c.i_rc = mutual_information(input, rc);
  c.i_trc = mutual_information(input, trc);
  c.gap = std::abs(c.i_rc - c.i_trc);
  return c;
}

BalanceReport balance_report(const std::vector<double>& p, int n, double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0))
    throw std::invalid_argument("balance_report: zeta must be in (0,1)");
  check_dist(p, std::size_t{1} << n);
  BalanceReport rep;
  rep.n = n;
  rep.window_len = static_cast<int>(std::floor(zeta * n));
  if (rep.window_len < 1) throw std::invalid_argument("balance_report: window length is zero");
  const int l = rep.window_len;
  rep.min_expectation = 2.0;
  rep.max_expectation = -1.0;
  for (int start = 0; start + l <= n; ++start) {
    double e = 0.0;
    for (std::size_t xi = 0; xi < p.size(); ++xi) {
      if (p[xi] == 0.0) continue;
      // weight of bits [start, start+l) of the word with value xi
      const std::uint32_t v = static_cast<std::uint32_t>(xi);
      int w = 0;
      for (int b = start; b < start + l; ++b) w += (v >> (n - 1 - b)) & 1u;
      e += p[xi] * w;
    }
    e /= l;
    rep.window_expectation.push_back(e);
    rep.min_expectation = std::min(rep.min_expectation, e);
    rep.max_expectation = std::max(rep.max_expectation, e);
  }
  rep.degenerate = rep.min_expectation <= 1e-12 || rep.max_expectation >= 1.0 - 1e-12;
  return rep;
}

}  // namespace repeatcode
