#include "repeatcode/repeat_dist.hpp"

#include <cmath>

#include "repeatcode/errors.hpp"

namespace repeatcode {

namespace {

RepeatDistribution finalize(std::vector<double> pmf, double dropped) {
  while (pmf.size() > 1 && pmf.back() == 0.0) pmf.pop_back();
  double sum = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw config_error("repeat distribution: masses must be non-negative and finite");
    sum += p;
  }
  if (!(sum > 0.0)) throw config_error("repeat distribution: total mass must be positive");
  RepeatDistribution d;
  d.pmf.resize(pmf.size());
  for (std::size_t r = 0; r < pmf.size(); ++r) d.pmf[r] = pmf[r] / sum;
  for (std::size_t r = 0; r < d.pmf.size(); ++r) d.mean += static_cast<double>(r) * d.pmf[r];
  for (std::size_t r = 0; r < d.pmf.size(); ++r) {
    const double dr = static_cast<double>(r) - d.mean;
    d.variance += dr * dr * d.pmf[r];
  }
  d.tail_mass_dropped = dropped;
  return d;
}

}  // namespace

int RepeatDistribution::sample(Rng& rng) const {
  double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t r = 0; r < pmf.size(); ++r) {
    acc += pmf[r];
    if (u < acc) return static_cast<int>(r);
  }
  return max_r();
}

RepeatDistribution make_repeat_table(const std::map<int, double>& masses) {
  if (masses.empty()) throw config_error("repeat distribution: empty table");
  int max_r = masses.rbegin()->first;
  if (masses.begin()->first < 0) throw config_error("repeat distribution: negative repeat count");
  std::vector<double> pmf(static_cast<std::size_t>(max_r) + 1, 0.0);
  for (auto& [r, p] : masses) pmf[static_cast<std::size_t>(r)] = p;
  return finalize(std::move(pmf), 0.0);
}

RepeatDistribution make_deletion(double d) {
  if (!(d >= 0.0 && d < 1.0)) throw config_error("make_deletion: d must be in [0,1)");
  return finalize({d, 1.0 - d}, 0.0);
}

RepeatDistribution make_poisson(double lambda, double tail_tol) {
  if (!(lambda > 0.0)) throw config_error("make_poisson: lambda must be positive");
  if (!(tail_tol > 0.0 && tail_tol < 1.0))
    throw config_error("make_poisson: tail_tol must be in (0,1)");
  std::vector<double> pmf;
  double pk = std::exp(-lambda);  // P(R = 0)
  double cdf = 0.0;
  for (int k = 0;; ++k) {
    pmf.push_back(pk);
    cdf += pk;
    if (1.0 - cdf < tail_tol) break;
    if (k > 100000) throw resource_error("make_poisson: truncation point not found");
    pk *= lambda / static_cast<double>(k + 1);
  }
  return finalize(std::move(pmf), 1.0 - cdf);
}

}  // namespace repeatcode
