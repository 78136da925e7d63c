#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "repeatcode/rng.hpp"

namespace repeatcode {

// Finite-support distribution over repeat counts r in {0, ..., max_r()}.
// pmf always sums to 1 (normalized at construction) and mean/variance are
// recomputed from the table, never taken from the parametric source.
struct RepeatDistribution {
  std::vector<double> pmf;  // index r
  double mean = 0.0;
  double variance = 0.0;
  // Probability mass removed by truncating a parametric source (0 for tables).
  double tail_mass_dropped = 0.0;

  int max_r() const { return static_cast<int>(pmf.size()) - 1; }
  double operator()(int r) const {
    return (r >= 0 && r < static_cast<int>(pmf.size())) ? pmf[static_cast<std::size_t>(r)] : 0.0;
  }

  int sample(Rng& rng) const;
};

// Explicit table {r -> mass}; masses must be non-negative with positive sum.
RepeatDistribution make_repeat_table(const std::map<int, double>& masses);

// Deletion with probability d: pmf {0: d, 1: 1-d}. Requires d in [0,1).
RepeatDistribution make_deletion(double d);

// Poisson(lambda) truncated at the smallest B whose tail mass is below
// tail_tol, then renormalized. The truncation point is derived from
// tail_tol, never hard-coded. Requires lambda > 0 and tail_tol in (0,1).
RepeatDistribution make_poisson(double lambda, double tail_tol = 1e-9);

}  // namespace repeatcode
