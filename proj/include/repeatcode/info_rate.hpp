#pragma once
#include <vector>

#include "repeatcode/repeat_dist.hpp"
#include "repeatcode/transition_table.hpp"

namespace repeatcode {

// I(X;Y) in bits for input distribution p over {0,1}^n (indexed like table
// rows). p must be a probability vector of matching size.
double mutual_information(const std::vector<double>& p, const TransitionTable& table);

struct CapacityEstimate {
  int n = 0;
  double mutual_information_bits = 0.0;  // at the returned optimizer
  double info_rate = 0.0;                // mutual_information_bits / n
  std::vector<double> optimizer_input_dist;
  int iterations = 0;
  double convergence_gap = 0.0;  // duality gap at the stopping iteration
  bool converged = false;
  std::vector<double> mi_trace;  // MI of each iterate (non-decreasing)
};

// Alternating-maximization ascent over the input simplex with a duality-gap
// stopping rule: on exit the reported MI is within tol bits of the exact
// finite-n supremum (when converged). Deterministic uniform initialization.
CapacityEstimate maximize_mi(const TransitionTable& table, double tol = 1e-7,
                             int max_iter = 20000);

struct RcTrcComparison {
  double i_rc = 0.0;
  double i_trc = 0.0;
  double gap = 0.0;  // |i_rc - i_trc|
};

// Exact MI of the repeat channel vs its trimming composition at blocklength n
// under the same input distribution.
RcTrcComparison compare_rc_trc(const RepeatDistribution& dist, int n,
                               const std::vector<double>& input,
                               const TableBudget& budget = {});

struct BalanceReport {
  int n = 0;
  int window_len = 0;
  std::vector<double> window_expectation;  // E[window weight]/L per start
  double min_expectation = 0.0;
  double max_expectation = 0.0;
  bool degenerate = false;  // some window is deterministically constant
};

// Expected per-window ones density of inputs drawn from p, for windows of
// length floor(zeta*n).
BalanceReport balance_report(const std::vector<double>& p, int n, double zeta);

}  // namespace repeatcode
