#pragma once
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "repeatcode/channel.hpp"

namespace repeatcode {

// Exact finite-n channel law: row x lists every reachable output with its
// probability. Rows are indexed by the integer value of the input word
// (first bit = most significant). No probability pruning is applied; every
// row sums to 1 up to floating point roundoff.
struct TransitionTable {
  int n = 0;
  std::vector<BitString> outputs;  // column id -> output word
  std::unordered_map<BitString, int, BitString::Hash> out_index;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sorted by column id
  std::vector<double> row_sums;
};

struct TableBudget {
  std::size_t max_rows = 1024;    // 2^n
  double max_leaf_ops = 2.5e8;    // rows * per-row enumeration leaves
};

BitString input_word(int n, std::uint32_t index);

// Enumerates the exact law by depth-first search over per-bit fragment
// choices (times the trim-pair support for trimming fragment channels).
// Throws resource_error if the enumeration budget would be exceeded.
TransitionTable build_transition_table(const ChannelModel& model, int n,
                                       const TableBudget& budget = {});

}  // namespace repeatcode
