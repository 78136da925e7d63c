#pragma once
#include "repeatcode/bitstring.hpp"
#include "repeatcode/channel.hpp"
#include "repeatcode/repeat_dist.hpp"

namespace repeatcode {

// Exact channel likelihoods. Every quantity has two routes: a plain
// linear-domain dynamic program (the cross-check path used by tests) and a
// rescaled log-domain path (the production path, safe against underflow).
// The two must agree within 1e-9 relative wherever the linear value is
// representable.

// P(repeat channel maps x to exactly y).
double likelihood_rc_linear(const RepeatDistribution& dist, const BitString& x,
                            const BitString& y);
double log2_likelihood_rc(const RepeatDistribution& dist, const BitString& x,
                          const BitString& y);

// P(trimming repeat channel maps x to exactly y); y must be empty or start
// and end with a one, otherwise the probability is 0.
double likelihood_trc_linear(const RepeatDistribution& dist, const BitString& x,
                             const BitString& y);
double log2_likelihood_trc(const RepeatDistribution& dist, const BitString& x,
                           const BitString& y);

// P(per-bit fragment channel maps x to exactly y).
double likelihood_dobrushin_linear(const OutputDistribution& d0, const OutputDistribution& d1,
                                   const BitString& x, const BitString& y);
double log2_likelihood_dobrushin(const OutputDistribution& d0, const OutputDistribution& d1,
                                 const BitString& x, const BitString& y);

// P(trimming fragment channel maps x to exactly y): marginalizes the trim
// counts and the content of the trimmed-away positions exactly.
double log2_likelihood_trimming_dobrushin(const ChannelModel& model, const BitString& x,
                                          const BitString& y);

// Distribution of |output| for a fragment channel on input x.
std::vector<double> fragment_length_dist(const OutputDistribution& d0,
                                         const OutputDistribution& d1, const BitString& x);

// Dispatch on model.kind. Returns -inf for impossible observations.
double log2_likelihood(const ChannelModel& model, const BitString& x, const BitString& y);

}  // namespace repeatcode
