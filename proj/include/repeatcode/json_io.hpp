#pragma once

#include "json.hpp"
#include "repeatcode/channel.hpp"
#include "repeatcode/concat.hpp"
#include "repeatcode/inner_code.hpp"
#include "repeatcode/outer_code.hpp"
#include "repeatcode/repeat_dist.hpp"

namespace repeatcode {

// All emitters use ordered_json so key order, and therefore bytes on disk,
// are stable across runs.
using ojson = nlohmann::ordered_json;

// {"pmf": {"0": 0.1, "1": 0.9}} or {"type": "deletion", "d": ...} or
// {"type": "poisson", "lambda": ..., "tail_tol": ...}.
RepeatDistribution repeat_dist_from_json(const ojson& j);
ojson repeat_dist_to_json(const RepeatDistribution& d);  // canonical pmf table

// {"kind": "repeat"|"trimming_repeat", "pmf"/"type" forms as above} or
// {"kind": "dobrushin"|"trimming_dobrushin", "d0": {fragment: prob, ...},
//  "d1": {...}, "trim_left"/"trim_right": repeat-dist forms}.
ChannelModel channel_from_json(const ojson& j);
ojson channel_to_json(const ChannelModel& m);

ojson outer_params_to_json(const OuterCodeParams& p);
OuterCodeParams outer_params_from_json(const ojson& j);

ojson inner_code_to_json(const InnerCode& code);
InnerCode inner_code_from_json(const ojson& j);

// Full codec bundle, sufficient to reconstruct encode/decode behavior.
ojson concat_params_to_json(const ConcatParams& p);
ConcatParams concat_params_from_json(const ojson& j);

}  // namespace repeatcode
