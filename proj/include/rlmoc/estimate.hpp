#pragma once

#include "rlmoc/graph.hpp"
#include "rlmoc/makeshifts.hpp"
#include "rlmoc/objectives.hpp"

namespace rlmoc {

// Estimate of the single-objective optimum used by the slack check.
// RS and F are solved exactly by their makeshifts, so `makeshift_value`
// (the value right after that makeshift ran) is returned as exact. The
// other objectives get lower bounds from their approximation factors.
OptimalEstimate estimate_optimal(const GraphInstance& h, const ObjectiveSpec& o, int k,
                                 const MakeshiftOptions& opts, double makeshift_value);

}  // namespace rlmoc
