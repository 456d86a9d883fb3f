#pragma once

#include "dpss/ensemble.hpp"

#include <string>
#include <string_view>

namespace dpss {

// Parses a scenario document into a well-formed ensemble, or throws
// ScenarioError naming the first violated requirement (malformed JSON or
// rational text, count mismatch, bad direction, out-of-range location,
// ordering violation, non-positive perimeter).
//
// Document shape:
//   {"perimeter": "2", "n": 2,
//    "uavs": [{"location": "1/2", "direction": 1},
//             {"location": "3/2", "direction": -1}]}
// Rational fields accept canonical "p" or "p/q" text only.
Ensemble parse_scenario(std::string_view document);

// Canonical scenario document for a well-formed ensemble; inverse of
// parse_scenario.
std::string emit_scenario(const Ensemble& ens);

}  // namespace dpss
