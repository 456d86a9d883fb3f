#pragma once

#include "dpss/ensemble.hpp"
#include "dpss/stepper.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace dpss {

// One CSV row: the state of one UAV at one emission instant.  `event` is 1
// when this UAV's event fires at this instant in the pre-flip snapshot.
struct TraceRow {
    Rational time;
    std::size_t uav = 0;
    Rational location;
    int direction = 1;  // -1 | 1
    int event = 0;      // 0 | 1

    bool operator==(const TraceRow&) const = default;
};

// Simulates `duration` time units and records the event-aligned trace:
//   - the initial state (with event flags; plus post-flip rows when events
//     fire at t = 0 and the simulation continues),
//   - every event instant, pre-flip (flags set) and post-flip rows,
//   - the final state at t = duration, pre-flip (pending flips flagged),
//   - optionally, mid-flight rows at multiples of `sample_interval` that do
//     not collide with the instants above.
// Rows are grouped by nondecreasing time, one row per UAV per instant, and
// every scalar is exact.  Throws FuelExhausted when the budget runs out.
std::vector<TraceRow> collect_trace(const Ensemble& ens, const Rational& duration,
                                    const StepBudget& budget,
                                    const std::optional<Rational>& sample_interval);

// Writes rows as CSV with the fixed header `time,uav,location,direction,event`,
// rationals in canonical "p/q" text.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

}  // namespace dpss
