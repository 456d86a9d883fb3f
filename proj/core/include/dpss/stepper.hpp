#pragma once

#include "dpss/ensemble.hpp"

#include <cstdint>
#include <utility>

namespace dpss {

// Iteration budget for step_time.  One unit of fuel pays for one
// flip-and-advance round, so the budget bounds the number of events the
// stepper may cross (a guard against runaway event cascades).
struct StepBudget {
    std::uint64_t fuel = 0;

    // Default allowance for simulating `duration` time on an N-UAV fleet:
    // 10,000 * N * max(1, ceil(duration)) rounds, saturating at uint64 max.
    static StepBudget for_duration(const Rational& duration, std::size_t n);
};

struct StepOutcome {
    Rational remaining;  // time left after this round
    Ensemble state;
};

// Moves every UAV along its direction for dt time units at the common speed
// (one segment length per unit).  dt must be non-negative.  The caller must
// not overshoot: if the result is ill-formed (a UAV left the perimeter or an
// ordering inverted), SimulationFault is thrown.
Ensemble update_location_all(const Rational& dt, const Ensemble& ens);

// One simulation round for a positive dt: flip all current events, then
// advance by min(dt, time to the next impact).  The returned remaining time
// is dt minus the advance; the returned state carries its events unflipped
// (flipping is the next round's first move).
StepOutcome next_step(const Rational& dt, const Ensemble& ens);

// Advances the ensemble by exactly dt >= 0 time units, crossing as many
// events as needed, spending one fuel per round.  dt == 0 returns the input
// unchanged (no flip).  Throws FuelExhausted if the budget runs out first.
Ensemble step_time(const Rational& dt, Ensemble ens, const StepBudget& budget);

// Convenience overload using StepBudget::for_duration.
Ensemble step_time(const Rational& dt, Ensemble ens);

// Advances to the next event instant: flips current events, then moves for
// exactly the time to the next impact.  Returns that time and the landing
// state, which again carries its events unflipped.  Flipping settles every
// event (the quiescence property), so the elapsed time is always positive.
std::pair<Rational, Ensemble> step_to_next_event(const Ensemble& ens);

}  // namespace dpss
