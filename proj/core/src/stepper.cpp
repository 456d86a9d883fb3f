#include "dpss/stepper.hpp"

#include "dpss/errors.hpp"
#include "dpss/event_engine.hpp"
#include "dpss/rational.hpp"

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dpss {

StepBudget StepBudget::for_duration(const Rational& duration, std::size_t n) {
    Integer rounds = Integer(10000) * Integer(n);
    Integer d = duration > 0 ? rational_ceil(duration) : Integer(0);
    if (d > 1) rounds *= d;
    const Integer cap = Integer(std::numeric_limits<std::uint64_t>::max());
    if (rounds > cap) rounds = cap;
    return StepBudget{static_cast<std::uint64_t>(rounds)};
}

Ensemble update_location_all(const Rational& dt, const Ensemble& ens) {
    if (dt < 0) throw std::invalid_argument("update_location_all requires dt >= 0");
    const Rational speed = seg_length(ens);
    const Rational stride = speed * dt;
    std::vector<UavState> moved = ens.uavs();
    for (UavState& u : moved) {
        u.location += direction_sign(u.direction) * stride;
    }
    Ensemble out(ens.perimeter(), std::move(moved));
    if (!wf_ensemble(out)) {
        throw SimulationFault(
            "motion increment produced an ill-formed ensemble; the caller "
            "overshot the next impact");
    }
    return out;
}

StepOutcome next_step(const Rational& dt, const Ensemble& ens) {
    if (dt <= 0) throw std::invalid_argument("next_step requires dt > 0");
    Ensemble flipped = flip_on_events(ens);
    const Rational horizon = always_smallest_min_time_to_impending_impact(flipped);
    const Rational& advance = horizon < dt ? horizon : dt;
    return StepOutcome{dt - advance, update_location_all(advance, flipped)};
}

Ensemble step_time(const Rational& dt, Ensemble ens, const StepBudget& budget) {
    if (dt < 0) throw std::invalid_argument("step_time requires dt >= 0");
    Rational remaining = dt;
    std::uint64_t fuel = budget.fuel;
    while (remaining != 0) {
        if (fuel == 0) throw FuelExhausted(format_rational(remaining), budget.fuel);
        --fuel;
        StepOutcome round = next_step(remaining, ens);
        remaining = std::move(round.remaining);
        ens = std::move(round.state);
    }
    return ens;
}

Ensemble step_time(const Rational& dt, Ensemble ens) {
    const StepBudget budget = StepBudget::for_duration(dt, ens.count());
    return step_time(dt, std::move(ens), budget);
}

std::pair<Rational, Ensemble> step_to_next_event(const Ensemble& ens) {
    Ensemble flipped = flip_on_events(ens);
    Rational t = always_smallest_min_time_to_impending_impact(flipped);
    Ensemble landed = update_location_all(t, flipped);
    return {std::move(t), std::move(landed)};
}

}  // namespace dpss
