#pragma once

#include "dpss/ensemble.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace dpss {

// True when UAV i must turn around right now.  A left-mover turns at the left
// end of the perimeter, or when co-located with its left neighbour at or below
// its own left segment boundary; a right-mover is the mirror image.
// Precondition: well-formed ensemble, i < count.
bool event_for_uav(std::size_t i, const Ensemble& ens);

// Pluggable event rule, used to inject deliberately corrupted rules in
// robustness tests.  Must be a pure function of (index, ensemble).
using EventRule = std::function<bool(std::size_t, const Ensemble&)>;

// Flips the direction of every UAV whose event fires, all decisions taken
// against the input snapshot and applied simultaneously.  Locations are
// untouched.  The rule overload substitutes the event predicate.
Ensemble flip_on_events(const Ensemble& ens);
Ensemble flip_on_events(const Ensemble& ens, const EventRule& rule);

// True when UAV i's current leg ends in an event it can reach without any
// other UAV turning first: it is heading at an endpoint, at an approaching
// neighbour, or riding co-located with a same-direction neighbour toward its
// own boundary.
bool impending_impact_event_for_uav(std::size_t i, const Ensemble& ens);

// Exact time until UAV i's impending impact, nullopt when none is impending.
// Zero is possible (the state still carries an event); never negative.
std::optional<Rational> min_time_to_impact_for_uav(std::size_t i, const Ensemble& ens);

// Smallest min_time_to_impact over the fleet.  Every well-formed ensemble has
// at least one UAV with an impending impact; if not, the engine's own
// guarantee is broken and SimulationFault is thrown.
Rational always_smallest_min_time_to_impending_impact(const Ensemble& ens);

}  // namespace dpss
