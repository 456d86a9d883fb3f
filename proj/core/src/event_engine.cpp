#include "dpss/event_engine.hpp"

#include "dpss/errors.hpp"

#include <utility>
#include <vector>

namespace dpss {

bool event_for_uav(std::size_t i, const Ensemble& ens) {
    const UavState& u = ens.uav(i);
    const std::size_t n = ens.count();
    if (u.direction == Direction::Left) {
        if (i == 0) return u.location == 0;
        const UavState& left = ens.uav(i - 1);
        return u.location == left.location && u.location <= uav_left_boundary(i, ens);
    }
    if (i == n - 1) return u.location == ens.perimeter();
    const UavState& right = ens.uav(i + 1);
    return u.location == right.location && u.location >= uav_right_boundary(i, ens);
}

Ensemble flip_on_events(const Ensemble& ens, const EventRule& rule) {
    // Decide from the input snapshot, then apply all flips at once.
    const std::size_t n = ens.count();
    std::vector<bool> fired(n);
    for (std::size_t i = 0; i < n; ++i) fired[i] = rule(i, ens);
    std::vector<UavState> next = ens.uavs();
    for (std::size_t i = 0; i < n; ++i) {
        if (fired[i]) next[i].direction = opposite(next[i].direction);
    }
    return Ensemble(ens.perimeter(), std::move(next));
}

Ensemble flip_on_events(const Ensemble& ens) {
    return flip_on_events(ens, [](std::size_t i, const Ensemble& e) {
        return event_for_uav(i, e);
    });
}

bool impending_impact_event_for_uav(std::size_t i, const Ensemble& ens) {
    const UavState& u = ens.uav(i);
    if (u.direction == Direction::Left) {
        if (i == 0) return true;
        const UavState& left = ens.uav(i - 1);
        return left.direction == Direction::Right || left.location == u.location;
    }
    if (i == ens.count() - 1) return true;
    const UavState& right = ens.uav(i + 1);
    return right.direction == Direction::Left || right.location == u.location;
}

std::optional<Rational> min_time_to_impact_for_uav(std::size_t i, const Ensemble& ens) {
    if (!impending_impact_event_for_uav(i, ens)) return std::nullopt;
    const UavState& u = ens.uav(i);
    const Rational speed = seg_length(ens);
    Rational t;
    if (u.direction == Direction::Left) {
        if (i == 0) {
            t = u.location / speed;
        } else {
            const UavState& left = ens.uav(i - 1);
            if (left.direction == Direction::Right) {
                t = (u.location - left.location) / (2 * speed);
            } else {
                // Co-located same-direction pair: the leg ends at i's own
                // left boundary.
                t = (u.location - uav_left_boundary(i, ens)) / speed;
            }
        }
    } else {
        if (i == ens.count() - 1) {
            t = (ens.perimeter() - u.location) / speed;
        } else {
            const UavState& right = ens.uav(i + 1);
            if (right.direction == Direction::Left) {
                t = (right.location - u.location) / (2 * speed);
            } else {
                t = (uav_right_boundary(i, ens) - u.location) / speed;
            }
        }
    }
    // The boundary cases can come out negative when the state still carries
    // an event (the leg "ended" already); the impact is then due now.
    if (t < 0) t = 0;
    return t;
}

Rational always_smallest_min_time_to_impending_impact(const Ensemble& ens) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < ens.count(); ++i) {
        auto t = min_time_to_impact_for_uav(i, ens);
        if (t && (!best || *t < *best)) best = std::move(t);
    }
    if (!best) {
        throw SimulationFault(
            "no UAV has an impending impact; well-formed ensembles always have one");
    }
    return *best;
}

}  // namespace dpss
