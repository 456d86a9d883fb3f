#pragma once

#include "dpss/rational.hpp"

#include <cstddef>
#include <vector>

namespace dpss {

// Travel direction along the perimeter.  Left decreases location, Right
// increases it.  Numeric values are the motion signs.
enum class Direction : int { Left = -1, Right = 1 };

constexpr Direction opposite(Direction d) {
    return d == Direction::Left ? Direction::Right : Direction::Left;
}

constexpr int direction_sign(Direction d) { return static_cast<int>(d); }

struct UavState {
    std::size_t id = 0;
    Rational location;
    Direction direction = Direction::Right;

    bool operator==(const UavState&) const = default;
};

// A fleet of UAVs patrolling the closed interval [0, perimeter].  The fleet is
// indexed left to right; most operations require the well-formedness predicate
// below (ids 0..N-1 in order, locations sorted and inside the interval).
class Ensemble {
public:
    Ensemble() = default;
    Ensemble(Rational perimeter, std::vector<UavState> uavs)
        : perimeter_(std::move(perimeter)), uavs_(std::move(uavs)) {}

    // Convenience: builds states from (location, direction) pairs,
    // assigning ids 0..N-1 in order.
    static Ensemble from_states(Rational perimeter,
                                std::vector<std::pair<Rational, Direction>> states);

    const Rational& perimeter() const noexcept { return perimeter_; }
    std::size_t count() const noexcept { return uavs_.size(); }
    const std::vector<UavState>& uavs() const noexcept { return uavs_; }

    // Bounds-checked element access; throws std::out_of_range.
    const UavState& uav(std::size_t i) const;

    bool operator==(const Ensemble&) const = default;

private:
    Rational perimeter_;
    std::vector<UavState> uavs_;
};

// Length of one patrol segment: perimeter / count.  Each UAV covers one
// segment per unit of time, so this is also the common speed.
Rational seg_length(const Ensemble& ens);

// Boundaries of UAV i's assigned segment [i*S, (i+1)*S].
Rational uav_left_boundary(std::size_t i, const Ensemble& ens);
Rational uav_right_boundary(std::size_t i, const Ensemble& ens);

// Exact midpoint of two scalars.
Rational average(const Rational& a, const Rational& b);

// True when the ensemble is a valid fleet state: at least one UAV, positive
// perimeter, ids 0..N-1 in positional order, and locations sorted
// (non-strictly) within [0, perimeter].
bool wf_ensemble(const Ensemble& ens);

// Mirror image of the fleet: positions reflected through the perimeter
// midpoint, order reversed so indexing stays left-to-right, directions
// negated, ids reassigned positionally.  An involution on well-formed
// ensembles.
Ensemble reflect(const Ensemble& ens);

}  // namespace dpss
