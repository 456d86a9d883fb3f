#pragma once

#include "dpss/ensemble.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace dpss {

struct OracleEvent {
    Rational time;
    std::size_t uav = 0;
    Rational location;

    bool operator==(const OracleEvent&) const = default;
};

// Independent ground truth for small fleets (N <= 3): computes the exact
// event sequence up to and including `horizon` by solving each episode's
// pairwise meeting/boundary kinematics directly from the protocol's rules
// of motion.  Deliberately shares no code with the event engine.  Turns
// already pending in the initial state are resolved silently, not reported.
// Events at one instant are listed in ascending UAV order.
std::vector<OracleEvent> enumerate_events_small(const Ensemble& ens,
                                                const Rational& horizon);

// Closed-form trajectory of a single vehicle bouncing between 0 and P at
// speed P per unit: triangle-wave fold of the phase (offset + t*P) mod 2P.
// Returns the position and direction at time t, with arrival states reported
// before the turn (direction still points at the endpoint just reached).
std::pair<Rational, Direction> triangle_trajectory(const Rational& loc0,
                                                   Direction dir0,
                                                   const Rational& t,
                                                   const Rational& perimeter);

struct GeneratorConfig {
    std::size_t n_min = 1;
    std::size_t n_max = 8;
    std::vector<Rational> perimeters{Rational(1), Rational(2), Rational(7, 3),
                                     Rational(10)};
    std::uint64_t max_denominator = 64;
    std::uint64_t seed = 0;
};

// Deterministic random source.  mt19937_64 has a fixed, portable output
// sequence; bounded draws use rejection sampling so results do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform draw from [0, bound); bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    bool next_bit() { return next_below(2) == 1; }

    // Uniform-denominator rational in [0, hi]: picks q in [1, max_den], then
    // a numerator in [0, floor(hi*q)].
    Rational rational_up_to(const Rational& hi, std::uint64_t max_den);

private:
    std::mt19937_64 gen_;
};

// Draws a well-formed ensemble: fleet size from the configured range,
// perimeter from the configured choices, sorted locations in [0, P] with
// denominators <= max_denominator, fair-coin directions.  One quarter of
// draws force a co-located adjacent pair so meeting geometry is well
// represented.  The config-only overload is a pure function of cfg.seed.
Ensemble random_wf_ensemble(Rng& rng, const GeneratorConfig& cfg);
Ensemble random_wf_ensemble(const GeneratorConfig& cfg);

}  // namespace dpss
