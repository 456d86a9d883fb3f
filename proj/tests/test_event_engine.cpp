#include "dpss/event_engine.hpp"

#include "dpss/errors.hpp"
#include "dpss/oracle.hpp"

#include <doctest.h>

using dpss::Direction;
using dpss::Ensemble;
using dpss::Rational;

namespace {

Ensemble make(Rational perimeter,
              std::vector<std::pair<Rational, Direction>> states) {
    return Ensemble::from_states(std::move(perimeter), std::move(states));
}

const Direction L = Direction::Left;
const Direction R = Direction::Right;

}  // namespace

TEST_CASE("endpoint events") {
    const Ensemble at_left = make(2, {{Rational(0), L}, {Rational(3, 2), L}});
    CHECK(dpss::event_for_uav(0, at_left));
    CHECK(!dpss::event_for_uav(1, at_left));

    const Ensemble at_right = make(2, {{Rational(1, 2), R}, {Rational(2), R}});
    CHECK(!dpss::event_for_uav(0, at_right));
    CHECK(dpss::event_for_uav(1, at_right));

    // Facing away from the endpoint: no event.
    const Ensemble leaving = make(2, {{Rational(0), R}, {Rational(2), L}});
    CHECK(!dpss::event_for_uav(0, leaving));
    CHECK(!dpss::event_for_uav(1, leaving));
}

TEST_CASE("meeting at the shared boundary fires both events") {
    const Ensemble met = make(2, {{Rational(1), R}, {Rational(1), L}});
    CHECK(dpss::event_for_uav(0, met));
    CHECK(dpss::event_for_uav(1, met));

    const Ensemble flipped = dpss::flip_on_events(met);
    CHECK(flipped.uav(0).direction == L);
    CHECK(flipped.uav(1).direction == R);
    CHECK(flipped.uav(0).location == 1);
    CHECK(flipped.uav(1).location == 1);
}

TEST_CASE("meeting inside the left segment fires only the deeper intruder") {
    // Both at 1/2: UAV 1 is at or past its left boundary (1), so its event
    // fires; UAV 0 moving right with no one at its right boundary does not.
    const Ensemble met = make(2, {{Rational(1, 2), R}, {Rational(1, 2), L}});
    CHECK(!dpss::event_for_uav(0, met));
    CHECK(dpss::event_for_uav(1, met));
}

TEST_CASE("three-way pileup flips simultaneously against the snapshot") {
    const Ensemble pile =
        make(3, {{Rational(1), R}, {Rational(1), L}, {Rational(1), L}});
    // UAV 0 meets an oncoming neighbour at its right boundary; UAVs 1 and 2
    // are each co-located with their left neighbour at or left of their own
    // left boundaries (1 and 2), so all three events fire off the same
    // snapshot.
    CHECK(dpss::event_for_uav(0, pile));
    CHECK(dpss::event_for_uav(1, pile));
    CHECK(dpss::event_for_uav(2, pile));

    const Ensemble next = dpss::flip_on_events(pile);
    CHECK(next.uav(0).direction == L);
    CHECK(next.uav(1).direction == R);
    CHECK(next.uav(2).direction == R);
}

TEST_CASE("impending impacts") {
    // Co-located same-direction pair: the follower's escort leg impends.
    const Ensemble escort = make(2, {{Rational(3, 2), L}, {Rational(3, 2), L}});
    CHECK(dpss::impending_impact_event_for_uav(1, escort));
    CHECK(dpss::impending_impact_event_for_uav(0, escort));

    // Separated same-direction pair: the trailing UAV's future meeting
    // depends on the leader turning first, so nothing impends for it.
    const Ensemble chase = make(2, {{Rational(1, 2), L}, {Rational(3, 2), L}});
    CHECK(dpss::impending_impact_event_for_uav(0, chase));  // heading to 0
    CHECK(!dpss::impending_impact_event_for_uav(1, chase));
}

TEST_CASE("exact times to impact") {
    // Head-on pair closing a gap of 1 at combined speed 2.
    const Ensemble head_on = make(2, {{Rational(1, 2), R}, {Rational(3, 2), L}});
    CHECK(dpss::min_time_to_impact_for_uav(0, head_on) == Rational(1, 2));
    CHECK(dpss::min_time_to_impact_for_uav(1, head_on) == Rational(1, 2));
    CHECK(dpss::always_smallest_min_time_to_impending_impact(head_on) ==
          Rational(1, 2));

    // Escort pair drifting left from 3/2: follower reaches boundary 1 after
    // 1/2, leader reaches endpoint 0 after 3/2.
    const Ensemble escort = make(2, {{Rational(3, 2), L}, {Rational(3, 2), L}});
    CHECK(dpss::min_time_to_impact_for_uav(1, escort) == Rational(1, 2));
    CHECK(dpss::min_time_to_impact_for_uav(0, escort) == Rational(3, 2));
    CHECK(dpss::always_smallest_min_time_to_impending_impact(escort) ==
          Rational(1, 2));

    // Fresh co-located pair heading right from 1/8: the leader's endpoint leg
    // is the only impending impact (7/8 of the perimeter at speed 1).
    const Ensemble sprint = make(2, {{Rational(1, 8), R}, {Rational(1, 8), R}});
    CHECK(dpss::min_time_to_impact_for_uav(1, sprint) == Rational(15, 8));
    CHECK(dpss::always_smallest_min_time_to_impending_impact(sprint) ==
          Rational(7, 8));
}

TEST_CASE("min time is zero exactly on eventful states") {
    const Ensemble met = make(2, {{Rational(1), R}, {Rational(1), L}});
    CHECK(dpss::min_time_to_impact_for_uav(0, met) == 0);
    CHECK(dpss::min_time_to_impact_for_uav(1, met) == 0);

    const Ensemble at_left = make(1, {{Rational(0), L}});
    CHECK(dpss::min_time_to_impact_for_uav(0, at_left) == 0);
}

TEST_CASE("rule injection substitutes the event predicate") {
    const Ensemble met = make(2, {{Rational(1), R}, {Rational(1), L}});
    const dpss::EventRule nobody = [](std::size_t, const Ensemble&) {
        return false;
    };
    const Ensemble unchanged = dpss::flip_on_events(met, nobody);
    CHECK(unchanged == met);

    const dpss::EventRule everybody = [](std::size_t, const Ensemble&) {
        return true;
    };
    const Ensemble all = dpss::flip_on_events(met, everybody);
    CHECK(all.uav(0).direction == L);
    CHECK(all.uav(1).direction == R);
}

TEST_CASE("events depend only on the local neighbourhood") {
    dpss::Rng rng(7);
    dpss::GeneratorConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 8;
    for (int k = 0; k < 60; ++k) {
        const Ensemble ens = dpss::random_wf_ensemble(rng, cfg);
        const std::size_t n = ens.count();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j + 2 <= i || j >= i + 2) {
                    auto states = ens.uavs();
                    states[j].direction = dpss::opposite(states[j].direction);
                    const Ensemble tweaked(ens.perimeter(), std::move(states));
                    CHECK(dpss::event_for_uav(i, tweaked) ==
                          dpss::event_for_uav(i, ens));
                    CHECK(dpss::impending_impact_event_for_uav(i, tweaked) ==
                          dpss::impending_impact_event_for_uav(i, ens));
                }
            }
        }
    }
}

TEST_CASE("event predicates commute with reflection") {
    dpss::Rng rng(13);
    dpss::GeneratorConfig cfg;
    for (int k = 0; k < 80; ++k) {
        const Ensemble ens = dpss::random_wf_ensemble(rng, cfg);
        const Ensemble mirrored = dpss::reflect(ens);
        const std::size_t n = ens.count();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(dpss::event_for_uav(i, ens) ==
                  dpss::event_for_uav(n - 1 - i, mirrored));
            CHECK(dpss::impending_impact_event_for_uav(i, ens) ==
                  dpss::impending_impact_event_for_uav(n - 1 - i, mirrored));
            CHECK(dpss::min_time_to_impact_for_uav(i, ens) ==
                  dpss::min_time_to_impact_for_uav(n - 1 - i, mirrored));
        }
        CHECK(dpss::reflect(dpss::flip_on_events(ens)) ==
              dpss::flip_on_events(mirrored));
    }
}
