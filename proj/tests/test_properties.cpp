#include "dpss/properties.hpp"

#include "dpss/ensemble.hpp"
#include "dpss/event_engine.hpp"
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

// A deliberately broken event rule: the co-location boundary comparisons are
// inverted (strictly-beyond instead of at-or-beyond), so escort turns at the
// boundary are missed.  Endpoint bounces are left intact.
bool corrupted_rule(std::size_t i, const Ensemble& ens) {
    const auto& u = ens.uav(i);
    const std::size_t n = ens.count();
    if (u.direction == Direction::Left) {
        if (i == 0) return u.location == 0;
        return ens.uav(i - 1).location == u.location &&
               u.location > dpss::uav_left_boundary(i, ens);
    }
    if (i + 1 == n) return u.location == ens.perimeter();
    return ens.uav(i + 1).location == u.location &&
           u.location < dpss::uav_right_boundary(i, ens);
}

}  // namespace

TEST_CASE("individual property checks pass on hand-picked states") {
    const Ensemble running = make(2, {{Rational(1, 2), R}, {Rational(3, 2), L}});
    const Ensemble met = make(2, {{Rational(1), R}, {Rational(1), L}});
    const Ensemble chase = make(2, {{Rational(0), R}, {Rational(1, 4), L}});

    for (const Ensemble& ens : {running, met, chase}) {
        CHECK(dpss::check_flip_quiescence(ens) == std::nullopt);
        CHECK(dpss::check_impact_existence(ens) == std::nullopt);
        CHECK(dpss::check_exact_min_impact(ens) == std::nullopt);
        CHECK(dpss::check_wf_preserved(ens, Rational(7, 3)) == std::nullopt);
        CHECK(dpss::check_step_composition(ens, Rational(5, 4), Rational(2, 3)) ==
              std::nullopt);
        CHECK(dpss::check_reflection_conjugacy(ens, Rational(9, 5)) ==
              std::nullopt);
        CHECK(dpss::check_convergence_bound(ens) == std::nullopt);
        CHECK(dpss::check_oracle_agreement(ens) == std::nullopt);
    }

    const Ensemble solo = make(1, {{Rational(2, 5), L}});
    CHECK(dpss::check_triangle_agreement(solo, Rational(13, 10)) == std::nullopt);
}

TEST_CASE("engine event sequence matches the oracle on the chase pair") {
    const Ensemble chase = make(2, {{Rational(0), R}, {Rational(1, 4), L}});
    const auto budget = dpss::StepBudget::for_duration(Rational(3), 2);
    const auto engine = dpss::engine_event_sequence(chase, Rational(3), budget);
    const auto oracle = dpss::enumerate_events_small(chase, Rational(3));
    CHECK(engine == oracle);
    REQUIRE(engine.size() == 6);
    CHECK(engine[0].time == Rational(1, 8));
    CHECK(engine[0].uav == 1);
}

TEST_CASE("fuzz campaign passes on the real rule") {
    dpss::GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.n_min = 1;
    cfg.n_max = 6;
    cfg.max_denominator = 32;
    const auto summary = dpss::run_fuzz_campaign(cfg, 50, 2);
    CHECK(summary.cases == 50);
    CHECK(summary.failed_cases == 0);
    CHECK(summary.failures_by_property.empty());
    CHECK(!summary.first_failure.has_value());
}

TEST_CASE("fuzz campaign results do not depend on the worker count") {
    dpss::GeneratorConfig cfg;
    cfg.seed = 9;
    cfg.n_max = 4;
    cfg.max_denominator = 16;
    const auto serial = dpss::run_fuzz_campaign(cfg, 30, 1);
    const auto parallel = dpss::run_fuzz_campaign(cfg, 30, 4);
    CHECK(serial.cases == parallel.cases);
    CHECK(serial.failed_cases == parallel.failed_cases);
    CHECK(serial.failures_by_property == parallel.failures_by_property);
    CHECK(serial.first_failure.has_value() == parallel.first_failure.has_value());
}

TEST_CASE("the campaign catches a corrupted event rule") {
    dpss::GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.n_min = 1;
    cfg.n_max = 3;
    cfg.max_denominator = 8;
    const dpss::EventRule rule = corrupted_rule;
    const auto summary = dpss::run_fuzz_campaign(cfg, 10, 2, &rule);
    CHECK(summary.cases == 10);
    CHECK(summary.failed_cases >= 1);
    REQUIRE(summary.first_failure.has_value());
    CHECK(!summary.first_failure->scenario.empty());
    CHECK(!summary.first_failure->detail.empty());
}

TEST_CASE("fuzz summary serializes to JSON") {
    dpss::GeneratorConfig cfg;
    cfg.seed = 3;
    cfg.n_max = 3;
    const auto summary = dpss::run_fuzz_campaign(cfg, 5, 1);
    const std::string json = dpss::to_json_string(summary, cfg);
    CHECK(json.find("\"cases\": 5") != std::string::npos);
    CHECK(json.find("\"failed_cases\": 0") != std::string::npos);
    CHECK(json.find("\"seed\": 3") != std::string::npos);
}
