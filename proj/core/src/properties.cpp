#include "dpss/properties.hpp"

#include "dpss/errors.hpp"
#include "dpss/invariants.hpp"
#include "dpss/rational.hpp"
#include "dpss/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>

namespace dpss {

namespace {

std::string describe_event(const OracleEvent& e) {
    return "(t=" + format_rational(e.time) + ", uav " + std::to_string(e.uav) +
           " at " + format_rational(e.location) + ")";
}

EventRule default_rule() {
    return [](std::size_t i, const Ensemble& e) { return event_for_uav(i, e); };
}

}  // namespace

std::vector<OracleEvent> engine_event_sequence(const Ensemble& ens,
                                               const Rational& horizon,
                                               const StepBudget& budget,
                                               const EventRule& rule) {
    std::vector<OracleEvent> out;
    Rational t = 0;
    Ensemble post = flip_on_events(ens, rule);
    std::uint64_t fuel = budget.fuel;
    while (true) {
        const Rational tstar = always_smallest_min_time_to_impending_impact(post);
        if (t + tstar > horizon) break;
        if (fuel == 0) throw FuelExhausted(format_rational(horizon - t), budget.fuel);
        --fuel;
        t += tstar;
        const Ensemble landed = update_location_all(tstar, post);
        for (std::size_t i = 0; i < landed.count(); ++i) {
            if (rule(i, landed)) out.push_back(OracleEvent{t, i, landed.uav(i).location});
        }
        Ensemble next = flip_on_events(landed, rule);
        // A zero advance that flips nobody can never progress; fail fast
        // instead of burning the whole budget (seen only with broken rules).
        if (tstar == 0 && next == post) {
            throw SimulationFault("event loop stalled: zero advance and no flip");
        }
        post = std::move(next);
    }
    return out;
}

std::vector<OracleEvent> engine_event_sequence(const Ensemble& ens,
                                               const Rational& horizon,
                                               const StepBudget& budget) {
    return engine_event_sequence(ens, horizon, budget, default_rule());
}

std::optional<std::string> check_flip_quiescence(const Ensemble& ens,
                                                 const EventRule& rule) {
    const Ensemble post = flip_on_events(ens, rule);
    for (std::size_t i = 0; i < post.count(); ++i) {
        if (rule(i, post)) {
            return "event still pending for uav " + std::to_string(i) +
                   " after a simultaneous flip pass";
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_flip_quiescence(const Ensemble& ens) {
    return check_flip_quiescence(ens, default_rule());
}

std::optional<std::string> check_impact_existence(const Ensemble& ens) {
    for (std::size_t i = 0; i < ens.count(); ++i) {
        if (impending_impact_event_for_uav(i, ens)) return std::nullopt;
    }
    return "no UAV has an impending impact";
}

std::optional<std::string> check_exact_min_impact(const Ensemble& ens) {
    const Ensemble post = flip_on_events(ens);
    const Rational tstar = always_smallest_min_time_to_impending_impact(post);
    if (tstar <= 0) {
        return "flip-quiescent state has non-positive minimum impact time " +
               format_rational(tstar);
    }
    const Ensemble landed = update_location_all(tstar, post);
    bool any = false;
    for (std::size_t i = 0; i < landed.count() && !any; ++i) {
        any = event_for_uav(i, landed);
    }
    if (!any) {
        return "advancing by the minimum impact time " + format_rational(tstar) +
               " landed no event";
    }
    const Ensemble halfway = update_location_all(tstar / 2, post);
    for (std::size_t i = 0; i < halfway.count(); ++i) {
        if (event_for_uav(i, halfway)) {
            return "an event fired at half the minimum impact time (uav " +
                   std::to_string(i) + ")";
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_wf_preserved(const Ensemble& ens, const Rational& dt) {
    const Ensemble stepped = step_time(dt, ens);
    if (!wf_ensemble(stepped)) {
        return "step_time(" + format_rational(dt) + ") produced an ill-formed ensemble";
    }
    return std::nullopt;
}

std::optional<std::string> check_step_composition(const Ensemble& ens,
                                                  const Rational& a,
                                                  const Rational& b) {
    const Ensemble joint = step_time(a + b, ens);
    const Ensemble nested = step_time(b, step_time(a, ens));
    if (joint != nested) {
        return "step_time(" + format_rational(a) + " + " + format_rational(b) +
               ") differs from the nested computation";
    }
    return std::nullopt;
}

std::optional<std::string> check_reflection_conjugacy(const Ensemble& ens,
                                                      const Rational& dt) {
    const Ensemble via_state = reflect(step_time(dt, ens));
    const Ensemble via_mirror = step_time(dt, reflect(ens));
    if (via_state != via_mirror) {
        return "reflect(step_time(" + format_rational(dt) +
               ")) differs from step_time of the reflection";
    }
    return std::nullopt;
}

std::optional<std::string> check_convergence_bound(const Ensemble& ens) {
    const std::size_t n = ens.count();
    const Rational bound = 2 * Rational(n) - 1;
    const StepBudget probe = StepBudget::for_duration(2, n);
    const Ensemble at_bound = step_time(bound, ens, StepBudget::for_duration(bound, n));
    if (!location_convergence_p(at_bound, probe)) {
        return "locations not periodic at the bound " + format_rational(bound);
    }
    const Ensemble plus4 = step_time(4, at_bound, StepBudget::for_duration(4, n));
    if (!location_convergence_p(plus4, probe)) {
        return "locations not periodic at bound + 4";
    }
    const Ensemble plus6 = step_time(2, plus4, probe);
    if (!location_convergence_p(plus6, probe)) {
        return "locations not periodic at bound + 6";
    }
    return std::nullopt;
}

std::optional<std::string> check_oracle_agreement(const Ensemble& ens,
                                                  const EventRule& rule) {
    const std::size_t n = ens.count();
    if (n > 3) return std::nullopt;
    const Rational horizon = 2 * Rational(n) + 2;
    const std::vector<OracleEvent> expected = enumerate_events_small(ens, horizon);
    std::vector<OracleEvent> got;
    try {
        got = engine_event_sequence(ens, horizon, StepBudget::for_duration(horizon, n),
                                    rule);
    } catch (const std::exception& e) {
        return std::string("engine event sequence failed: ") + e.what();
    }
    if (expected != got) {
        const std::size_t limit = std::min(expected.size(), got.size());
        for (std::size_t k = 0; k < limit; ++k) {
            if (!(expected[k] == got[k])) {
                return "event " + std::to_string(k) + " differs: oracle " +
                       describe_event(expected[k]) + ", engine " +
                       describe_event(got[k]);
            }
        }
        return "oracle found " + std::to_string(expected.size()) +
               " events, engine found " + std::to_string(got.size());
    }
    return std::nullopt;
}

std::optional<std::string> check_oracle_agreement(const Ensemble& ens) {
    return check_oracle_agreement(ens, default_rule());
}

std::optional<std::string> check_triangle_agreement(const Ensemble& ens,
                                                    const Rational& t) {
    if (ens.count() != 1) return "triangle agreement requires a single vehicle";
    const auto [loc, dir] = triangle_trajectory(ens.uav(0).location,
                                                ens.uav(0).direction, t,
                                                ens.perimeter());
    const Ensemble stepped = step_time(t, ens);
    if (stepped.uav(0).location != loc || stepped.uav(0).direction != dir) {
        return "closed form gives (" + format_rational(loc) + ", " +
               std::to_string(direction_sign(dir)) + ") at t=" + format_rational(t) +
               " but step_time gives (" + format_rational(stepped.uav(0).location) +
               ", " + std::to_string(direction_sign(stepped.uav(0).direction)) + ")";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct CaseResult {
    std::vector<std::pair<std::string, std::string>> failures;  // (property, detail)
    std::string scenario;
};

// Distinct per-case stream: splitmix64 of the campaign seed and case index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CaseResult run_case(const GeneratorConfig& cfg, std::uint64_t index,
                    const EventRule* rule) {
    Rng rng(mix_seed(cfg.seed, index));
    const Ensemble ens = random_wf_ensemble(rng, cfg);
    const std::size_t n = ens.count();
    const Rational span = Rational(n) + 1;
    const Rational dt = rng.rational_up_to(span, cfg.max_denominator);
    const Rational a = rng.rational_up_to(span, cfg.max_denominator);
    const Rational b = rng.rational_up_to(span, cfg.max_denominator);
    const Rational t1 = rng.rational_up_to(span, cfg.max_denominator);

    CaseResult result;
    result.scenario = emit_scenario(ens);
    auto run = [&](const char* property, auto&& check) {
        std::optional<std::string> failure;
        try {
            failure = check();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure) result.failures.emplace_back(property, *failure);
    };

    run("flip_quiescence", [&] {
        return rule ? check_flip_quiescence(ens, *rule) : check_flip_quiescence(ens);
    });
    run("impact_existence", [&] { return check_impact_existence(ens); });
    run("exact_min_impact", [&] { return check_exact_min_impact(ens); });
    run("wf_preserved", [&] { return check_wf_preserved(ens, dt); });
    run("step_composition", [&] { return check_step_composition(ens, a, b); });
    run("reflection_conjugacy", [&] { return check_reflection_conjugacy(ens, dt); });
    run("convergence_bound", [&] { return check_convergence_bound(ens); });
    run("oracle_agreement", [&] {
        return rule ? check_oracle_agreement(ens, *rule) : check_oracle_agreement(ens);
    });
    if (n == 1) {
        run("triangle_agreement", [&] { return check_triangle_agreement(ens, t1); });
    }
    return result;
}

}  // namespace

FuzzSummary run_fuzz_campaign(const GeneratorConfig& cfg, std::uint64_t cases,
                              unsigned jobs, const EventRule* rule) {
    std::vector<CaseResult> results(cases);
    unsigned workers = std::max(1u, jobs);
    if (cases < workers) workers = cases == 0 ? 1 : static_cast<unsigned>(cases);
    if (workers <= 1) {
        for (std::uint64_t k = 0; k < cases; ++k) results[k] = run_case(cfg, k, rule);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto body = [&] {
            for (;;) {
                const std::uint64_t k = next.fetch_add(1);
                if (k >= cases) return;
                results[k] = run_case(cfg, k, rule);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (std::thread& th : pool) th.join();
    }

    FuzzSummary summary;
    summary.cases = cases;
    for (std::uint64_t k = 0; k < cases; ++k) {
        const CaseResult& r = results[k];
        if (r.failures.empty()) continue;
        ++summary.failed_cases;
        for (const auto& [property, detail] : r.failures) {
            ++summary.failures_by_property[property];
            if (!summary.first_failure) {
                summary.first_failure =
                    PropertyFailure{k, property, detail, r.scenario};
            }
        }
    }
    return summary;
}

std::string to_json_string(const FuzzSummary& summary, const GeneratorConfig& cfg) {
    nlohmann::json perims = nlohmann::json::array();
    for (const Rational& p : cfg.perimeters) perims.push_back(format_rational(p));
    nlohmann::json by_property = nlohmann::json::object();
    for (const auto& [property, count] : summary.failures_by_property) {
        by_property[property] = count;
    }
    nlohmann::json first = nullptr;
    if (summary.first_failure) {
        first = {{"case_index", summary.first_failure->case_index},
                 {"property", summary.first_failure->property},
                 {"detail", summary.first_failure->detail},
                 {"scenario", nlohmann::json::parse(summary.first_failure->scenario)}};
    }
    const nlohmann::json j{{"cases", summary.cases},
                           {"failed_cases", summary.failed_cases},
                           {"failures_by_property", by_property},
                           {"first_failure", first},
                           {"config",
                            {{"seed", cfg.seed},
                             {"n_min", cfg.n_min},
                             {"n_max", cfg.n_max},
                             {"max_denominator", cfg.max_denominator},
                             {"perimeters", perims}}}};
    return j.dump(2);
}

}  // namespace dpss
