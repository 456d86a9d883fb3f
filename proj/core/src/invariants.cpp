#include "dpss/invariants.hpp"

#include "dpss/errors.hpp"
#include "dpss/event_engine.hpp"
#include "dpss/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <utility>

namespace dpss {

bool have_met_left_p(std::size_t i, const Ensemble& ens) {
    const UavState& u = ens.uav(i);
    if (i + 1 >= ens.count()) return true;
    if (u.direction != Direction::Left) return true;
    const UavState& right = ens.uav(i + 1);
    const Rational rb = uav_right_boundary(i, ens);
    if (rb < u.location) {
        // Past its own right boundary: the right neighbour must be escorting
        // it back (co-located, both heading left).
        return right.direction == Direction::Left && u.location == right.location;
    }
    const Rational lb = uav_left_boundary(i, ens);
    if (lb < u.location) {
        // Inside its segment, off the left boundary: equidistant from the
        // shared boundary with its right neighbour and, when strictly left
        // of that boundary, the neighbour is inbound.
        if (u.location < rb && right.direction != Direction::Right) return false;
        return average(u.location, right.location) == rb;
    }
    return true;
}

bool left_synchronized_p(std::size_t j, const Ensemble& ens) {
    const UavState& u = ens.uav(j);
    if (j == 0) return true;
    const UavState& left = ens.uav(j - 1);
    if (uav_left_boundary(j, ens) > average(left.location, u.location)) return false;
    if (u.direction == Direction::Left && u.location != left.location &&
        left.direction != Direction::Right) {
        return false;
    }
    return true;
}

bool have_met_right_p(std::size_t i, const Ensemble& ens) {
    const std::size_t n = ens.count();
    ens.uav(i);  // bounds check
    return have_met_left_p(n - 1 - i, reflect(ens));
}

bool right_synchronized_p(std::size_t j, const Ensemble& ens) {
    const std::size_t n = ens.count();
    ens.uav(j);  // bounds check
    return left_synchronized_p(n - 1 - j, reflect(ens));
}

bool all_have_met_p(const Ensemble& ens) {
    const Ensemble mirrored = reflect(ens);
    const std::size_t n = ens.count();
    for (std::size_t i = 0; i < n; ++i) {
        if (!have_met_left_p(i, ens)) return false;
        if (!have_met_left_p(n - 1 - i, mirrored)) return false;
    }
    return true;
}

bool all_synchronized_p(const Ensemble& ens) {
    const Ensemble mirrored = reflect(ens);
    const std::size_t n = ens.count();
    for (std::size_t j = 0; j < n; ++j) {
        if (!left_synchronized_p(j, ens)) return false;
        if (!left_synchronized_p(n - 1 - j, mirrored)) return false;
    }
    return true;
}

bool uav_contained_p(std::size_t i, const Ensemble& ens) {
    const UavState& u = ens.uav(i);
    return uav_left_boundary(i, ens) <= u.location &&
           u.location <= uav_right_boundary(i, ens);
}

bool all_contained_p(const Ensemble& ens) {
    for (std::size_t i = 0; i < ens.count(); ++i) {
        if (!uav_contained_p(i, ens)) return false;
    }
    return true;
}

bool location_convergence_p(const Ensemble& ens, const StepBudget& budget) {
    const Ensemble later = step_time(2, ens, budget);
    for (std::size_t i = 0; i < ens.count(); ++i) {
        if (later.uav(i).location != ens.uav(i).location) return false;
    }
    return true;
}

bool location_convergence_p(const Ensemble& ens) {
    return location_convergence_p(ens, StepBudget::for_duration(2, ens.count()));
}

// ---------------------------------------------------------------------------

namespace {

struct TimelineTracker {
    PredicateTimeline line;

    // Returns true when the predicate is false now but was true at some
    // earlier observation.
    bool note(const Rational& t, bool value) {
        bool regressed = false;
        if (value) {
            if (!line.first_true) line.first_true = t;
            if (!line.stable_from) line.stable_from = t;
        } else {
            regressed = line.first_true.has_value();
            line.last_false = t;
            line.stable_from.reset();
        }
        return regressed;
    }
};

}  // namespace

MonitorReport run_monitors(const Ensemble& ens, const Rational& horizon,
                           const StepBudget& budget) {
    if (horizon < 0) throw std::invalid_argument("run_monitors requires horizon >= 0");
    const std::size_t n = ens.count();

    MonitorReport rep;
    rep.n = n;
    rep.horizon = horizon;
    rep.first_own_event.resize(n);
    rep.first_impact.resize(n);

    std::vector<TimelineTracker> met_l(n), met_r(n), sync_l(n), sync_r(n), cont(n);
    std::vector<Rational> event_times;

    // Previous observation's predicate values, for the persistence checks.
    std::vector<bool> prev_ml(n), prev_mr(n), prev_sl(n), prev_sr(n);
    bool have_prev = false;

    auto observe = [&](const Rational& t, const Ensemble& pre, const Ensemble& post,
                       const std::vector<bool>& flipped, bool any_flip) {
        ++rep.observation_count;
        const Ensemble mirrored = reflect(post);

        if (any_flip) {
            event_times.push_back(t);
            for (std::size_t i = 0; i < n; ++i) {
                if (!flipped[i]) continue;
                if (!rep.first_own_event[i]) rep.first_own_event[i] = t;
                if (!rep.first_impact[i]) rep.first_impact[i] = t;
                // A flip at a positive time marks the end of a travelled leg
                // that visited one side; the met predicate facing that side
                // must hold afterwards.  Flips resolved at t = 0 are initial
                // boundary-condition cleanup, not travelled legs, so no met
                // fact is implied there.
                if (t == 0) continue;
                const bool was_left = pre.uav(i).direction == Direction::Left;
                const bool met = was_left
                                     ? have_met_left_p(n - 1 - i, mirrored)  // met right variant
                                     : have_met_left_p(i, post);
                if (!met) {
                    rep.violations.push_back(MonitorViolation{
                        t, "flip_without_met",
                        "uav " + std::to_string(i) + " flipped " +
                            (was_left ? "leftward" : "rightward") +
                            " leg but the facing met predicate is false"});
                }
            }
            // Co-located non-flipping neighbours took part in the event.
            for (std::size_t j = 0; j < n; ++j) {
                if (flipped[j]) continue;
                if (j > 0 && flipped[j - 1] &&
                    pre.uav(j).location == pre.uav(j - 1).location) {
                    if (!rep.first_impact[j]) rep.first_impact[j] = t;
                    rep.escort_notes.push_back(EscortNote{
                        t, j, j - 1, have_met_left_p(n - 1 - j, mirrored)});
                }
                if (j + 1 < n && flipped[j + 1] &&
                    pre.uav(j).location == pre.uav(j + 1).location) {
                    if (!rep.first_impact[j]) rep.first_impact[j] = t;
                    rep.escort_notes.push_back(EscortNote{
                        t, j, j + 1, have_met_left_p(j, post)});
                }
            }
        }

        std::vector<bool> ml(n), mr(n), sl(n), sr(n);
        bool all_met_now = true;
        bool all_sync_now = true;
        for (std::size_t i = 0; i < n; ++i) {
            ml[i] = have_met_left_p(i, post);
            mr[i] = have_met_left_p(n - 1 - i, mirrored);
            sl[i] = left_synchronized_p(i, post);
            sr[i] = left_synchronized_p(n - 1 - i, mirrored);
            all_met_now = all_met_now && ml[i] && mr[i];
            all_sync_now = all_sync_now && sl[i] && sr[i];

            if (met_l[i].note(t, ml[i])) {
                rep.violations.push_back(MonitorViolation{
                    t, "met_left_regression",
                    "have_met_left(" + std::to_string(i) + ") went true -> false"});
            }
            if (met_r[i].note(t, mr[i])) {
                rep.violations.push_back(MonitorViolation{
                    t, "met_right_regression",
                    "have_met_right(" + std::to_string(i) + ") went true -> false"});
            }
            sync_l[i].note(t, sl[i]);
            sync_r[i].note(t, sr[i]);
            cont[i].note(t, uav_contained_p(i, post));
        }

        // Conditional persistence of synchronization: once every met
        // predicate on a side holds and the synchronized chain from the
        // outer end through index j holds, sync(j) must keep holding.  A
        // predicate that is only coincidentally true ahead of that chain may
        // regress without it being a defect.
        if (have_prev) {
            const auto held = [](const std::vector<bool>& v) {
                return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
            };
            bool chain = held(prev_ml);
            for (std::size_t j = 0; j < n && chain; ++j) {
                chain = prev_sl[j];
                if (chain && !sl[j]) {
                    rep.violations.push_back(MonitorViolation{
                        t, "sync_left_regression",
                        "left_synchronized(" + std::to_string(j) +
                            ") went true -> false although every have_met_left and"
                            " left_synchronized(0.." +
                            std::to_string(j) + ") held at the previous observation"});
                }
            }
            chain = held(prev_mr);
            for (std::size_t k = 0; k < n && chain; ++k) {
                const std::size_t j = n - 1 - k;
                chain = prev_sr[j];
                if (chain && !sr[j]) {
                    rep.violations.push_back(MonitorViolation{
                        t, "sync_right_regression",
                        "right_synchronized(" + std::to_string(j) +
                            ") went true -> false although every have_met_right and"
                            " right_synchronized(" +
                            std::to_string(j) + ".." + std::to_string(n - 1) +
                            ") held at the previous observation"});
                }
            }
        }
        prev_ml = std::move(ml);
        prev_mr = std::move(mr);
        prev_sl = std::move(sl);
        prev_sr = std::move(sr);
        have_prev = true;

        if (!rep.all_met_from && all_met_now) rep.all_met_from = t;
        if (!rep.all_sync_from && all_sync_now) rep.all_sync_from = t;
    };

    auto flags_of = [&](const Ensemble& state) {
        std::vector<bool> flipped(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            flipped[i] = event_for_uav(i, state);
            any = any || flipped[i];
        }
        return std::pair<std::vector<bool>, bool>(std::move(flipped), any);
    };

    Rational t = 0;
    Ensemble state = ens;
    auto [flipped, any] = flags_of(state);
    Ensemble post = flip_on_events(state);
    observe(t, state, post, flipped, any);

    std::uint64_t fuel = budget.fuel;
    while (t < horizon) {
        const Rational tstar = always_smallest_min_time_to_impending_impact(post);
        if (t + tstar >= horizon) {
            state = update_location_all(horizon - t, post);
            t = horizon;
        } else {
            if (fuel == 0) throw FuelExhausted(format_rational(horizon - t), budget.fuel);
            --fuel;
            t += tstar;
            state = update_location_all(tstar, post);
        }
        std::tie(flipped, any) = flags_of(state);
        post = flip_on_events(state);
        observe(t, state, post, flipped, any);
    }

    // Peak event density over a sliding closed window one unit wide.
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < event_times.size(); ++hi) {
        while (event_times[hi] - event_times[lo] > 1) ++lo;
        rep.max_events_per_unit = std::max(rep.max_events_per_unit, hi - lo + 1);
    }
    rep.event_instant_count = event_times.size();

    for (std::size_t i = 0; i < n; ++i) {
        rep.met_left.push_back(met_l[i].line);
        rep.met_right.push_back(met_r[i].line);
        rep.sync_left.push_back(sync_l[i].line);
        rep.sync_right.push_back(sync_r[i].line);
        rep.contained.push_back(cont[i].line);
    }
    rep.final_state = std::move(post);
    return rep;
}

std::vector<std::string> monitor_assertion_failures(const MonitorReport& report) {
    std::vector<std::string> failures;
    const Rational n_bound(report.n);
    const Rational sync_bound = 2 * Rational(report.n) - 1;

    auto check_stable = [&](const std::vector<PredicateTimeline>& lines,
                            const char* name, const Rational& bound) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const auto& sf = lines[i].stable_from;
            if (!sf) {
                failures.push_back(std::string(name) + "(" + std::to_string(i) +
                                   ") not established by the horizon");
            } else if (*sf > bound) {
                failures.push_back(std::string(name) + "(" + std::to_string(i) +
                                   ") stable only from " + format_rational(*sf) +
                                   " > " + format_rational(bound));
            }
        }
    };

    if (report.horizon >= n_bound) {
        for (std::size_t i = 0; i < report.first_own_event.size(); ++i) {
            const auto& fe = report.first_own_event[i];
            if (!fe) {
                failures.push_back("uav " + std::to_string(i) +
                                   " had no event within the horizon");
            } else if (*fe > n_bound) {
                failures.push_back("uav " + std::to_string(i) + " first event at " +
                                   format_rational(*fe) + " > " +
                                   format_rational(n_bound));
            }
        }
        check_stable(report.met_left, "have_met_left", n_bound);
        check_stable(report.met_right, "have_met_right", n_bound);
    }
    if (report.horizon >= sync_bound) {
        check_stable(report.sync_left, "left_synchronized", sync_bound);
        check_stable(report.sync_right, "right_synchronized", sync_bound);
        check_stable(report.contained, "contained", sync_bound);
    }
    for (const MonitorViolation& v : report.violations) {
        failures.push_back("violation at t=" + format_rational(v.time) + " [" +
                           v.rule + "]: " + v.detail);
    }
    return failures;
}

ConvergenceReport convergence_report(const Ensemble& ens, const StepBudget& budget) {
    const std::size_t n = ens.count();
    ConvergenceReport rep;
    rep.n = n;
    rep.bound = 2 * Rational(n) - 1;

    const StepBudget probe = StepBudget::for_duration(2, n);

    // Scan event-aligned quiescent states up to the bound for the earliest
    // time the periodicity check already passes.
    Rational t = 0;
    Ensemble post = flip_on_events(ens);
    std::uint64_t fuel = budget.fuel;
    while (true) {
        if (!rep.earliest_pass && location_convergence_p(post, probe)) {
            rep.earliest_pass = t;
        }
        if (t >= rep.bound) break;
        const Rational tstar = always_smallest_min_time_to_impending_impact(post);
        Rational advance = tstar;
        if (t + tstar >= rep.bound) {
            advance = rep.bound - t;
            t = rep.bound;
        } else {
            if (fuel == 0) throw FuelExhausted(format_rational(rep.bound - t), budget.fuel);
            --fuel;
            t += tstar;
        }
        post = flip_on_events(update_location_all(advance, post));
    }

    rep.pass = location_convergence_p(post, probe);
    const Ensemble plus4 = step_time(4, post, StepBudget::for_duration(4, n));
    rep.pass_plus_4 = location_convergence_p(plus4, probe);
    const Ensemble plus6 = step_time(2, plus4, probe);
    rep.pass_plus_6 = location_convergence_p(plus6, probe);
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json json_of(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return format_rational(*r);
}

nlohmann::json json_of(const std::vector<PredicateTimeline>& lines) {
    nlohmann::json arr = nlohmann::json::array();
    for (const PredicateTimeline& line : lines) {
        arr.push_back({{"first_true", json_of(line.first_true)},
                       {"last_false", json_of(line.last_false)},
                       {"stable_from", json_of(line.stable_from)}});
    }
    return arr;
}

nlohmann::json json_of_state(const Ensemble& ens) {
    nlohmann::json uavs = nlohmann::json::array();
    for (const UavState& u : ens.uavs()) {
        uavs.push_back({{"location", format_rational(u.location)},
                        {"direction", direction_sign(u.direction)}});
    }
    return {{"perimeter", format_rational(ens.perimeter())},
            {"n", ens.count()},
            {"uavs", uavs}};
}

}  // namespace

std::string to_json_string(const MonitorReport& report) {
    nlohmann::json first_own = nlohmann::json::array();
    for (const auto& t : report.first_own_event) first_own.push_back(json_of(t));
    nlohmann::json first_impact = nlohmann::json::array();
    for (const auto& t : report.first_impact) first_impact.push_back(json_of(t));

    nlohmann::json violations = nlohmann::json::array();
    for (const MonitorViolation& v : report.violations) {
        violations.push_back({{"time", format_rational(v.time)},
                              {"rule", v.rule},
                              {"detail", v.detail}});
    }
    nlohmann::json notes = nlohmann::json::array();
    for (const EscortNote& e : report.escort_notes) {
        notes.push_back({{"time", format_rational(e.time)},
                         {"participant", e.participant},
                         {"flipping_neighbor", e.flipping_neighbor},
                         {"met_after", e.met_after}});
    }

    nlohmann::json j{
        {"n", report.n},
        {"horizon", format_rational(report.horizon)},
        {"first_own_event", first_own},
        {"first_impact", first_impact},
        {"predicates",
         {{"have_met_left", json_of(report.met_left)},
          {"have_met_right", json_of(report.met_right)},
          {"left_synchronized", json_of(report.sync_left)},
          {"right_synchronized", json_of(report.sync_right)},
          {"contained", json_of(report.contained)}}},
        {"all_met_from", json_of(report.all_met_from)},
        {"all_sync_from", json_of(report.all_sync_from)},
        {"violations", violations},
        {"escort_notes", notes},
        {"observations", report.observation_count},
        {"event_instants", report.event_instant_count},
        {"max_events_per_unit", report.max_events_per_unit},
        {"final_state", json_of_state(report.final_state)}};
    return j.dump(2);
}

std::string to_json_string(const ConvergenceReport& report) {
    nlohmann::json j{{"n", report.n},
                     {"bound", format_rational(report.bound)},
                     {"pass", report.pass},
                     {"pass_plus_4", report.pass_plus_4},
                     {"pass_plus_6", report.pass_plus_6},
                     {"earliest_event_aligned_pass", json_of(report.earliest_pass)}};
    return j.dump(2);
}

}  // namespace dpss
