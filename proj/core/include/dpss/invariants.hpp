#pragma once

#include "dpss/ensemble.hpp"
#include "dpss/stepper.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dpss {

// Pairwise coordination predicates over fleet states.  These are meaningful
// at flip-quiescent states (a direction is ambiguous at an un-flipped event
// landing).  have_met_left_p(i) constrains UAV i against its right neighbour
// as seen in the leftward sweep; the right variants are the mirror images,
// evaluated by reflecting the ensemble.
bool have_met_left_p(std::size_t i, const Ensemble& ens);
bool have_met_right_p(std::size_t i, const Ensemble& ens);
bool left_synchronized_p(std::size_t j, const Ensemble& ens);
bool right_synchronized_p(std::size_t j, const Ensemble& ens);

bool all_have_met_p(const Ensemble& ens);
bool all_synchronized_p(const Ensemble& ens);

// UAV i is inside its own segment [i*S, (i+1)*S].
bool uav_contained_p(std::size_t i, const Ensemble& ens);
bool all_contained_p(const Ensemble& ens);

// Location periodicity with period 2: every UAV is back at its current
// location after step_time(2).  Directions are deliberately not compared.
bool location_convergence_p(const Ensemble& ens, const StepBudget& budget);
bool location_convergence_p(const Ensemble& ens);

// ---------------------------------------------------------------------------
// Runtime monitors: replay a scenario event by event and keep per-predicate
// timelines, regression checks, and event statistics.

struct PredicateTimeline {
    std::optional<Rational> first_true;
    std::optional<Rational> last_false;
    // Earliest observed time from which the predicate held at every later
    // observation; empty if it was false at the final observation.
    std::optional<Rational> stable_from;
};

struct MonitorViolation {
    Rational time;
    std::string rule;
    std::string detail;
};

// A UAV that was co-located with a flipping neighbour without flipping
// itself took part in that event; the monitor records whether the
// corresponding met predicate held afterwards, without asserting it.
struct EscortNote {
    Rational time;
    std::size_t participant = 0;
    std::size_t flipping_neighbor = 0;
    bool met_after = false;
};

struct MonitorReport {
    std::size_t n = 0;
    Rational horizon;

    // Per-UAV first times: the UAV's own flip, and the earlier of its own
    // flip or a co-located participation in a neighbour's flip.
    std::vector<std::optional<Rational>> first_own_event;
    std::vector<std::optional<Rational>> first_impact;

    // Timelines per UAV, observed at flip-quiescent states.
    std::vector<PredicateTimeline> met_left, met_right, sync_left, sync_right;
    std::vector<PredicateTimeline> contained;

    // First observation at which every met (resp. synchronized) predicate
    // held simultaneously.
    std::optional<Rational> all_met_from;
    std::optional<Rational> all_sync_from;

    std::vector<MonitorViolation> violations;
    std::vector<EscortNote> escort_notes;

    std::size_t observation_count = 0;    // includes t = 0 and the horizon landing
    std::size_t event_instant_count = 0;  // observations at which >= 1 UAV flipped
    // Largest number of event instants inside any closed window one time
    // unit wide — a measurement of event density, not an assertion.
    std::size_t max_events_per_unit = 0;

    Ensemble final_state;  // flip-quiescent state at the horizon
};

// Replays the scenario from t = 0 to t = horizon, observing the initial
// state, every event instant, and the horizon landing.  The budget bounds
// the number of event rounds (FuelExhausted beyond it).  Violation rules:
//   met_left_regression / met_right_regression  — a met predicate went
//     true -> false at a later observation (met predicates are
//     unconditionally invariant once true);
//   sync_left_regression / sync_right_regression — a synchronized predicate
//     went true -> false from an established state: at the previous
//     observation, every met predicate on that side held and the
//     synchronized chain from the outer end through this index held.  A
//     coincidentally-true synchronized predicate ahead of the establishment
//     wave may regress; that is normal dynamics and is not flagged;
//   flip_without_met — a UAV flipped at a positive time (ending a travelled
//     leg) but the met predicate for the side it just visited was false
//     immediately afterwards.  Flips resolved at t = 0 merely normalise an
//     arbitrary starting state and carry no met guarantee.
MonitorReport run_monitors(const Ensemble& ens, const Rational& horizon,
                           const StepBudget& budget);

// Bound assertions over a finished report, each failure described in one
// line.  Asserted only when the horizon makes them observable:
//   horizon >= N:      every first own event time <= N; every met timeline
//                      stable from <= N;
//   horizon >= 2N-1:   every synchronized and containment timeline stable
//                      from <= 2N-1.
// Recorded violations always count as failures.
std::vector<std::string> monitor_assertion_failures(const MonitorReport& report);

std::string to_json_string(const MonitorReport& report);

// ---------------------------------------------------------------------------
// Convergence verdict for one scenario.

struct ConvergenceReport {
    std::size_t n = 0;
    Rational bound;  // 2N - 1
    bool pass = false;
    // Periodicity re-checked 4 and 6 units past the bound.
    bool pass_plus_4 = false;
    bool pass_plus_6 = false;
    // Earliest observed flip-quiescent time (event-aligned, up to the bound)
    // at which the periodicity check already passes; informational.
    std::optional<Rational> earliest_pass;
};

// Checks location periodicity at t = 2N-1 and at the two spot-check offsets,
// and scans event-aligned states up to the bound for the earliest pass.
ConvergenceReport convergence_report(const Ensemble& ens, const StepBudget& budget);

std::string to_json_string(const ConvergenceReport& report);

}  // namespace dpss
