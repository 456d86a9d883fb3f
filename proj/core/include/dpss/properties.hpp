#pragma once

#include "dpss/ensemble.hpp"
#include "dpss/event_engine.hpp"
#include "dpss/oracle.hpp"
#include "dpss/stepper.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dpss {

// Event sequence as the engine produces it: iterate event-to-event steps and
// record every UAV whose event fires at each landing, up to and including
// `horizon`.  Matches the oracle's output format (per-instant rows in
// ascending UAV order; turns pending at t = 0 are resolved, not reported).
// The rule overload runs the whole loop under a substituted event rule.
std::vector<OracleEvent> engine_event_sequence(const Ensemble& ens,
                                               const Rational& horizon,
                                               const StepBudget& budget);
std::vector<OracleEvent> engine_event_sequence(const Ensemble& ens,
                                               const Rational& horizon,
                                               const StepBudget& budget,
                                               const EventRule& rule);

// Property checks: nullopt on pass, otherwise a one-line failure description.
// Each takes a well-formed ensemble.

// After one simultaneous flip pass, no event remains.
std::optional<std::string> check_flip_quiescence(const Ensemble& ens);
std::optional<std::string> check_flip_quiescence(const Ensemble& ens,
                                                 const EventRule& rule);
// At least one UAV always has an impending impact.
std::optional<std::string> check_impact_existence(const Ensemble& ens);
// The global minimum impact time is exact: advancing a quiescent state by it
// lands at least one event, advancing by half of it lands none.
std::optional<std::string> check_exact_min_impact(const Ensemble& ens);
// Stepping preserves well-formedness.
std::optional<std::string> check_wf_preserved(const Ensemble& ens, const Rational& dt);
// step_time(a+b) equals step_time(b) after step_time(a), exactly.
std::optional<std::string> check_step_composition(const Ensemble& ens,
                                                  const Rational& a,
                                                  const Rational& b);
// reflect(step_time(dt, ens)) equals step_time(dt, reflect(ens)), exactly.
std::optional<std::string> check_reflection_conjugacy(const Ensemble& ens,
                                                      const Rational& dt);
// Location periodicity holds at t = 2N-1 and at the +4 / +6 spot checks.
std::optional<std::string> check_convergence_bound(const Ensemble& ens);
// For N <= 3: the engine's event sequence equals the independent oracle's
// over horizon 2N+2.  Passes vacuously for larger fleets.  The rule overload
// drives the engine side with a substituted event rule (for mutation tests).
std::optional<std::string> check_oracle_agreement(const Ensemble& ens);
std::optional<std::string> check_oracle_agreement(const Ensemble& ens,
                                                  const EventRule& rule);
// For N == 1: step_time agrees with the closed-form bounce trajectory at t.
std::optional<std::string> check_triangle_agreement(const Ensemble& ens,
                                                    const Rational& t);

struct PropertyFailure {
    std::uint64_t case_index = 0;
    std::string property;
    std::string detail;
    std::string scenario;  // re-emittable scenario document
};

struct FuzzSummary {
    std::uint64_t cases = 0;
    std::uint64_t failed_cases = 0;
    std::map<std::string, std::uint64_t> failures_by_property;
    std::optional<PropertyFailure> first_failure;
};

// Runs `cases` seeded cases, each on a fresh generated ensemble: quiescence,
// existence, exact minimum impact, wf preservation, composition, reflection
// conjugacy, convergence at 2N-1, and oracle agreement (N <= 3, plus the
// closed-form trajectory for N = 1).  Case k derives its own deterministic
// stream from cfg.seed and k, so results are independent of scheduling;
// workers share nothing and the summary aggregates in case order.  A non-null
// `rule` substitutes the event rule in the rule-sensitive checks (quiescence
// and oracle agreement), which is how the robustness tests prove a corrupted
// engine gets caught.
FuzzSummary run_fuzz_campaign(const GeneratorConfig& cfg, std::uint64_t cases,
                              unsigned jobs, const EventRule* rule = nullptr);

std::string to_json_string(const FuzzSummary& summary, const GeneratorConfig& cfg);

}  // namespace dpss
