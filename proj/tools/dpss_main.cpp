// dpss — exact-rational simulator and verification harness for the DPSS
// perimeter patrol protocol.
//
// Subcommands: simulate (event-aligned CSV trace), converge (periodicity
// verdict at the 2N-1 bound), check (runtime invariant monitors), fuzz
// (randomized property campaign).  Exit codes: 0 success, 1 property or
// assertion failure, 2 input/usage error, 3 step budget exhausted.

#include "dpss/errors.hpp"
#include "dpss/invariants.hpp"
#include "dpss/properties.hpp"
#include "dpss/rational.hpp"
#include "dpss/scenario.hpp"
#include "dpss/stepper.hpp"
#include "dpss/trace.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFuel = 3;

dpss::Ensemble load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dpss::ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw dpss::ScenarioError("cannot read scenario file: " + path);
    return dpss::parse_scenario(buffer.str());
}

dpss::Rational parse_scalar(const std::string& text, const char* what,
                            bool require_nonneg = true) {
    const auto value = dpss::parse_rational(text);
    if (!value) {
        throw dpss::ScenarioError(std::string(what) +
                                  " must be rational text (\"p\" or \"p/q\"), got \"" +
                                  text + "\"");
    }
    if (require_nonneg && *value < 0) {
        throw dpss::ScenarioError(std::string(what) + " must be non-negative");
    }
    return *value;
}

struct SimulateArgs {
    std::string scenario;
    std::string duration;
    std::string trace_out = "-";
    std::string sample;
    std::uint64_t fuel = 0;
    bool fuel_set = false;
};

int cmd_simulate(const SimulateArgs& args) {
    const dpss::Ensemble ens = load_scenario(args.scenario);
    const dpss::Rational duration = parse_scalar(args.duration, "--duration");
    std::optional<dpss::Rational> sample;
    if (!args.sample.empty()) {
        sample = parse_scalar(args.sample, "--sample");
        if (*sample <= 0) throw dpss::ScenarioError("--sample must be positive");
    }
    const dpss::StepBudget budget =
        args.fuel_set ? dpss::StepBudget{args.fuel}
                      : dpss::StepBudget::for_duration(duration, ens.count());

    const std::vector<dpss::TraceRow> rows =
        dpss::collect_trace(ens, duration, budget, sample);
    if (args.trace_out == "-") {
        dpss::write_trace_csv(std::cout, rows);
    } else {
        std::ofstream out(args.trace_out, std::ios::binary);
        if (!out) throw dpss::ScenarioError("cannot open trace file: " + args.trace_out);
        dpss::write_trace_csv(out, rows);
        if (!out) throw dpss::ScenarioError("cannot write trace file: " + args.trace_out);
    }
    return kExitOk;
}

struct ConvergeArgs {
    std::string scenario;
    std::uint64_t fuel = 0;
    bool fuel_set = false;
};

int cmd_converge(const ConvergeArgs& args) {
    const dpss::Ensemble ens = load_scenario(args.scenario);
    const dpss::Rational bound = 2 * dpss::Rational(ens.count()) - 1;
    const dpss::StepBudget budget =
        args.fuel_set ? dpss::StepBudget{args.fuel}
                      : dpss::StepBudget::for_duration(bound, ens.count());
    const dpss::ConvergenceReport report = dpss::convergence_report(ens, budget);
    std::cout << dpss::to_json_string(report) << "\n";
    return report.pass && report.pass_plus_4 && report.pass_plus_6 ? kExitOk
                                                                   : kExitFailure;
}

struct CheckArgs {
    std::string scenario;
    std::string horizon;
    std::uint64_t fuel = 0;
    bool fuel_set = false;
};

int cmd_check(const CheckArgs& args) {
    const dpss::Ensemble ens = load_scenario(args.scenario);
    const dpss::Rational horizon = parse_scalar(args.horizon, "--horizon");
    const dpss::StepBudget budget =
        args.fuel_set ? dpss::StepBudget{args.fuel}
                      : dpss::StepBudget::for_duration(horizon, ens.count());
    const dpss::MonitorReport report = dpss::run_monitors(ens, horizon, budget);
    const std::vector<std::string> failures = dpss::monitor_assertion_failures(report);

    nlohmann::json doc = nlohmann::json::parse(dpss::to_json_string(report));
    doc["assertion_failures"] = failures;
    std::cout << doc.dump(2) << "\n";
    return failures.empty() ? kExitOk : kExitFailure;
}

struct FuzzArgs {
    std::uint64_t cases = 0;
    std::size_t n_min = 1;
    std::size_t n_max = 8;
    std::uint64_t seed = 0;
    std::uint64_t max_denominator = 64;
    unsigned jobs = 0;
};

int cmd_fuzz(const FuzzArgs& args) {
    if (args.cases == 0) throw dpss::ScenarioError("--cases must be at least 1");
    dpss::GeneratorConfig cfg;
    cfg.n_min = args.n_min;
    cfg.n_max = args.n_max;
    cfg.seed = args.seed;
    cfg.max_denominator = args.max_denominator;
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) {
        throw dpss::ScenarioError("--n-min must satisfy 1 <= n-min <= n-max");
    }
    if (cfg.max_denominator < 1) {
        throw dpss::ScenarioError("--max-denominator must be at least 1");
    }
    unsigned jobs = args.jobs;
    if (jobs == 0) {
        jobs = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    }
    const dpss::FuzzSummary summary =
        dpss::run_fuzz_campaign(cfg, args.cases, jobs);
    std::cout << dpss::to_json_string(summary, cfg) << "\n";
    return summary.failed_cases == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact-rational simulator and verification harness for the DPSS "
        "perimeter patrol protocol.\nExit codes: 0 success, 1 property/assertion "
        "failure, 2 input/usage error, 3 step budget exhausted."};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Simulate a scenario and emit an event-aligned CSV trace");
    simulate->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
    simulate->add_option("--duration", sim.duration, "Time to simulate (rational text)")
        ->required();
    simulate->add_option("--trace", sim.trace_out,
                         "Trace output file, or - for stdout (default)");
    CLI::Option* sim_fuel =
        simulate->add_option("--fuel", sim.fuel, "Step budget override (rounds)");
    simulate->add_option("--sample", sim.sample,
                         "Also emit rows every SAMPLE time units (rational text)");

    ConvergeArgs conv;
    CLI::App* converge = app.add_subcommand(
        "converge", "Check location periodicity at the 2N-1 bound");
    converge->add_option("--scenario", conv.scenario, "Scenario JSON file")->required();
    CLI::Option* conv_fuel =
        converge->add_option("--fuel", conv.fuel, "Step budget override (rounds)");

    CheckArgs chk;
    CLI::App* check = app.add_subcommand(
        "check", "Run invariant monitors over a scenario and assert the bounds");
    check->add_option("--scenario", chk.scenario, "Scenario JSON file")->required();
    check->add_option("--horizon", chk.horizon, "Observation horizon (rational text)")
        ->required();
    CLI::Option* chk_fuel =
        check->add_option("--fuel", chk.fuel, "Step budget override (rounds)");

    FuzzArgs fz;
    CLI::App* fuzz = app.add_subcommand(
        "fuzz", "Run a randomized property campaign over generated scenarios");
    fuzz->add_option("--cases", fz.cases, "Number of cases")->required();
    fuzz->add_option("--n-min", fz.n_min, "Smallest fleet size (default 1)");
    fuzz->add_option("--n-max", fz.n_max, "Largest fleet size (default 8)");
    fuzz->add_option("--seed", fz.seed, "Campaign seed (default 0)");
    fuzz->add_option("--max-denominator", fz.max_denominator,
                     "Largest sampled location denominator (default 64)");
    fuzz->add_option("--jobs", fz.jobs,
                     "Worker threads (default: up to 8; results are "
                     "scheduling-independent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) {
            sim.fuel_set = sim_fuel->count() > 0;
            return cmd_simulate(sim);
        }
        if (*converge) {
            conv.fuel_set = conv_fuel->count() > 0;
            return cmd_converge(conv);
        }
        if (*check) {
            chk.fuel_set = chk_fuel->count() > 0;
            return cmd_check(chk);
        }
        if (*fuzz) return cmd_fuzz(fz);
    } catch (const dpss::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dpss::FuelExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFuel;
    } catch (const dpss::SimulationFault& e) {
        std::cerr << "fault: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
