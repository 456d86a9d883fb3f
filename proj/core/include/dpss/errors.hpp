#pragma once

#include <stdexcept>
#include <string>

namespace dpss {

// Thrown when step_time runs out of its iteration budget before consuming the
// requested duration.  Carries the unconsumed remainder as canonical rational
// text so callers can report or resume.
class FuelExhausted : public std::runtime_error {
public:
    FuelExhausted(std::string remaining, std::uint64_t budget)
        : std::runtime_error("step budget of " + std::to_string(budget) +
                             " iterations exhausted with " + remaining +
                             " time units left"),
          remaining_(std::move(remaining)),
          budget_(budget) {}

    const std::string& remaining() const noexcept { return remaining_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::string remaining_;
    std::uint64_t budget_;
};

// Thrown on invalid scenario input; the message names the first violated
// requirement.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the simulator reaches a state that its own guarantees rule out
// (for example, a well-formed ensemble with no impending impact, or a motion
// increment that produced an ill-formed ensemble).  Indicates a defect, not
// bad input.
class SimulationFault : public std::logic_error {
public:
    explicit SimulationFault(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dpss
