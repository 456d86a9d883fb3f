#include "dpss/trace.hpp"

#include "dpss/errors.hpp"
#include "dpss/event_engine.hpp"
#include "dpss/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace dpss {

std::vector<TraceRow> collect_trace(const Ensemble& ens, const Rational& duration,
                                    const StepBudget& budget,
                                    const std::optional<Rational>& sample_interval) {
    if (duration < 0) throw std::invalid_argument("collect_trace requires duration >= 0");
    if (sample_interval && *sample_interval <= 0) {
        throw std::invalid_argument("collect_trace requires a positive sample interval");
    }
    const std::size_t n = ens.count();
    std::vector<TraceRow> rows;

    auto emit = [&](const Rational& t, const Ensemble& state,
                    const std::vector<bool>* flags) {
        for (std::size_t i = 0; i < n; ++i) {
            const UavState& u = state.uav(i);
            rows.push_back(TraceRow{t, i, u.location, direction_sign(u.direction),
                                    flags && (*flags)[i] ? 1 : 0});
        }
    };
    auto event_flags = [&](const Ensemble& state) {
        std::vector<bool> flags(n);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            flags[i] = event_for_uav(i, state);
            any = any || flags[i];
        }
        return std::pair<std::vector<bool>, bool>(std::move(flags), any);
    };

    Rational t = 0;
    Ensemble state = ens;
    auto [flags, any] = event_flags(state);
    emit(t, state, &flags);
    Ensemble post = flip_on_events(state);
    // Post-flip rows belong to the continuation, so a flip at the very end
    // of the trace stays pending (matching the stepper's landing states).
    if (any && duration > 0) emit(t, post, nullptr);

    std::uint64_t fuel = budget.fuel;
    Integer sample_k = 1;
    while (t < duration) {
        const Rational tstar = always_smallest_min_time_to_impending_impact(post);
        const Rational t_event = t + tstar;
        const Rational& stop = t_event < duration ? t_event : duration;

        if (sample_interval) {
            for (;; ++sample_k) {
                const Rational ts = Rational(sample_k) * *sample_interval;
                if (ts >= stop) break;
                if (ts <= t) continue;
                emit(ts, update_location_all(ts - t, post), nullptr);
            }
        }

        if (t_event >= duration) {
            state = update_location_all(duration - t, post);
            t = duration;
            std::tie(flags, any) = event_flags(state);
            emit(t, state, &flags);
            break;
        }
        if (fuel == 0) throw FuelExhausted(format_rational(duration - t), budget.fuel);
        --fuel;
        t = t_event;
        state = update_location_all(tstar, post);
        std::tie(flags, any) = event_flags(state);
        emit(t, state, &flags);
        post = flip_on_events(state);
        emit(t, post, nullptr);
    }
    return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "time,uav,location,direction,event\n";
    for (const TraceRow& row : rows) {
        out << format_rational(row.time) << ',' << row.uav << ','
            << format_rational(row.location) << ',' << row.direction << ','
            << row.event << '\n';
    }
}

}  // namespace dpss
