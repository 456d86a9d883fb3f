#include "dpss/oracle.hpp"

#include "dpss/errors.hpp"
#include "dpss/rational.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace dpss {

std::vector<OracleEvent> enumerate_events_small(const Ensemble& ens,
                                                const Rational& horizon) {
    if (!wf_ensemble(ens)) {
        throw std::invalid_argument("oracle requires a well-formed ensemble");
    }
    const std::size_t n = ens.count();
    if (n > 3) throw std::invalid_argument("oracle supports at most three vehicles");
    if (horizon < 0) throw std::invalid_argument("oracle requires horizon >= 0");

    const Rational perim = ens.perimeter();
    const Rational speed = perim / Rational(n);
    std::vector<Rational> x(n);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = ens.uav(i).location;
        d[i] = direction_sign(ens.uav(i).direction);
    }

    // Shared patrol boundary between vehicles i and i+1.
    auto boundary = [&](std::size_t i) { return Rational(i + 1) * speed; };

    // Which vehicles turn around at this very instant, by the protocol's
    // rules: bounce at an endpoint; on meeting an oncoming partner, the one
    // on its partner's side of the shared boundary turns back (both, if they
    // meet exactly on it); a co-located tailing pair that reaches the shared
    // boundary sends the rear vehicle home.
    auto instant_turns = [&]() {
        std::vector<bool> turn(n, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (x[i] != x[i + 1]) continue;
            const Rational b = boundary(i);
            if (d[i] > 0 && d[i + 1] < 0) {
                if (x[i] < b) {
                    turn[i + 1] = true;
                } else if (x[i] > b) {
                    turn[i] = true;
                } else {
                    turn[i] = true;
                    turn[i + 1] = true;
                }
            } else if (d[i] > 0 && d[i + 1] > 0 && x[i] >= b) {
                turn[i] = true;
            } else if (d[i] < 0 && d[i + 1] < 0 && x[i] <= b) {
                turn[i + 1] = true;
            }
        }
        if (d[0] < 0 && x[0] == 0) turn[0] = true;
        if (d[n - 1] > 0 && x[n - 1] == perim) turn[n - 1] = true;
        return turn;
    };

    std::vector<OracleEvent> out;

    auto settle = [&](bool emit, const Rational& now) {
        // One round should always suffice; iterating plus a cap keeps the
        // oracle honest if that expectation is ever violated.
        for (int round = 0;; ++round) {
            const std::vector<bool> turn = instant_turns();
            bool any = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!turn[i]) continue;
                any = true;
                d[i] = -d[i];
                if (emit) out.push_back(OracleEvent{now, i, x[i]});
            }
            if (!any) return;
            if (round >= 4) {
                throw SimulationFault("oracle: instant turns failed to settle");
            }
        }
    };

    // Earliest future turn from a settled state: an endpoint arrival, an
    // oncoming pair closing at 2*speed, or a co-located tailing pair riding
    // to its shared boundary.
    auto next_delay = [&]() -> std::optional<Rational> {
        std::optional<Rational> best;
        auto offer = [&](Rational dt) {
            if (dt > 0 && (!best || dt < *best)) best = std::move(dt);
        };
        if (d[0] < 0 && x[0] > 0) offer(x[0] / speed);
        if (d[n - 1] > 0 && x[n - 1] < perim) offer((perim - x[n - 1]) / speed);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const Rational b = boundary(i);
            if (d[i] > 0 && d[i + 1] < 0) offer((x[i + 1] - x[i]) / (2 * speed));
            if (x[i] == x[i + 1]) {
                if (d[i] > 0 && d[i + 1] > 0 && x[i] < b) offer((b - x[i]) / speed);
                if (d[i] < 0 && d[i + 1] < 0 && x[i] > b) offer((x[i] - b) / speed);
            }
        }
        return best;
    };

    Rational now = 0;
    settle(/*emit=*/false, now);
    for (std::uint64_t guard = 0;; ++guard) {
        if (guard > 1000000) {
            throw SimulationFault("oracle: event guard exceeded before the horizon");
        }
        const auto dt = next_delay();
        if (!dt) {
            throw SimulationFault(
                "oracle: settled state with no future event; motion rules "
                "guarantee one");
        }
        if (now + *dt > horizon) break;
        now += *dt;
        const Rational stride = speed * *dt;
        for (std::size_t i = 0; i < n; ++i) x[i] += d[i] * stride;
        settle(/*emit=*/true, now);
    }
    return out;
}

std::pair<Rational, Direction> triangle_trajectory(const Rational& loc0,
                                                   Direction dir0,
                                                   const Rational& t,
                                                   const Rational& perimeter) {
    if (perimeter <= 0) {
        throw std::invalid_argument("triangle_trajectory requires perimeter > 0");
    }
    if (loc0 < 0 || loc0 > perimeter) {
        throw std::invalid_argument("triangle_trajectory requires 0 <= loc0 <= perimeter");
    }
    if (t < 0) throw std::invalid_argument("triangle_trajectory requires t >= 0");
    if (t == 0) return {loc0, dir0};

    // Unfold position+direction into a phase on [0, 2P): rightward motion is
    // the first half-period, leftward the second.  Advance linearly, wrap,
    // and fold back.  Landing exactly on an endpoint reports the arriving
    // direction (the turn is still pending).
    const Rational phase0 =
        dir0 == Direction::Right ? loc0 : 2 * perimeter - loc0;
    const Rational phase = rational_mod(phase0 + t * perimeter, 2 * perimeter);
    if (phase == 0) return {Rational(0), Direction::Left};
    if (phase <= perimeter) return {phase, Direction::Right};
    return {2 * perimeter - phase, Direction::Left};
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below requires bound >= 1");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    for (;;) {
        const std::uint64_t v = gen_();
        if (v < limit) return v % bound;
    }
}

Rational Rng::rational_up_to(const Rational& hi, std::uint64_t max_den) {
    if (hi < 0) throw std::invalid_argument("rational_up_to requires hi >= 0");
    if (max_den == 0) throw std::invalid_argument("rational_up_to requires max_den >= 1");
    const std::uint64_t q = 1 + next_below(max_den);
    const Integer top = rational_floor(hi * Rational(q));
    const std::uint64_t k = next_below(top.convert_to<std::uint64_t>() + 1);
    return Rational(k) / Rational(q);
}

namespace {

void validate(const GeneratorConfig& cfg) {
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) {
        throw std::invalid_argument("generator needs 1 <= n_min <= n_max");
    }
    if (cfg.max_denominator < 1) {
        throw std::invalid_argument("generator needs max_denominator >= 1");
    }
    if (cfg.perimeters.empty()) {
        throw std::invalid_argument("generator needs at least one perimeter choice");
    }
    for (const Rational& p : cfg.perimeters) {
        if (p <= 0) throw std::invalid_argument("generator perimeters must be positive");
    }
}

}  // namespace

Ensemble random_wf_ensemble(Rng& rng, const GeneratorConfig& cfg) {
    validate(cfg);
    const std::size_t n =
        cfg.n_min + static_cast<std::size_t>(rng.next_below(cfg.n_max - cfg.n_min + 1));
    const Rational perim = cfg.perimeters[rng.next_below(cfg.perimeters.size())];

    std::vector<Rational> locs(n);
    for (Rational& loc : locs) loc = rng.rational_up_to(perim, cfg.max_denominator);
    std::sort(locs.begin(), locs.end());
    if (n >= 2 && rng.next_below(4) == 0) {
        const std::size_t j = rng.next_below(n - 1);
        locs[j + 1] = locs[j];
    }

    std::vector<std::pair<Rational, Direction>> states;
    states.reserve(n);
    for (Rational& loc : locs) {
        states.emplace_back(std::move(loc),
                            rng.next_bit() ? Direction::Right : Direction::Left);
    }
    return Ensemble::from_states(perim, std::move(states));
}

Ensemble random_wf_ensemble(const GeneratorConfig& cfg) {
    Rng rng(cfg.seed);
    return random_wf_ensemble(rng, cfg);
}

}  // namespace dpss
