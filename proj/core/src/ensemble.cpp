#include "dpss/ensemble.hpp"

#include <stdexcept>
#include <utility>

namespace dpss {

Ensemble Ensemble::from_states(Rational perimeter,
                               std::vector<std::pair<Rational, Direction>> states) {
    std::vector<UavState> uavs;
    uavs.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        uavs.push_back(UavState{i, std::move(states[i].first), states[i].second});
    }
    return Ensemble(std::move(perimeter), std::move(uavs));
}

const UavState& Ensemble::uav(std::size_t i) const {
    if (i >= uavs_.size()) {
        throw std::out_of_range("UAV index " + std::to_string(i) +
                                " out of range for ensemble of " +
                                std::to_string(uavs_.size()));
    }
    return uavs_[i];
}

Rational seg_length(const Ensemble& ens) {
    if (ens.count() == 0) throw std::invalid_argument("seg_length requires a non-empty ensemble");
    return ens.perimeter() / Rational(ens.count());
}

Rational uav_left_boundary(std::size_t i, const Ensemble& ens) {
    if (i >= ens.count()) throw std::out_of_range("segment index out of range");
    return Rational(i) * seg_length(ens);
}

Rational uav_right_boundary(std::size_t i, const Ensemble& ens) {
    if (i >= ens.count()) throw std::out_of_range("segment index out of range");
    return Rational(i + 1) * seg_length(ens);
}

Rational average(const Rational& a, const Rational& b) { return (a + b) / 2; }

bool wf_ensemble(const Ensemble& ens) {
    if (ens.count() == 0) return false;
    if (ens.perimeter() <= 0) return false;
    const auto& uavs = ens.uavs();
    for (std::size_t i = 0; i < uavs.size(); ++i) {
        if (uavs[i].id != i) return false;
        if (uavs[i].location < 0 || uavs[i].location > ens.perimeter()) return false;
        if (i > 0 && uavs[i - 1].location > uavs[i].location) return false;
    }
    return true;
}

Ensemble reflect(const Ensemble& ens) {
    const std::size_t n = ens.count();
    std::vector<UavState> mirrored(n);
    for (std::size_t k = 0; k < n; ++k) {
        const UavState& src = ens.uavs()[n - 1 - k];
        mirrored[k] = UavState{k, ens.perimeter() - src.location, opposite(src.direction)};
    }
    return Ensemble(ens.perimeter(), std::move(mirrored));
}

}  // namespace dpss
