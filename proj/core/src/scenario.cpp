#include "dpss/scenario.hpp"

#include "dpss/errors.hpp"
#include "dpss/rational.hpp"

#include <nlohmann/json.hpp>

#include <utility>
#include <vector>

namespace dpss {

namespace {

Rational require_rational(const nlohmann::json& node, const std::string& what) {
    if (!node.is_string()) {
        throw ScenarioError(what + " must be rational text (\"p\" or \"p/q\")");
    }
    const auto parsed = parse_rational(node.get<std::string>());
    if (!parsed) {
        throw ScenarioError(what + " is not rational text (\"p\" or \"p/q\"): \"" +
                            node.get<std::string>() + "\"");
    }
    return *parsed;
}

}  // namespace

Ensemble parse_scenario(std::string_view document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
    for (const char* field : {"perimeter", "n", "uavs"}) {
        if (!doc.contains(field)) {
            throw ScenarioError(std::string("scenario is missing the \"") + field +
                                "\" field");
        }
    }

    const Rational perimeter = require_rational(doc["perimeter"], "perimeter");
    if (perimeter <= 0) {
        throw ScenarioError("perimeter must be positive, got " +
                            format_rational(perimeter));
    }

    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() < 1) {
        throw ScenarioError("n must be a positive integer");
    }
    const std::size_t n = doc["n"].get<std::size_t>();

    if (!doc["uavs"].is_array()) throw ScenarioError("uavs must be an array");
    if (doc["uavs"].size() != n) {
        throw ScenarioError("n is " + std::to_string(n) + " but uavs has " +
                            std::to_string(doc["uavs"].size()) + " entries");
    }

    std::vector<std::pair<Rational, Direction>> states;
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const nlohmann::json& entry = doc["uavs"][i];
        const std::string label = "uavs[" + std::to_string(i) + "]";
        if (!entry.is_object()) throw ScenarioError(label + " must be an object");
        if (!entry.contains("location") || !entry.contains("direction")) {
            throw ScenarioError(label + " needs \"location\" and \"direction\"");
        }
        Rational loc = require_rational(entry["location"], label + ".location");
        if (loc < 0 || loc > perimeter) {
            throw ScenarioError(label + ".location " + format_rational(loc) +
                                " is outside [0, " + format_rational(perimeter) + "]");
        }
        if (!states.empty() && states.back().first > loc) {
            throw ScenarioError(label + ".location " + format_rational(loc) +
                                " breaks the left-to-right ordering");
        }
        if (!entry["direction"].is_number_integer() ||
            (entry["direction"].get<int>() != 1 &&
             entry["direction"].get<int>() != -1)) {
            throw ScenarioError(label + ".direction must be 1 or -1");
        }
        const Direction dir = entry["direction"].get<int>() == 1 ? Direction::Right
                                                                 : Direction::Left;
        states.emplace_back(std::move(loc), dir);
    }

    return Ensemble::from_states(perimeter, std::move(states));
}

std::string emit_scenario(const Ensemble& ens) {
    nlohmann::json uavs = nlohmann::json::array();
    for (const UavState& u : ens.uavs()) {
        uavs.push_back({{"location", format_rational(u.location)},
                        {"direction", direction_sign(u.direction)}});
    }
    const nlohmann::json doc{{"perimeter", format_rational(ens.perimeter())},
                             {"n", ens.count()},
                             {"uavs", uavs}};
    return doc.dump(2) + "\n";
}

}  // namespace dpss
