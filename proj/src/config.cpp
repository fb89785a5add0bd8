// config.cpp
// JSON config parsing and canonical serialization.

#include "qfock/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qfock {

namespace {

using nlohmann::ordered_json;

void require_keys(const ordered_json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            throw validation_error("config: unknown key \"" + where + key + "\"");
        }
    }
}

double number_field(const ordered_json& obj, const std::string& where,
                    const std::string& key) {
    if (!obj.contains(key)) {
        throw validation_error("config: missing field \"" + where + key + "\"");
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw validation_error("config: field \"" + where + key +
                               "\" must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw validation_error("config: field \"" + where + key +
                               "\" must be finite");
    }
    return x;
}

int int_field(const ordered_json& obj, const std::string& where,
              const std::string& key) {
    if (!obj.contains(key) || !obj.at(key).is_number_integer()) {
        throw validation_error("config: field \"" + where + key +
                               "\" must be an integer");
    }
    return obj.at(key).get<int>();
}

GridSpec parse_grid(const ordered_json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw validation_error("config: \"" + where + "\" must be an object");
    }
    require_keys(obj, where + ".", {"min", "max", "steps"});
    GridSpec g;
    g.min = number_field(obj, where + ".", "min");
    g.max = number_field(obj, where + ".", "max");
    g.steps = int_field(obj, where + ".", "steps");
    if (g.steps < 1) {
        throw validation_error("config: \"" + where + ".steps\" must be >= 1");
    }
    if (g.max < g.min) {
        throw validation_error("config: \"" + where + ".max\" must be >= \"" +
                               where + ".min\"");
    }
    if (g.steps == 1 && g.max != g.min) {
        throw validation_error("config: \"" + where +
                               "\" needs steps >= 2 to span min < max");
    }
    return g;
}

} // namespace

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g.steps));
    if (g.steps == 1) {
        out.push_back(g.min);
        return out;
    }
    for (int i = 0; i < g.steps; ++i) {
        out.push_back(g.min + (g.max - g.min) * i / (g.steps - 1));
    }
    return out;
}

RunConfig parse_config(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw validation_error("config: top level must be an object");
    }
    require_keys(doc, "", {"momenta", "cutoff", "tolerance", "beta_grid",
                           "epsilon_grid", "n_pairs_max", "epsilon_prime",
                           "seed"});

    RunConfig cfg;

    if (!doc.contains("momenta") || !doc.at("momenta").is_array() ||
        doc.at("momenta").empty()) {
        throw validation_error(
            "config: \"momenta\" must be a non-empty array");
    }
    std::size_t i = 0;
    for (const auto& m : doc.at("momenta")) {
        const std::string where = "momenta[" + std::to_string(i) + "].";
        if (!m.is_object()) {
            throw validation_error("config: \"momenta\" entries must be objects");
        }
        require_keys(m, where, {"label", "omega", "epsilon"});
        MomentumCfg mc;
        mc.label = int_field(m, where, "label");
        mc.omega = number_field(m, where, "omega");
        if (mc.omega <= 0.0) {
            throw validation_error("config: field \"" + where +
                                   "omega\" must be positive");
        }
        mc.epsilon = number_field(m, where, "epsilon");
        for (const MomentumCfg& prev : cfg.momenta) {
            if (prev.label == mc.label) {
                throw validation_error("config: duplicate momentum label " +
                                       std::to_string(mc.label));
            }
        }
        cfg.momenta.push_back(mc);
        ++i;
    }

    if (doc.contains("cutoff") && !doc.at("cutoff").is_null()) {
        const int c = int_field(doc, "", "cutoff");
        if (c < 1) {
            throw validation_error("config: field \"cutoff\" must be >= 1");
        }
        cfg.cutoff = c;
    }
    if (doc.contains("tolerance")) {
        cfg.tolerance = number_field(doc, "", "tolerance");
        if (cfg.tolerance <= 0.0) {
            throw validation_error("config: field \"tolerance\" must be positive");
        }
    }
    if (doc.contains("beta_grid")) {
        cfg.beta_grid = parse_grid(doc.at("beta_grid"), "beta_grid");
        if (cfg.beta_grid.min <= 0.0) {
            throw validation_error("config: \"beta_grid.min\" must be positive");
        }
    }
    if (doc.contains("epsilon_grid")) {
        cfg.epsilon_grid = parse_grid(doc.at("epsilon_grid"), "epsilon_grid");
    }
    if (doc.contains("n_pairs_max")) {
        cfg.n_pairs_max = int_field(doc, "", "n_pairs_max");
        if (cfg.n_pairs_max < 1) {
            throw validation_error("config: field \"n_pairs_max\" must be >= 1");
        }
    }
    if (doc.contains("epsilon_prime")) {
        cfg.epsilon_prime = number_field(doc, "", "epsilon_prime");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) {
            throw validation_error(
                "config: field \"seed\" must be a non-negative integer");
        }
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw validation_error("config: cannot open \"" + path + "\"");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_config_json(const RunConfig& cfg) {
    ordered_json doc;
    doc["momenta"] = ordered_json::array();
    for (const MomentumCfg& m : cfg.momenta) {
        ordered_json jm;
        jm["label"] = m.label;
        jm["omega"] = m.omega;
        jm["epsilon"] = m.epsilon;
        doc["momenta"].push_back(jm);
    }
    if (cfg.cutoff) {
        doc["cutoff"] = *cfg.cutoff;
    } else {
        doc["cutoff"] = nullptr;
    }
    doc["tolerance"] = cfg.tolerance;
    doc["beta_grid"] = {{"min", cfg.beta_grid.min},
                        {"max", cfg.beta_grid.max},
                        {"steps", cfg.beta_grid.steps}};
    doc["epsilon_grid"] = {{"min", cfg.epsilon_grid.min},
                           {"max", cfg.epsilon_grid.max},
                           {"steps", cfg.epsilon_grid.steps}};
    doc["n_pairs_max"] = cfg.n_pairs_max;
    doc["epsilon_prime"] = cfg.epsilon_prime;
    doc["seed"] = cfg.seed;
    return doc.dump(2);
}

} // namespace qfock
