#include "kljn/config.hpp"

#include "kljn/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace kljn {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
    if (!j.is_number()) throw ConfigurationError(std::string(key) + " must be a number");
    return j.get<double>();
}

std::size_t count(const json& j, const char* key) {
    if (!j.is_number_unsigned()) {
        throw ConfigurationError(std::string(key) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) {
            throw ConfigurationError(std::string("unknown key '") + key + "' in " + where);
        }
    }
}

}  // namespace

CaseSpec ExperimentConfig::case_spec() const {
    return {case_id, quad, u_la_rms, bandwidth, attack};
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigurationError("config must be a JSON object");
    reject_unknown(root,
                   {"case_id", "resistors_ohms", "u_la_volts", "bandwidth_hz", "attack",
                    "injection_factors", "gammas", "n_beps", "repetitions", "master_seed",
                    "defense"},
                   "config");

    ExperimentConfig cfg;
    if (root.contains("case_id")) {
        if (!root["case_id"].is_string()) throw ConfigurationError("case_id must be a string");
        cfg.case_id = root["case_id"].get<std::string>();
    }

    if (!root.contains("resistors_ohms") || !root["resistors_ohms"].is_object()) {
        throw ConfigurationError("config needs a resistors_ohms object");
    }
    const json& r = root["resistors_ohms"];
    reject_unknown(r, {"r_ha", "r_la", "r_hb", "r_lb"}, "resistors_ohms");
    for (const char* key : {"r_ha", "r_la", "r_hb", "r_lb"}) {
        if (!r.contains(key)) throw ConfigurationError(std::string("resistors_ohms.") + key + " missing");
    }
    cfg.quad = {number(r["r_ha"], "r_ha"), number(r["r_la"], "r_la"), number(r["r_hb"], "r_hb"),
                number(r["r_lb"], "r_lb")};

    if (root.contains("u_la_volts")) cfg.u_la_rms = number(root["u_la_volts"], "u_la_volts");
    if (root.contains("bandwidth_hz")) cfg.bandwidth = number(root["bandwidth_hz"], "bandwidth_hz");
    if (root.contains("attack")) {
        if (!root["attack"].is_string()) throw ConfigurationError("attack must be a string");
        cfg.attack = parse_attack_kind(root["attack"].get<std::string>());
    }

    SweepSpec& sw = cfg.sweep;
    if (root.contains("injection_factors")) {
        const json& f = root["injection_factors"];
        if (!f.is_array()) throw ConfigurationError("injection_factors must be an array");
        sw.injection_factors.clear();
        for (const auto& v : f) sw.injection_factors.push_back(number(v, "injection_factors[]"));
    }
    if (root.contains("gammas")) {
        const json& g = root["gammas"];
        if (!g.is_array()) throw ConfigurationError("gammas must be an array");
        sw.gammas.clear();
        for (const auto& v : g) sw.gammas.push_back(count(v, "gammas[]"));
    }
    if (root.contains("n_beps")) sw.n_beps = count(root["n_beps"], "n_beps");
    if (root.contains("repetitions")) sw.repetitions = count(root["repetitions"], "repetitions");
    if (root.contains("master_seed")) {
        if (!root["master_seed"].is_number_unsigned()) {
            throw ConfigurationError("master_seed must be an unsigned 64-bit integer");
        }
        sw.master_seed = root["master_seed"].get<std::uint64_t>();
    }
    if (root.contains("defense")) {
        const json& d = root["defense"];
        if (!d.is_object()) throw ConfigurationError("defense must be an object");
        reject_unknown(d, {"enabled", "epsilon_rel"}, "defense");
        if (d.contains("enabled")) {
            if (!d["enabled"].is_boolean()) throw ConfigurationError("defense.enabled must be a boolean");
            sw.defense.enabled = d["enabled"].get<bool>();
        }
        if (d.contains("epsilon_rel")) sw.defense.epsilon_rel = number(d["epsilon_rel"], "epsilon_rel");
    }
    sw.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace kljn
