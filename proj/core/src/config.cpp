#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "jcdemon/errors.hpp"
#include "jcdemon/experiment.hpp"

namespace jcdemon {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
    for (auto& ch : key)
        if (ch == '-') ch = '_';
    return key;
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse '" + text + "' as a number for " + key);
    }
    if (used != t.size() || !std::isfinite(v)) throw ConfigError("invalid number '" + text + "' for " + key);
    return v;
}

long parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse '" + text + "' as an integer for " + key);
    }
    if (used != t.size()) throw ConfigError("invalid integer '" + text + "' for " + key);
    return v;
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
    const std::string n = trim(name);
    if (n == "fig1") return Scenario::fig1;
    if (n == "fig2") return Scenario::fig2;
    if (n == "fig3") return Scenario::fig3;
    if (n == "fig4") return Scenario::fig4;
    if (n == "custom") return Scenario::custom;
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::fig1: return "fig1";
        case Scenario::fig2: return "fig2";
        case Scenario::fig3: return "fig3";
        case Scenario::fig4: return "fig4";
        case Scenario::custom: return "custom";
    }
    return "custom";
}

Method parse_method(const std::string& name) {
    const std::string n = trim(name);
    if (n == "dense") return Method::dense;
    if (n == "branches") return Method::branches;
    if (n == "auto") return Method::automatic;
    throw ConfigError("unknown method '" + name + "'");
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) throw ConfigError("empty entry in list '" + text + "'");
        out.push_back(parse_real("list", item));
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

BlochVector parse_bloch(const std::string& text) {
    const auto v = parse_real_list(text);
    if (v.size() != 3) throw ConfigError("init needs three components rx,ry,rz, got '" + text + "'");
    return {v[0], v[1], v[2]};
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + " lacks '='");
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ScenarioConfig preset(Scenario s) {
    ScenarioConfig c;
    c.scenario = s;
    switch (s) {
        case Scenario::fig1:
            c.n0 = 100.0;
            c.nbar = 1.0;
            c.steps = 400;
            break;
        case Scenario::fig2:
            c.n0 = 500.0;
            c.nbar = 1.0;
            c.steps = 200;
            break;
        case Scenario::fig3:
            c.n0 = 100.0;
            c.nbar = 1.0;
            c.steps = 400;
            break;
        case Scenario::fig4:
            c.n0 = 50.0;
            c.nbar = 1.0;
            c.steps = 400;
            c.init = BlochVector{0.0, 0.0, 0.0};
            break;
        case Scenario::custom:
            c.steps = 200;
            break;
    }
    return c;
}

void apply_override(ScenarioConfig& c, const std::string& raw_key, const std::string& value) {
    const std::string key = normalize_key(raw_key);
    if (key == "scenario") c.scenario = parse_scenario(value);
    else if (key == "n0") c.n0 = parse_real(key, value);
    else if (key == "nbar") c.nbar = parse_real(key, value);
    else if (key == "phi0") c.phi0 = parse_real(key, value);
    else if (key == "nph" || key == "n_ph") c.n_ph = static_cast<int>(parse_int(key, value));
    else if (key == "gt_max") c.gt_max = parse_real(key, value);
    else if (key == "steps") c.steps = static_cast<int>(parse_int(key, value));
    else if (key == "init") c.init = parse_bloch(value);
    else if (key == "method") c.method = parse_method(value);
    else if (key == "rank_tol") c.rank_tol = parse_real(key, value);
    else if (key == "tail_tol") c.tail_tol = parse_real(key, value);
    else if (key == "prominence") c.prominence = parse_real(key, value);
    else if (key == "threads") c.threads = static_cast<unsigned>(parse_int(key, value));
    else if (key == "n0_list") c.n0_list = parse_real_list(value);
    else if (key == "out" || key == "out_path") c.out_path = trim(value);
    else throw ConfigError("unknown configuration key '" + raw_key + "'");
}

ScenarioConfig build_config(const std::map<std::string, std::string>& overrides, Scenario fallback) {
    Scenario s = fallback;
    if (auto it = overrides.find("scenario"); it != overrides.end()) s = parse_scenario(it->second);
    ScenarioConfig c = preset(s);
    for (const auto& [k, v] : overrides)
        if (k != "scenario") apply_override(c, k, v);
    return c;
}

void validate(const ScenarioConfig& c) {
    if (!(c.n0 > 0.0)) throw ConfigError("n0 must be positive");
    if (!(c.nbar >= 0.0)) throw ConfigError("nbar must be non-negative");
    if (c.n_ph != 0 && c.n_ph < 2) throw ConfigError("nph must be 0 (auto) or >= 2");
    if (c.steps < 2) throw ConfigError("steps must be >= 2");
    if (!(c.gt_max >= 0.0)) throw ConfigError("gt-max must be non-negative");
    if (!(c.rank_tol > 0.0 && c.rank_tol < 1.0)) throw ConfigError("rank-tol must lie in (0, 1)");
    if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0)) throw ConfigError("tail-tol must lie in (0, 1)");
    if (!(c.prominence >= 0.0)) throw ConfigError("prominence must be non-negative");
    if (c.init) {
        const auto& r = *c.init;
        if (std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) > 1.0 + 1e-12)
            throw ConfigError("init Bloch vector must satisfy |r| <= 1");
    }
    for (double n0 : c.n0_list)
        if (!(n0 > 0.0)) throw ConfigError("n0-list entries must be positive");
}

int resolve_nph(const ScenarioConfig& c) { return c.n_ph > 0 ? c.n_ph : auto_truncation(c.n0, c.nbar); }

Representation resolve_method(const ScenarioConfig& c) {
    switch (c.method) {
        case Method::dense: return Representation::dense;
        case Method::branches: return Representation::branches;
        case Method::automatic: break;
    }
    return resolve_nph(c) > kDenseCutoff ? Representation::branches : Representation::dense;
}

std::vector<double> time_grid(const ScenarioConfig& c) {
    const double pi = std::numbers::pi;
    double gt_max = c.gt_max;
    if (gt_max == 0.0) {
        switch (c.scenario) {
            case Scenario::fig2: gt_max = 2.0 * pi / std::sqrt(c.n0); break;  // theta up to 4 pi
            case Scenario::fig3: gt_max = pi * std::sqrt(c.n0); break;
            default: gt_max = 2.2 * pi * std::sqrt(c.n0); break;
        }
    }
    std::vector<double> grid(c.steps);
    for (int i = 0; i < c.steps; ++i) grid[i] = gt_max * i / (c.steps - 1);
    return grid;
}

}  // namespace jcdemon
