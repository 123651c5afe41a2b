#include "opm/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace opm {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& scope,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.contains(key))
            throw ConfigError(scope.empty() ? key : scope + "." + key,
                              "unknown key '" + (scope.empty() ? key : scope + "." + key) + "'");
    }
}

double get_number(const json& j, const std::string& key, const std::string& scope) {
    if (!j.at(key).is_number())
        throw ConfigError(scope + key, "'" + scope + key + "' must be a number");
    return j.at(key).get<double>();
}

std::vector<double> scalar_or_vector(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError(key, "'" + key + "' entries must be numbers");
            out.push_back(e.get<double>());
        }
        if (out.empty()) throw ConfigError(key, "'" + key + "' must not be empty");
        return out;
    }
    throw ConfigError(key, "'" + key + "' must be a number or an array of numbers");
}

MarketParams market_from_json(const json& j) {
    reject_unknown_keys(j, "market", {"r", "a", "sigma", "z_s", "y_bar"});
    MarketParams p;
    if (j.contains("r")) p.r = get_number(j, "r", "market.");
    if (j.contains("a")) p.a = get_number(j, "a", "market.");
    if (j.contains("sigma")) p.sigma = get_number(j, "sigma", "market.");
    if (j.contains("z_s")) p.z_s = get_number(j, "z_s", "market.");
    if (j.contains("y_bar")) p.y_bar = get_number(j, "y_bar", "market.");
    return p;
}

InitialProfileSpec init_from_json(const json& j) {
    reject_unknown_keys(j, "init", {"family", "mean", "sdlog", "a", "b", "values"});
    InitialProfileSpec spec;
    if (j.contains("family")) {
        try {
            spec.family = init_family_from_string(j.at("family").get<std::string>());
        } catch (const std::exception& err) {
            throw ConfigError("init.family", err.what());
        }
    }
    if (j.contains("mean")) spec.mean = get_number(j, "mean", "init.");
    if (j.contains("sdlog")) spec.sdlog = get_number(j, "sdlog", "init.");
    if (j.contains("a")) spec.beta_a = get_number(j, "a", "init.");
    if (j.contains("b")) spec.beta_b = get_number(j, "b", "init.");
    if (j.contains("values")) spec.values = scalar_or_vector(j.at("values"), "init.values");
    return spec;
}

ShiftSpec shift_from_json(const json& j) {
    reject_unknown_keys(j, "shift", {"t0", "magnitude", "target", "classes", "agents"});
    ShiftSpec spec;
    if (j.contains("t0")) spec.t0 = static_cast<int>(get_number(j, "t0", "shift."));
    if (j.contains("magnitude")) spec.magnitude = get_number(j, "magnitude", "shift.");
    if (j.contains("target")) {
        const std::string t = j.at("target").get<std::string>();
        if (t == "essential-classes")
            spec.target = ShiftTargetKind::essential_classes;
        else if (t == "inessential-union")
            spec.target = ShiftTargetKind::inessential_union;
        else if (t == "agents")
            spec.target = ShiftTargetKind::explicit_agents;
        else
            throw ConfigError("shift.target", "unknown shift target '" + t + "'");
    }
    if (j.contains("classes"))
        spec.class_count = static_cast<int>(get_number(j, "classes", "shift."));
    if (j.contains("agents")) {
        for (const auto& e : j.at("agents")) {
            if (!e.is_number_integer())
                throw ConfigError("shift.agents", "'shift.agents' must hold integer indices");
            spec.agents.push_back(e.get<int>());
        }
    }
    return spec;
}

}  // namespace

SimConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("", "config root must be a JSON object");
    reject_unknown_keys(j, "",
                        {"n", "t_max", "model", "literal_eq", "fundamental", "alpha", "epsilon",
                         "seed", "noise_mode", "dividend_family", "market", "init", "shift",
                         "record_opinions", "edge_threshold", "cluster_tol", "price_abort"});

    SimConfig c;
    if (j.contains("n")) c.n = static_cast<int>(get_number(j, "n", ""));
    if (j.contains("t_max")) c.t_max = static_cast<int>(get_number(j, "t_max", ""));
    if (j.contains("model")) {
        try {
            c.rule.kind = rule_kind_from_string(j.at("model").get<std::string>());
        } catch (const std::exception& err) {
            throw ConfigError("model", err.what());
        }
    }
    if (j.contains("literal_eq")) {
        if (!j.at("literal_eq").is_boolean())
            throw ConfigError("literal_eq", "'literal_eq' must be a boolean");
        c.rule.literal_eq = j.at("literal_eq").get<bool>();
    }
    if (j.contains("fundamental")) c.rule.fundamental = get_number(j, "fundamental", "");
    if (j.contains("alpha")) c.alpha = scalar_or_vector(j.at("alpha"), "alpha");
    if (j.contains("epsilon")) c.epsilon = scalar_or_vector(j.at("epsilon"), "epsilon");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned())
            throw ConfigError("seed", "'seed' must be an integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("noise_mode")) {
        try {
            c.noise_mode = noise_mode_from_string(j.at("noise_mode").get<std::string>());
        } catch (const std::exception& err) {
            throw ConfigError("noise_mode", err.what());
        }
    }
    if (j.contains("dividend_family")) {
        const std::string f = j.at("dividend_family").get<std::string>();
        if (f == "normal")
            c.dividend_family = DividendFamily::normal;
        else if (f == "lognormal")
            c.dividend_family = DividendFamily::lognormal;
        else
            throw ConfigError("dividend_family", "unknown dividend family '" + f + "'");
    }
    if (j.contains("market")) c.params = market_from_json(j.at("market"));
    if (j.contains("init")) c.init = init_from_json(j.at("init"));
    if (j.contains("shift")) c.shift = shift_from_json(j.at("shift"));
    if (j.contains("record_opinions")) {
        if (!j.at("record_opinions").is_boolean())
            throw ConfigError("record_opinions", "'record_opinions' must be a boolean");
        c.record_opinions = j.at("record_opinions").get<bool>();
    }
    if (j.contains("edge_threshold")) c.edge_threshold = get_number(j, "edge_threshold", "");
    if (j.contains("cluster_tol")) c.cluster_tol = get_number(j, "cluster_tol", "");
    if (j.contains("price_abort")) c.price_abort = get_number(j, "price_abort", "");

    c.validate();
    return c;
}

nlohmann::json config_to_json(const SimConfig& config) {
    json j;
    j["n"] = config.n;
    j["t_max"] = config.t_max;
    j["model"] = to_string(config.rule.kind);
    j["literal_eq"] = config.rule.literal_eq;
    if (config.rule.fundamental != 0.0) j["fundamental"] = config.rule.fundamental;
    j["alpha"] = config.alpha.size() == 1 ? json(config.alpha.front()) : json(config.alpha);
    j["epsilon"] =
        config.epsilon.size() == 1 ? json(config.epsilon.front()) : json(config.epsilon);
    j["seed"] = config.seed;
    j["noise_mode"] = to_string(config.noise_mode);
    j["dividend_family"] =
        config.dividend_family == DividendFamily::normal ? "normal" : "lognormal";
    j["market"] = {{"r", config.params.r},
                   {"a", config.params.a},
                   {"sigma", config.params.sigma},
                   {"z_s", config.params.z_s},
                   {"y_bar", config.params.y_bar}};
    json init;
    init["family"] = to_string(config.init.family);
    switch (config.init.family) {
        case InitFamily::lognormal:
            init["mean"] = config.init.mean;
            init["sdlog"] = config.init.sdlog;
            break;
        case InitFamily::beta:
            init["a"] = config.init.beta_a;
            init["b"] = config.init.beta_b;
            break;
        case InitFamily::explicit_values:
            init["values"] = config.init.values;
            break;
        case InitFamily::uniform01:
            break;
    }
    j["init"] = std::move(init);
    if (config.shift) {
        json s;
        s["t0"] = config.shift->t0;
        s["magnitude"] = config.shift->magnitude;
        s["target"] = to_string(config.shift->target);
        if (config.shift->target == ShiftTargetKind::essential_classes)
            s["classes"] = config.shift->class_count;
        if (config.shift->target == ShiftTargetKind::explicit_agents)
            s["agents"] = config.shift->agents;
        j["shift"] = std::move(s);
    }
    j["record_opinions"] = config.record_opinions;
    j["edge_threshold"] = config.edge_threshold;
    j["cluster_tol"] = config.cluster_tol;
    j["price_abort"] = config.price_abort;
    return j;
}

namespace {

SimConfig grid_base(RuleKind kind) {
    SimConfig c;
    c.n = 100;
    c.t_max = 300;
    c.rule.kind = kind;
    c.params = {0.05, 1.0, 0.5, 0.1, 0.2};  // r, a, sigma, z_s, y_bar
    c.init.family = InitFamily::lognormal;
    c.init.mean = 3.0;
    c.init.sdlog = 0.25;
    c.epsilon = {kind == RuleKind::bc ? 0.25 : 0.05};
    c.alpha = {0.5};
    return c;
}

std::vector<PresetRun> expand_grid(RuleKind kind, std::uint64_t seed) {
    std::vector<PresetRun> out;
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (double sigma : {0.1, 0.5, 1.0}) {
            SimConfig c = grid_base(kind);
            c.alpha = {alpha};
            c.params.sigma = sigma;
            c.seed = seed;
            char label[48];
            std::snprintf(label, sizeof label, "alpha%.1f_sigma%.1f", alpha, sigma);
            out.push_back({label, std::move(c)});
        }
    }
    return out;
}

SimConfig shift_base(std::uint64_t seed) {
    SimConfig c;
    c.n = 100;
    c.t_max = 150;
    c.rule.kind = RuleKind::fb;
    c.params = {0.05, 1.0, 0.1, 0.0, 0.15};  // p* = 3
    c.init.family = InitFamily::lognormal;
    c.init.mean = 3.0;
    c.init.sdlog = 0.25;
    c.alpha = {0.5};
    c.epsilon = {0.0005};
    c.seed = seed;
    c.shift = ShiftSpec{};
    c.shift->t0 = 50;
    c.shift->magnitude = -0.5;
    return c;
}

// Structured profile behind the flash-crash preset: a core of agents
// sitting just off the fundamental (one essential class), one far-out
// frozen agent (a second essential class), and a symmetric cloud of
// followers that re-anchors the price after the drop.
SimConfig flash_crash_config(std::uint64_t seed) {
    constexpr int n = 100;
    constexpr int core = 9;
    constexpr double p_star = 3.0;

    SimConfig c;
    c.n = n;
    c.t_max = 150;
    c.rule.kind = RuleKind::fb;
    c.params = {0.05, 1.0, 0.0, 0.0, 0.15};  // sigma = 0: deterministic path
    c.alpha = {0.5};
    c.seed = seed;

    std::vector<double> x(n), eps(n);
    std::mt19937_64 rng(derive_seed(seed, 0xF1A5));
    std::uniform_real_distribution<double> core_dev(0.006, 0.012);
    std::uniform_real_distribution<double> cloud_dev(0.08, 0.35);
    for (int i = 0; i < core; ++i) {
        x[i] = p_star * (1.0 + core_dev(rng));
        eps[i] = 0.03;
    }
    x[core] = p_star * 1.30;  // frozen outsider
    eps[core] = 0.004;
    for (int i = core + 1; i < n; ++i) {
        const double u = cloud_dev(rng);
        x[i] = p_star * (i % 2 == 0 ? 1.0 + u : 1.0 - u);
        eps[i] = 0.4;
    }
    c.init.family = InitFamily::explicit_values;
    c.init.values = std::move(x);
    c.epsilon = std::move(eps);

    c.shift = ShiftSpec{};
    c.shift->t0 = 1;
    c.shift->target = ShiftTargetKind::essential_classes;
    c.shift->class_count = 2;
    c.shift->magnitude = -0.5;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"bc-grid",          "pa-grid",           "fb-grid",    "shift-essential",
            "shift-inessential", "fb-shift-essential", "flash-crash"};
}

std::vector<PresetRun> expand_preset(const std::string& name, std::uint64_t seed) {
    if (name == "bc-grid") return expand_grid(RuleKind::bc, seed);
    if (name == "pa-grid") return expand_grid(RuleKind::pa, seed);
    if (name == "fb-grid") return expand_grid(RuleKind::fb, seed);
    if (name == "shift-essential" || name == "fb-shift-essential") {
        SimConfig c = shift_base(seed);
        c.shift->target = ShiftTargetKind::essential_classes;
        c.shift->class_count = 1;
        return {{"", std::move(c)}};
    }
    if (name == "shift-inessential") {
        SimConfig c = shift_base(seed);
        c.shift->target = ShiftTargetKind::inessential_union;
        return {{"", std::move(c)}};
    }
    if (name == "flash-crash") return {{"", flash_crash_config(seed)}};
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace opm
