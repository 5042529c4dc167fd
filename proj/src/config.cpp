#include "skewspec/config.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "skewspec/toml_lite.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::string& where,
                 const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be a table");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto& k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

double get_double(const json& obj, const char* key, double dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> get_double_list(const json& obj, const char* key) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    const json& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> get_int_list(const json& obj, const char* key) {
    std::vector<int> out;
    if (!obj.contains(key)) return out;
    const json& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
    for (const auto& e : v) {
        if (!e.is_number_integer())
            throw ConfigError(std::string("'") + key + "' must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

FourierSeries get_series(const json& parent, const char* key, const std::string& where) {
    FourierSeries f;
    if (!parent.contains(key)) return f;
    const json& obj = parent.at(key);
    expect_keys(obj, where, {"constant", "cos", "sin"});
    f.constant = get_double(obj, "constant", 0.0);
    f.cosc = get_double_list(obj, "cos");
    f.sinc = get_double_list(obj, "sin");
    return f;
}

json series_json(const FourierSeries& f) {
    json j;
    j["constant"] = f.constant;
    j["cos"] = f.cosc;
    j["sin"] = f.sinc;
    return j;
}

void parse_cocycle(const json& obj, ExperimentConfig& cfg) {
    const std::string group = get_string(obj, "group", "u1");
    if (group == "u1") {
        cfg.group = GroupTag::U1;
        expect_keys(obj, "cocycle", {"group", "omega"});
        cfg.u1_omega = get_series(obj, "omega", "cocycle.omega");
        return;
    }
    if (group != "su2") throw ConfigError("cocycle group must be \"u1\" or \"su2\"");
    cfg.group = GroupTag::SU2;

    const std::string form = get_string(obj, "form", "single");
    if (form == "single") {
        cfg.su2_product = false;
        expect_keys(obj, "cocycle", {"group", "form", "omega1", "omega2", "omega3"});
        cfg.su2_omega[0] = get_series(obj, "omega1", "cocycle.omega1");
        cfg.su2_omega[1] = get_series(obj, "omega2", "cocycle.omega2");
        cfg.su2_omega[2] = get_series(obj, "omega3", "cocycle.omega3");
        return;
    }
    if (form != "product") throw ConfigError("cocycle form must be \"single\" or \"product\"");

    cfg.su2_product = true;
    cfg.su2_axes = get_int_list(obj, "axes");
    if (cfg.su2_axes.empty()) throw ConfigError("product cocycle needs a nonempty 'axes' list");
    std::vector<std::string> allowed = {"group", "form", "axes"};
    for (std::size_t i = 0; i < cfg.su2_axes.size(); ++i) {
        int axis = cfg.su2_axes[i];
        if (axis < 1 || axis > 3) throw ConfigError("cocycle axes entries must be 1, 2 or 3");
        allowed.push_back("factor" + std::to_string(i + 1));
    }
    expect_keys(obj, "cocycle", allowed);
    for (std::size_t i = 0; i < cfg.su2_axes.size(); ++i) {
        std::string key = "factor" + std::to_string(i + 1);
        if (!obj.contains(key)) throw ConfigError("missing table 'cocycle." + key + "'");
        cfg.su2_series.push_back(get_series(obj, key.c_str(), "cocycle." + key));
    }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    expect_keys(doc, "top level",
                {"config_version", "seed", "map", "cocycle", "spectrum", "counting", "trapped",
                 "correlation", "captive"});

    std::int64_t version = get_int(doc, "config_version", 1);
    if (version != 1) throw ConfigError("unsupported config_version " + std::to_string(version));
    cfg.config_version = 1;

    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
            throw ConfigError("'seed' must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }

    if (doc.contains("map")) {
        const json& m = doc.at("map");
        expect_keys(m, "map", {"k", "a"});
        cfg.map_k = static_cast<int>(get_int(m, "k", 2));
        cfg.map_a = get_double(m, "a", 0.0);
    }
    cfg.make_map();  // validates k and expansion

    if (doc.contains("cocycle")) parse_cocycle(doc.at("cocycle"), cfg);

    if (doc.contains("spectrum")) {
        const json& s = doc.at("spectrum");
        expect_keys(s, "spectrum", {"alphas", "cutoff", "tol"});
        cfg.alphas = get_int_list(s, "alphas");
        cfg.cutoff = static_cast<int>(get_int(s, "cutoff", 0));
        cfg.tol = get_double(s, "tol", 1e-6);
    }
    if (cfg.alphas.empty()) cfg.alphas = {0, 1, 2, 3, 4};
    for (int a : cfg.alphas) {
        if (a < 0) throw ConfigError("'alphas' entries must be >= 0");
    }
    if (cfg.cutoff < 0) throw ConfigError("'cutoff' must be >= 0 (0 = automatic)");
    if (!(cfg.tol > 0.0)) throw ConfigError("'tol' must be positive");

    if (doc.contains("counting")) {
        const json& c = doc.at("counting");
        expect_keys(c, "counting", {"epsilon"});
        cfg.epsilon = get_double(c, "epsilon", 0.2);
    }
    if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 1.0)
        throw ConfigError("'epsilon' must lie in (0, 1)");

    if (doc.contains("trapped")) {
        const json& t = doc.at("trapped");
        expect_keys(t, "trapped", {"delta", "x_grid", "sphere_grid", "budget", "box_deltas"});
        cfg.delta = get_double(t, "delta", 0.0);
        cfg.x_grid = static_cast<int>(get_int(t, "x_grid", cfg.x_grid));
        cfg.sphere_grid = static_cast<int>(get_int(t, "sphere_grid", cfg.sphere_grid));
        std::int64_t budget = get_int(t, "budget", static_cast<std::int64_t>(cfg.budget));
        if (budget < 1) throw ConfigError("'budget' must be >= 1");
        cfg.budget = static_cast<std::uint64_t>(budget);
        cfg.box_deltas = get_double_list(t, "box_deltas");
    }
    if (cfg.delta < 0.0) throw ConfigError("'delta' must be >= 0 (0 = alpha^{-1/2} rule)");
    if (cfg.x_grid < 1 || cfg.sphere_grid < 1) throw ConfigError("grid sizes must be >= 1");
    for (double d : cfg.box_deltas) {
        if (!(d > 0.0)) throw ConfigError("'box_deltas' entries must be positive");
    }

    if (doc.contains("correlation")) {
        const json& c = doc.at("correlation");
        expect_keys(c, "correlation",
                    {"alpha", "n_max", "psi_re", "psi_im", "phi_re", "phi_im"});
        cfg.corr_alpha = static_cast<int>(get_int(c, "alpha", 1));
        cfg.corr_n_max = static_cast<int>(get_int(c, "n_max", 40));
        cfg.psi_re = get_double_list(c, "psi_re");
        cfg.psi_im = get_double_list(c, "psi_im");
        cfg.phi_re = get_double_list(c, "phi_re");
        cfg.phi_im = get_double_list(c, "phi_im");
    }
    if (cfg.psi_re.empty()) cfg.psi_re = {0.0, 0.0, 1.0};
    if (cfg.phi_re.empty()) cfg.phi_re = {0.0, 0.0, 1.0};
    if (cfg.psi_im.empty()) cfg.psi_im.assign(cfg.psi_re.size(), 0.0);
    if (cfg.phi_im.empty()) cfg.phi_im.assign(cfg.phi_re.size(), 0.0);
    if (cfg.psi_im.size() != cfg.psi_re.size() || cfg.phi_im.size() != cfg.phi_re.size())
        throw ConfigError("observable re/im coefficient lists must have equal length");
    if (cfg.psi_re.size() % 2 == 0 || cfg.phi_re.size() % 2 == 0)
        throw ConfigError("observable coefficient lists must have odd length (centered modes)");
    if (cfg.corr_alpha < 0) throw ConfigError("'correlation.alpha' must be >= 0");
    if (cfg.corr_n_max < 4) throw ConfigError("'correlation.n_max' must be >= 4");

    if (doc.contains("captive")) {
        const json& c = doc.at("captive");
        expect_keys(c, "captive", {"n_max", "x_grid", "xi_grid", "sphere_grid", "kappa"});
        cfg.captive_n_max = static_cast<int>(get_int(c, "n_max", cfg.captive_n_max));
        cfg.captive_x_grid = static_cast<int>(get_int(c, "x_grid", cfg.captive_x_grid));
        cfg.captive_xi_grid = static_cast<int>(get_int(c, "xi_grid", cfg.captive_xi_grid));
        cfg.captive_sphere_grid =
            static_cast<int>(get_int(c, "sphere_grid", cfg.captive_sphere_grid));
        cfg.kappa = get_double(c, "kappa", 0.0);
    }
    if (cfg.captive_n_max < 1 || cfg.captive_n_max > 30)
        throw ConfigError("'captive.n_max' must lie in [1, 30]");
    if (cfg.captive_x_grid < 1 || cfg.captive_xi_grid < 1 || cfg.captive_sphere_grid < 1)
        throw ConfigError("captive grid sizes must be >= 1");
    if (cfg.kappa < 0.0) throw ConfigError("'captive.kappa' must be >= 0 (0 = default rule)");

    // touch the cocycle factories once so malformed coefficient data surfaces here
    if (cfg.group == GroupTag::SU2) cfg.make_su2();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config(load_config_json(path));
}

ExpandingMap ExperimentConfig::make_map() const {
    if (map_a == 0.0) return ExpandingMap::linear(map_k);
    return ExpandingMap::perturbed(map_k, map_a);
}

CocycleU1 ExperimentConfig::make_u1() const { return CocycleU1{u1_omega}; }

CocycleSU2 ExperimentConfig::make_su2() const {
    if (!su2_product) return CocycleSU2::single(su2_omega[0], su2_omega[1], su2_omega[2]);
    std::vector<CocycleSU2::Factor> factors;
    factors.reserve(su2_axes.size());
    for (std::size_t i = 0; i < su2_axes.size(); ++i) {
        factors.push_back(CocycleSU2::Factor{su2_axes[i], su2_series[i]});
    }
    return CocycleSU2::product(std::move(factors));
}

double ExperimentConfig::delta_for(double alpha_value) const {
    if (delta > 0.0) return delta;
    if (alpha_value > 1.0) return 1.0 / std::sqrt(alpha_value);
    return 1.0;
}

nlohmann::json resolved_json(const ExperimentConfig& cfg) {
    json j;
    j["config_version"] = cfg.config_version;
    j["seed"] = cfg.seed;
    j["map"] = {{"k", cfg.map_k}, {"a", cfg.map_a}};

    json co;
    if (cfg.group == GroupTag::U1) {
        co["group"] = "u1";
        co["omega"] = series_json(cfg.u1_omega);
    } else {
        co["group"] = "su2";
        if (!cfg.su2_product) {
            co["form"] = "single";
            co["omega1"] = series_json(cfg.su2_omega[0]);
            co["omega2"] = series_json(cfg.su2_omega[1]);
            co["omega3"] = series_json(cfg.su2_omega[2]);
        } else {
            co["form"] = "product";
            co["axes"] = cfg.su2_axes;
            for (std::size_t i = 0; i < cfg.su2_series.size(); ++i) {
                co["factor" + std::to_string(i + 1)] = series_json(cfg.su2_series[i]);
            }
        }
    }
    j["cocycle"] = co;

    j["spectrum"] = {{"alphas", cfg.alphas}, {"cutoff", cfg.cutoff}, {"tol", cfg.tol}};
    j["counting"] = {{"epsilon", cfg.epsilon}};
    j["trapped"] = {{"delta", cfg.delta},
                    {"x_grid", cfg.x_grid},
                    {"sphere_grid", cfg.sphere_grid},
                    {"budget", cfg.budget},
                    {"box_deltas", cfg.box_deltas}};
    j["correlation"] = {{"alpha", cfg.corr_alpha}, {"n_max", cfg.corr_n_max},
                        {"psi_re", cfg.psi_re},    {"psi_im", cfg.psi_im},
                        {"phi_re", cfg.phi_re},    {"phi_im", cfg.phi_im}};
    j["captive"] = {{"n_max", cfg.captive_n_max},
                    {"x_grid", cfg.captive_x_grid},
                    {"xi_grid", cfg.captive_xi_grid},
                    {"sphere_grid", cfg.captive_sphere_grid},
                    {"kappa", cfg.kappa}};
    return j;
}

}  // namespace skewspec
