#include "wgs/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace wgs {

using nlohmann::json;

namespace {

const std::set<std::string> top_keys{"experiment", "grid", "initial", "integrator",
                                     "observe",    "norms", "accept",  "seed",
                                     "out",        "threads"};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& scope) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown field '" + scope + it.key() + "'");
}

template <class T>
T require(const json& j, const std::string& scope, const std::string& key) {
    if (!j.contains(key))
        throw std::invalid_argument("config: missing required field '" + scope + key + "'");
    return j.at(key).get<T>();
}

json apply_override(json j, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("config: override must be key=value, got '" + kv + "'");
    std::string path = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    json* node = &j;
    std::size_t pos = 0;
    while (true) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (dot == std::string::npos) {
            json parsed;
            try {
                parsed = json::parse(val);
            } catch (...) {
                parsed = val; // bare string
            }
            (*node)[key] = parsed;
            break;
        }
        node = &((*node)[key]);
        pos = dot + 1;
    }
    return j;
}

} // namespace

ExperimentConfig load_config(const std::string& json_text,
                             const std::vector<std::string>& overrides) {
    json j = json::parse(json_text);
    for (const auto& kv : overrides) j = apply_override(j, kv);
    check_keys(j, top_keys, "");

    ExperimentConfig c;
    if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
    {
        const json& g = j.contains("grid") ? j["grid"] : json::object();
        check_keys(g, {"L", "n_x", "p_max", "n_y"}, "grid.");
        c.L = require<double>(g, "grid.", "L");
        c.n_x = require<int>(g, "grid.", "n_x");
        c.p_max = require<int>(g, "grid.", "p_max");
        if (g.contains("n_y")) c.n_y = g["n_y"].get<int>();
    }
    if (j.contains("initial")) {
        const json& d = j["initial"];
        check_keys(d, {"eps", "modes", "xi_sigma", "amplitude", "plateau_xi"}, "initial.");
        if (d.contains("eps")) c.eps = d["eps"].get<double>();
        if (d.contains("modes")) c.modes = d["modes"].get<std::vector<int>>();
        if (d.contains("xi_sigma")) c.xi_sigma = d["xi_sigma"].get<double>();
        if (d.contains("amplitude")) c.amplitude = d["amplitude"].get<double>();
        if (d.contains("plateau_xi")) c.plateau_xi = d["plateau_xi"].get<double>();
    }
    if (j.contains("integrator")) {
        const json& d = j["integrator"];
        check_keys(d, {"tol", "dt"}, "integrator.");
        if (d.contains("tol")) c.tol = d["tol"].get<double>();
        if (d.contains("dt")) c.dt = d["dt"].get<double>();
    }
    if (j.contains("observe")) {
        const json& d = j["observe"];
        check_keys(d, {"T", "n_samples", "tau_end", "eps_list", "t_end"}, "observe.");
        if (d.contains("T")) c.T = d["T"].get<double>();
        if (d.contains("n_samples")) c.n_samples = d["n_samples"].get<int>();
        if (d.contains("tau_end")) c.tau_end = d["tau_end"].get<double>();
        if (d.contains("eps_list")) c.eps_list = d["eps_list"].get<std::vector<double>>();
        if (d.contains("t_end")) c.t_end = d["t_end"].get<double>();
    }
    if (j.contains("norms")) {
        const json& d = j["norms"];
        check_keys(d, {"s", "sobolev_N", "delta"}, "norms.");
        if (d.contains("s")) c.norms.s = d["s"].get<double>();
        if (d.contains("sobolev_N")) c.norms.sobolev_N = d["sobolev_N"].get<int>();
        if (d.contains("delta")) c.norms.delta = d["delta"].get<double>();
    }
    if (j.contains("accept")) {
        const json& d = j["accept"];
        check_keys(d, {"pass_factor"}, "accept.");
        if (d.contains("pass_factor")) c.pass_factor = d["pass_factor"].get<double>();
    }
    if (j.contains("seed")) c.seed = j["seed"].get<unsigned>();
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    return c;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_config(text, overrides);
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["grid"] = {{"L", L}, {"n_x", n_x}, {"p_max", p_max}, {"n_y", n_y}};
    j["initial"] = {{"eps", eps},
                    {"modes", modes},
                    {"xi_sigma", xi_sigma},
                    {"amplitude", amplitude},
                    {"plateau_xi", plateau_xi}};
    j["integrator"] = {{"tol", tol}, {"dt", dt}};
    j["observe"] = {{"T", T},
                    {"n_samples", n_samples},
                    {"tau_end", tau_end},
                    {"eps_list", eps_list},
                    {"t_end", t_end}};
    j["norms"] = {{"s", norms.s}, {"sobolev_N", norms.sobolev_N}, {"delta", norms.delta}};
    j["accept"] = {{"pass_factor", pass_factor}};
    j["seed"] = seed;
    j["out"] = out_dir;
    j["threads"] = threads;
    return j.dump(2);
}

} // namespace wgs
