#ifndef WGS_CONFIG_HPP
#define WGS_CONFIG_HPP

// Declarative experiment configuration: JSON in, schema-checked, with
// --set key=value dotted-path overrides.

#include "wgs/field.hpp"
#include "wgs/norms.hpp"

#include <string>
#include <vector>

namespace wgs {

struct ExperimentConfig {
    std::string experiment = "scatter";
    // grid
    double L = 512.0 * M_PI;
    int n_x = 1024;
    int p_max = 5;
    int n_y = 0;
    // initial data
    double eps = 0.05;
    std::vector<int> modes{1, 3};
    double xi_sigma = 0.4;
    double amplitude = 1.0;
    double plateau_xi = 1.0;
    // integration
    double tol = 1e-9;
    double dt = 0.01;
    // observation
    double T = 200.0;
    int n_samples = 12;
    double tau_end = 10.0;
    std::vector<double> eps_list{0.2, 0.1, 0.05};
    double t_end = 10.0;
    // norms
    NormParams norms;
    // acceptance
    double pass_factor = 0.2;
    // misc
    unsigned seed = 1;
    std::string out_dir = "out";
    int threads = 1;

    GridPtr make_grid() const { return build_grid(L, n_x, p_max, n_y); }
    std::string to_json() const;
};

// Parses and validates; unknown or missing required fields throw with the
// offending field named. Overrides are "dotted.path=value" strings.
ExperimentConfig load_config(const std::string& json_text,
                             const std::vector<std::string>& overrides = {});
ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides = {});

} // namespace wgs

#endif
