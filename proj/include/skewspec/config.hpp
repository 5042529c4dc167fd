#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewspec/dynamics.hpp"
#include "skewspec/phasespace.hpp"
#include "skewspec/transfer.hpp"

namespace skewspec {

// Fully resolved experiment description.  Parsed from TOML/JSON, validated
// with unknown-key rejection, and echoed verbatim next to every output so a
// run is reproducible from its artifacts alone.
struct ExperimentConfig {
    int config_version = 1;
    std::uint64_t seed = 0x5EED;

    // base map E(x) = kx + (a/2pi) sin(2pix) mod 1
    int map_k = 2;
    double map_a = 0.0;

    // cocycle
    GroupTag group = GroupTag::U1;
    FourierSeries u1_omega;                   // U(1): tau = e^{i nu Omega}
    bool su2_product = false;                 // SU(2): single exponential vs product form
    std::array<FourierSeries, 3> su2_omega;   // single: tau = e^{i Omega . J}
    std::vector<int> su2_axes;                // product: axis (1..3) per factor
    std::vector<FourierSeries> su2_series;    // product: angle series per factor

    // spectrum / counting
    std::vector<int> alphas;  // nu values for U(1), two_j values for SU(2)
    int cutoff = 0;           // Fourier cutoff K; 0 = resolution policy
    double tol = 1e-6;
    double epsilon = 0.2;     // resonance-counting threshold

    // trapped set / box counting
    double delta = 0.0;       // sampling accuracy; 0 = alpha^{-1/2} rule
    int x_grid = 256;
    int sphere_grid = 64;
    std::uint64_t budget = trapped_budget;
    std::vector<double> box_deltas;

    // correlation
    int corr_alpha = 1;
    int corr_n_max = 40;
    std::vector<double> psi_re, psi_im, phi_re, phi_im;  // centered Fourier coefficients

    // captive counting; the start grid must resolve the sup over the slab,
    // sparser grids make the reported max-over-starts jitter with n
    int captive_n_max = 18;
    int captive_x_grid = 512;
    int captive_xi_grid = 65;
    int captive_sphere_grid = 16;
    double kappa = 0.0;       // escape-radius margin; 0 = default rule

    ExpandingMap make_map() const;
    CocycleU1 make_u1() const;
    CocycleSU2 make_su2() const;
    // Effective trapped-set accuracy for a spectral parameter value.
    double delta_for(double alpha_value) const;
};

// Validates and resolves a parsed config document.  Unknown keys anywhere in
// the document are errors.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config(const std::string& path);

// Full echo of the resolved parameters (defaults applied).
nlohmann::json resolved_json(const ExperimentConfig& cfg);

}  // namespace skewspec
