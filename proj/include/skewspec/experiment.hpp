#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewspec/config.hpp"
#include "skewspec/phasespace.hpp"
#include "skewspec/spectral.hpp"

namespace skewspec {

// Experiment drivers: each computes one table/figure, writes CSV (+ SVG)
// artifacts plus resolved.json into `out_dir`, and returns the data for
// in-process callers.  Per-alpha rows run concurrently up to `threads`;
// all file writing happens on the calling thread after the rows finish, so
// identical config + seed gives byte-identical outputs.

struct SpectrumOutcome {
    std::vector<ResonanceSet> sets;       // one per alpha (empty entries on row failure)
    std::vector<std::string> row_errors;  // parallel to sets; empty string = ok
};

SpectrumOutcome run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir,
                             int threads = 1);

struct WeylRow {
    int alpha_num = 0;
    int alpha_den = 1;
    int cutoff = 0;
    int count = 0;           // stable resonances above epsilon
    double volume = 0.0;     // Vol of the delta(alpha)-neighborhood, canonical units
    double ratio_count = 0.0;   // log N / log alpha
    double ratio_volume = 0.0;  // 1 + log Vol / log alpha
    bool flagged = false;       // row not usable (small alpha, empty count, ...)
    std::string note;
};

std::vector<WeylRow> run_weyl(const ExperimentConfig& cfg, const std::string& out_dir,
                              int threads = 1);

TrappedCloud run_trapped(const ExperimentConfig& cfg, const std::string& out_dir,
                         int threads = 1);

struct GapRow {
    int alpha_num = 0;
    int alpha_den = 1;
    double radius = 0.0;  // max stable resonance modulus
};

// Rows for every alpha > 0 in the config; reference value 1/sqrt(E_min).
std::vector<GapRow> run_gap(const ExperimentConfig& cfg, const std::string& out_dir,
                            int threads = 1);

struct CorrelationOutcome {
    std::vector<double> abs_c;   // |C(n) - C_inf|, n = 0..n_max
    int fit_start = 0;
    double fitted_rate = 0.0;    // exp(slope of log|C| over the fitted tail)
    double leading_modulus = 0.0;
    bool degenerate = false;     // leading stable modulus >= 1 - tol
    bool fit_ok = true;
};

CorrelationOutcome run_correlation(const ExperimentConfig& cfg, const std::string& out_dir,
                                   int threads = 1);

struct CaptiveOutcome {
    double R = 0.0;
    double kappa = 0.0;
    std::vector<std::uint64_t> counts;  // N(1)..N(n_max)
    std::vector<double> log_ratios;     // log N(n) / n
};

CaptiveOutcome run_captive(const ExperimentConfig& cfg, const std::string& out_dir,
                           int threads = 1);

}  // namespace skewspec
