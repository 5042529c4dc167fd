#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewspec/transfer.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

// Eigenvalues sorted by decreasing modulus (ties by phase angle).
std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& M);

// (values, vectors) without the modulus sort; column i pairs with value i.
std::pair<Eigen::VectorXcd, Eigen::MatrixXcd> eigenpairs(const Eigen::MatrixXcd& M);

// Singular values, decreasing.
std::vector<double> singular_values(const Eigen::MatrixXcd& M);

// Greedy nearest matching from each `a` entry (largest modulus first) to an
// unused `b` entry; returns per-a (distance, matched b value).
std::vector<std::pair<double, Complex>> match_spectra(const std::vector<Complex>& a,
                                                      const std::vector<Complex>& b);

struct Resonance {
    Complex lambda;    // refined (2K) value
    double stab_err;   // match distance K -> 2K
    bool stable;
};

struct ResonanceSet {
    int alpha_num = 0;
    int alpha_den = 1;
    double tol = 1e-6;
    double r_floor = 0.05;
    double r_m = 0.125;  // Sobolev-radius diagnostic at the reference order
    std::vector<Resonance> entries;  // sorted by decreasing modulus

    int n_stable() const;
    double max_stable_modulus() const;  // 0 when no stable entry
};

// Truncation-stability filter: eigenvalues at cutoff K matched against 2K;
// a resonance is stable when its match moves less than tol and sits above
// r_floor = max(2 tol, 0.05). The trapped-set radius r_m = e_min^m sqrt(k/e_min)
// is reported for reference order m = -3.
ResonanceSet resonances_from_values(const std::vector<Complex>& coarse,
                                    const std::vector<Complex>& fine, int alpha_num,
                                    int alpha_den, const ExpandingMap& map,
                                    double tol = 1e-6);
ResonanceSet resonances_from_matrices(const TruncatedTransferMatrix& at_K,
                                      const TruncatedTransferMatrix& at_2K,
                                      const ExpandingMap& map, double tol = 1e-6);

ResonanceSet extract_resonances(const ExpandingMap& map, const CocycleU1& c, int nu,
                                int K, double tol = 1e-6, int threads = 1);
ResonanceSet extract_resonances(const ExpandingMap& map, const CocycleSU2& c, int two_j,
                                int K, double tol = 1e-6, int threads = 1);

// Number of stable resonances with |lambda| > eps; eps must exceed r_floor.
int count_above(const ResonanceSet& rs, double eps);

// max_k ( sum_{i<=k} log|lambda_i| - sum_{i<=k} log sigma_i ), <= 0 up to
// roundoff for any matrix (standard Weyl inequality orientation). Partial
// products are compared up to the numerical rank only; beyond it both sides
// are exactly zero while computed eigenvalues of a defective tail are noise.
double weyl_violation(std::vector<Complex> lambdas, std::vector<double> sigmas);

double sobolev_radius(int m, int k, double e_min);

// SRB density of the base map from the Perron-Frobenius leading eigenvector,
// normalized to mean one (c_0 = 1).
struct SrbDensity {
    int K = 0;
    Eigen::VectorXcd coef;        // Fourier coefficients c_m, m in [-K, K]
    double eigen_residual = 0.0;  // |lambda_lead - 1|

    double eval(double x) const;
};

SrbDensity srb_density(const ExpandingMap& map, int K, int threads = 1);

} // namespace skewspec
