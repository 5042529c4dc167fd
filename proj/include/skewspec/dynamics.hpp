#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewspec/fourier.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

// Expanding circle map E(x) = k x + (a / 2pi) sin(2 pi x) mod 1, k - |a| > 1.
// a = 0 is the linear case with exact closed-form branches.
struct ExpandingMap {
    int k = 2;
    double a = 0.0;
    double e_min = 2.0;      // min_x E'(x) = k - |a|, exact
    double E_min_est = 2.0;  // estimate of lim_n (min (E^n)')^{1/n}

    static ExpandingMap linear(int k);
    static ExpandingMap perturbed(int k, double a);

    bool is_linear() const { return a == 0.0; }
    double lift(double x) const;   // k x + (a/2pi) sin(2 pi x), no reduction
    double eval(double x) const;   // E(x) in [0,1)
    double deriv(double x) const;  // E'(x) = k + a cos(2 pi x)

    // y in the eps-th branch interval with E(y) = x mod 1; linear case (x+eps)/k.
    // Safeguarded Newton seeded at the linear preimage, residual <= 1e-14 in the
    // lift, <= 100 iterations, bisection fallback on the bracketing interval.
    double inverse_branch(double x, int eps) const;
};

// (E(x), E'(x)) in one call.
std::pair<double, double> eval_map(const ExpandingMap& map, double x);

// (min over grid of ((E^n)'(x))^{1/n}); series variant for convergence inspection.
double min_expansion(const ExpandingMap& map, int n, int grid);
std::vector<double> min_expansion_series(const ExpandingMap& map, int n_max, int grid);

// Word over the branch alphabet {0,...,k-1}; letters[0] is the first branch applied.
struct Word {
    std::vector<int> letters;

    int length() const { return int(letters.size()); }
    Word prefix(int j) const { return Word{{letters.begin(), letters.begin() + j}}; }

    // Base-k digits of idx, least significant digit = first letter.
    static Word from_index(std::uint64_t idx, int k, int n);
    std::uint64_t to_index(int k) const;
    std::string to_string() const;  // letters in application order
};

struct WordPreimage {
    double x_eps = 0.0;          // E_eps^{-n}(x)
    double expansion = 1.0;      // E'_eps(x) = (E^n)'(x_eps)
    std::vector<double> path;    // x_{eps|_j}, j = 1..n
};

// x_eps = E_{eps_n}^{-1} o ... o E_{eps_1}^{-1}(x) and the chain-rule expansion.
WordPreimage word_preimage(const ExpandingMap& map, const Word& word, double x);

// U(1) cocycle: tau_nu(x) = exp(i nu Omega(x)).
struct CocycleU1 {
    FourierSeries omega;

    Complex phase(int nu, double x) const;  // exp(i nu Omega(x))
};

std::pair<double, double> u1_phase(const CocycleU1& c, double x);  // (Omega, Omega')

// SU(2) cocycle, either tau(x) = exp(i Omega(x).J) with Omega: S^1 -> R^3,
// or an ordered product of axis factors prod_l exp(i omega_l(x) J_{axis_l}).
// Both forms evaluate through the same interface.
struct CocycleSU2 {
    struct Factor {
        int axis = 3;  // 1, 2 or 3
        FourierSeries angle;
    };

    bool product_form = false;
    std::array<FourierSeries, 3> omega{};  // single-exponential components
    std::vector<Factor> factors;           // product form, left to right

    static CocycleSU2 single(FourierSeries o1, FourierSeries o2, FourierSeries o3);
    static CocycleSU2 product(std::vector<Factor> factors);

    Eigen::Vector3d omega_value(double x) const;  // single form only
    Eigen::Vector3d omega_deriv(double x) const;
};

struct SU2Data {
    Eigen::Matrix2cd tau;  // fundamental representation, unitary, det 1
    Eigen::Vector3d u;     // u.J = -i tau^{-1} tau' (left log-derivative)
};

SU2Data su2_data(const CocycleSU2& c, double x);

// exp(i phi axis.J) in the fundamental rep via the closed Rodrigues-type form.
Eigen::Matrix2cd fundamental_rotation(double phi, const Eigen::Vector3d& axis);

} // namespace skewspec
