#include "skewspec/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace skewspec {

ExpandingMap ExpandingMap::linear(int k) {
    if (k < 2) throw ConfigError("expanding map needs k >= 2");
    ExpandingMap m;
    m.k = k;
    m.a = 0.0;
    m.e_min = double(k);
    m.E_min_est = double(k);
    return m;
}

ExpandingMap ExpandingMap::perturbed(int k, double a) {
    if (k < 2) throw ConfigError("expanding map needs k >= 2");
    if (!(k - std::abs(a) > 1.0))
        throw ConfigError("expanding map needs k - |a| > 1");
    ExpandingMap m;
    m.k = k;
    m.a = a;
    m.e_min = k - std::abs(a);
    m.E_min_est = (a == 0.0) ? double(k) : min_expansion(m, 12, 2048);
    return m;
}

double ExpandingMap::lift(double x) const {
    return k * x + (a / two_pi) * std::sin(two_pi * x);
}

double ExpandingMap::eval(double x) const {
    double v = lift(x);
    v -= std::floor(v);
    if (v >= 1.0) v -= 1.0;
    if (v < 0.0) v += 1.0;
    return v;
}

double ExpandingMap::deriv(double x) const {
    return k + a * std::cos(two_pi * x);
}

double ExpandingMap::inverse_branch(double x, int eps) const {
    if (eps < 0 || eps >= k) throw ConfigError("branch index out of range");
    const double target = x + eps;
    double y = target / k;
    if (a == 0.0) return y;
    // lift is strictly increasing, so g(y) = lift(y) - target brackets in [0,1].
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
        double g = lift(y) - target;
        if (std::abs(g) <= 1e-14) return y;
        if (g > 0.0) hi = y; else lo = y;
        double next = y - g / deriv(y);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        y = next;
    }
    throw NumericError("inverse branch iteration failed to converge");
}

std::pair<double, double> eval_map(const ExpandingMap& map, double x) {
    return {map.eval(x), map.deriv(x)};
}

double min_expansion(const ExpandingMap& map, int n, int grid) {
    return min_expansion_series(map, n, grid).back();
}

std::vector<double> min_expansion_series(const ExpandingMap& map, int n_max, int grid) {
    std::vector<double> min_prod(n_max, std::numeric_limits<double>::infinity());
    for (int i = 0; i < grid; ++i) {
        double x = double(i) / grid;
        double p = 1.0;
        for (int j = 0; j < n_max; ++j) {
            p *= map.deriv(x);
            x = map.eval(x);
            if (p < min_prod[j]) min_prod[j] = p;
        }
    }
    std::vector<double> out(n_max);
    for (int j = 0; j < n_max; ++j)
        out[j] = std::pow(min_prod[j], 1.0 / (j + 1));
    return out;
}

Word Word::from_index(std::uint64_t idx, int k, int n) {
    Word w;
    w.letters.resize(n);
    for (int j = 0; j < n; ++j) {
        w.letters[j] = int(idx % std::uint64_t(k));
        idx /= std::uint64_t(k);
    }
    return w;
}

std::uint64_t Word::to_index(int k) const {
    std::uint64_t idx = 0, base = 1;
    for (int l : letters) {
        idx += std::uint64_t(l) * base;
        base *= std::uint64_t(k);
    }
    return idx;
}

std::string Word::to_string() const {
    std::string s;
    for (int l : letters) s += std::to_string(l);
    return s;
}

WordPreimage word_preimage(const ExpandingMap& map, const Word& word, double x) {
    WordPreimage r;
    r.path.reserve(word.letters.size());
    double y = x;
    for (int eps : word.letters) {
        y = map.inverse_branch(y, eps);
        r.path.push_back(y);
        r.expansion *= map.deriv(y);
    }
    r.x_eps = r.path.empty() ? x : r.path.back();
    return r;
}

Complex CocycleU1::phase(int nu, double x) const {
    return std::polar(1.0, nu * omega(x));
}

std::pair<double, double> u1_phase(const CocycleU1& c, double x) {
    return {c.omega(x), c.omega.deriv(x)};
}

CocycleSU2 CocycleSU2::single(FourierSeries o1, FourierSeries o2, FourierSeries o3) {
    CocycleSU2 c;
    c.product_form = false;
    c.omega = {std::move(o1), std::move(o2), std::move(o3)};
    return c;
}

CocycleSU2 CocycleSU2::product(std::vector<Factor> factors) {
    if (factors.empty()) throw ConfigError("product cocycle needs at least one factor");
    for (const Factor& f : factors)
        if (f.axis < 1 || f.axis > 3) throw ConfigError("factor axis must be 1, 2 or 3");
    CocycleSU2 c;
    c.product_form = true;
    c.factors = std::move(factors);
    return c;
}

Eigen::Vector3d CocycleSU2::omega_value(double x) const {
    if (product_form) throw std::logic_error("omega_value: product-form cocycle");
    return {omega[0](x), omega[1](x), omega[2](x)};
}

Eigen::Vector3d CocycleSU2::omega_deriv(double x) const {
    if (product_form) throw std::logic_error("omega_deriv: product-form cocycle");
    return {omega[0].deriv(x), omega[1].deriv(x), omega[2].deriv(x)};
}

namespace {

const Complex I{0.0, 1.0};

// Basis with J3 = diag(-j..j): sigma_1 is the standard Pauli matrix while
// sigma_2, sigma_3 flip sign, preserving sigma_a sigma_b = i eps_abc sigma_c.
Eigen::Matrix2cd pauli_like(int axis) {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    switch (axis) {
        case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 2: s(0, 1) = I;   s(1, 0) = -I;  break;
        case 3: s(0, 0) = -1.0; s(1, 1) = 1.0; break;
    }
    return s;
}

Eigen::Matrix2cd axis_dot_sigma(const Eigen::Vector3d& n) {
    return n.x() * pauli_like(1) + n.y() * pauli_like(2) + n.z() * pauli_like(3);
}

} // namespace

Eigen::Matrix2cd fundamental_rotation(double phi, const Eigen::Vector3d& axis) {
    double nn = axis.norm();
    if (nn == 0.0) return Eigen::Matrix2cd::Identity();
    return std::cos(0.5 * phi) * Eigen::Matrix2cd::Identity() +
           I * std::sin(0.5 * phi) * axis_dot_sigma(axis / nn);
}

SU2Data su2_data(const CocycleSU2& c, double x) {
    SU2Data d;
    if (c.product_form) {
        const int L = int(c.factors.size());
        std::vector<Eigen::Matrix2cd> A(L);
        std::vector<double> dang(L);
        for (int l = 0; l < L; ++l) {
            Eigen::Vector3d axis = Eigen::Vector3d::Unit(c.factors[l].axis - 1);
            A[l] = fundamental_rotation(c.factors[l].angle(x), axis);
            dang[l] = c.factors[l].angle.deriv(x);
        }
        Eigen::Matrix2cd tau = Eigen::Matrix2cd::Identity();
        for (int l = 0; l < L; ++l) tau = tau * A[l];
        // Exact product rule: tau' = sum_l A_1..A_{l-1} (i w_l' J_{a_l}) A_l..A_L.
        Eigen::Matrix2cd dtau = Eigen::Matrix2cd::Zero();
        Eigen::Matrix2cd prefix = Eigen::Matrix2cd::Identity();
        std::vector<Eigen::Matrix2cd> suffix(L + 1);
        suffix[L] = Eigen::Matrix2cd::Identity();
        for (int l = L - 1; l >= 0; --l) suffix[l] = A[l] * suffix[l + 1];
        for (int l = 0; l < L; ++l) {
            Eigen::Matrix2cd gen = 0.5 * pauli_like(c.factors[l].axis);
            dtau += prefix * (I * dang[l] * gen) * suffix[l];
            prefix = prefix * A[l];
        }
        d.tau = tau;
        Eigen::Matrix2cd M = -I * (tau.adjoint() * dtau);  // = u.sigma/2, Hermitian
        for (int m = 1; m <= 3; ++m)
            d.u[m - 1] = (M * pauli_like(m)).trace().real();
    } else {
        Eigen::Vector3d w = c.omega_value(x);
        Eigen::Vector3d v = c.omega_deriv(x);
        double phi = w.norm();
        d.tau = (phi == 0.0) ? Eigen::Matrix2cd::Identity()
                             : fundamental_rotation(phi, w / phi);
        // u = f(ad) applied to Omega' for tau = exp(i Omega.J):
        // u = s v + c2 (w x v) + c3 (w.v) w with s = sin(phi)/phi,
        // c2 = (1-cos phi)/phi^2, c3 = (1 - sin(phi)/phi)/phi^2.
        double s, c2, c3;
        if (phi < 1e-4) {
            double p2 = phi * phi;
            s = 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
            c2 = 0.5 - p2 / 24.0 + p2 * p2 / 720.0;
            c3 = 1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0;
        } else {
            double p2 = phi * phi;
            s = std::sin(phi) / phi;
            c2 = (1.0 - std::cos(phi)) / p2;
            c3 = (1.0 - s) / p2;
        }
        d.u = s * v + c2 * w.cross(v) + c3 * w.dot(v) * w;
    }
    return d;
}

} // namespace skewspec
