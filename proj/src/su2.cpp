#include "skewspec/su2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace skewspec {

namespace {
const Complex I{0.0, 1.0};
}

SpinRep spin_generators(int two_j) {
    if (two_j < 0) throw ConfigError("spin label needs 2j >= 0");
    SpinRep rep;
    rep.two_j = two_j;
    rep.dim = two_j + 1;
    const int d = rep.dim;
    const double j = 0.5 * two_j;
    Eigen::MatrixXcd Jp = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd J3 = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        double m = -j + i;
        J3(i, i) = m;
        if (i + 1 < d) Jp(i + 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Eigen::MatrixXcd Jm = Jp.adjoint();
    rep.J[0] = 0.5 * (Jp + Jm);
    rep.J[1] = (Jp - Jm) / (2.0 * I);
    rep.J[2] = J3;
    return rep;
}

Eigen::MatrixXcd rep_exp(const SpinRep& rep, const Eigen::Vector3d& w) {
    Eigen::MatrixXcd H = w.x() * rep.J[0] + w.y() * rep.J[1] + w.z() * rep.J[2];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd phase = (I * es.eigenvalues().array().cast<Complex>()).exp();
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd group_rep(const SpinRep& rep, const CocycleSU2& c, double x) {
    if (c.product_form) {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(rep.dim, rep.dim);
        for (const CocycleSU2::Factor& f : c.factors) {
            Eigen::Vector3d axis = Eigen::Vector3d::Unit(f.axis - 1);
            g = g * rep_exp(rep, f.angle(x) * axis);
        }
        return g;
    }
    return rep_exp(rep, c.omega_value(x));
}

Eigen::Matrix3d adjoint_rotation_of(const Eigen::Matrix2cd& g) {
    static const SpinRep half = spin_generators(1);
    Eigen::Matrix3d R;
    for (int l = 0; l < 3; ++l) {
        Eigen::Matrix2cd conj = g * (2.0 * half.J[l]) * g.adjoint();
        for (int m = 0; m < 3; ++m)
            R(m, l) = 0.5 * (conj * (2.0 * half.J[m])).trace().real();
    }
    return R;
}

Eigen::Matrix3d adjoint_rotation(const CocycleSU2& c, double x) {
    return adjoint_rotation_of(su2_data(c, x).tau);
}

Eigen::VectorXcd coherent_state(const SpinRep& rep, const Eigen::Vector3d& n) {
    if (std::abs(n.norm() - 1.0) > 1e-10)
        throw ConfigError("coherent_state needs a unit vector");
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(rep.dim);
    e0(0) = 1.0;
    Eigen::Vector3d n0(0.0, 0.0, -1.0);
    double c = std::clamp(n0.dot(n), -1.0, 1.0);
    if (c > 1.0 - 1e-15) return e0;
    double beta = std::acos(c);
    Eigen::Vector3d cross = n0.cross(n);
    Eigen::Vector3d axis =
        (cross.norm() < 1e-14) ? Eigen::Vector3d::UnitX() : Eigen::Vector3d(cross.normalized());
    Eigen::VectorXcd psi = rep_exp(rep, -beta * axis) * e0;
    return psi / psi.norm();
}

SphereQuadrature SphereQuadrature::make(int order) {
    if (order < 0) throw ConfigError("quadrature order must be >= 0");
    const int q = (order + 2) / 2;        // Gauss-Legendre exact through degree 2q-1 >= order
    const int n_phi = order + 1;
    // Legendre nodes by Newton iteration on P_q (three-term recurrence).
    std::vector<double> gx(q), gw(q);
    for (int i = 0; i < q; ++i) {
        double x = std::cos(pi * (i + 0.75) / (q + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= q; ++l) {
                double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            double dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int l = 2; l <= q; ++l) {
            double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
            p0 = p1;
            p1 = p2;
        }
        double dp = q * (x * p1 - p0) / (x * x - 1.0);
        gx[i] = x;
        gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    SphereQuadrature out;
    out.order = order;
    out.nodes.reserve(q * n_phi);
    out.weights.reserve(q * n_phi);
    for (int i = 0; i < q; ++i) {
        double ct = gx[i];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        double w = gw[i] * (two_pi / n_phi);
        for (int f = 0; f < n_phi; ++f) {
            double phi = two_pi * f / n_phi;
            out.nodes.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
            out.weights.push_back(w);
        }
    }
    return out;
}

double sphere_average(const SphereFn& a, const SphereQuadrature& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * a(q.nodes[i]);
    return s;
}

Eigen::MatrixXcd anti_wick(const SpinRep& rep, const SphereFn& a, const SphereQuadrature& q) {
    const double scale = rep.dim / (4.0 * pi);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
    Eigen::MatrixXcd resolution = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        Eigen::VectorXcd psi = coherent_state(rep, q.nodes[i]);
        Eigen::MatrixXcd proj = scale * q.weights[i] * (psi * psi.adjoint());
        resolution += proj;
        op += a(q.nodes[i]) * proj;
    }
    double residual =
        (resolution - Eigen::MatrixXcd::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw NumericError("sphere quadrature under-resolved for this spin (completeness residual " +
                           std::to_string(residual) + ")");
    return op;
}

Complex wick_symbol(const SpinRep& rep, const Eigen::MatrixXcd& A, const Eigen::Vector3d& n) {
    Eigen::VectorXcd psi = coherent_state(rep, n);
    return psi.dot(A * psi);  // Eigen's dot conjugates the left argument
}

std::pair<Complex, Complex> trace_check(const SpinRep& rep, const SphereFn& a,
                                        const SphereQuadrature& q) {
    Complex t = anti_wick(rep, a, q).trace();
    Complex ref = rep.dim / (4.0 * pi) * sphere_average(a, q);
    return {t, ref};
}

} // namespace skewspec
