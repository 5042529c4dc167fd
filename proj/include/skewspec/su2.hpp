#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewspec/dynamics.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

// Spin-j irreducible representation in the ascending J3 basis: J3 = diag(-j..j),
// basis vector 0 is the lowest-weight state (J- kills it).
struct SpinRep {
    int two_j = 0;
    int dim = 1;  // 2j + 1
    std::array<Eigen::MatrixXcd, 3> J;

    double j() const { return 0.5 * two_j; }
};

SpinRep spin_generators(int two_j);

// exp(i w.J) in the given representation (eigendecomposition of Hermitian w.J).
Eigen::MatrixXcd rep_exp(const SpinRep& rep, const Eigen::Vector3d& w);

// tau_j(x): the cocycle value represented on D_j.
Eigen::MatrixXcd group_rep(const SpinRep& rep, const CocycleSU2& c, double x);

// R_g with g (n.J) g^{-1} = (R_g n).J, extracted in the fundamental rep.
Eigen::Matrix3d adjoint_rotation_of(const Eigen::Matrix2cd& g);
Eigen::Matrix3d adjoint_rotation(const CocycleSU2& c, double x);

// Spin coherent state at n: rotate the lowest-weight (south pole) state by the
// rotation about n0 x n carrying n0 = (0,0,-1) to n; axis e1 at the antipode.
Eigen::VectorXcd coherent_state(const SpinRep& rep, const Eigen::Vector3d& n);

// Product Gauss-Legendre (cos theta) x uniform (phi) rule; integrates
// polynomials on S^2 of degree <= order exactly, weights sum to 4 pi.
struct SphereQuadrature {
    int order = 0;
    std::vector<Eigen::Vector3d> nodes;
    std::vector<double> weights;

    static SphereQuadrature make(int order);
};

using SphereFn = std::function<double(const Eigen::Vector3d&)>;

double sphere_average(const SphereFn& a, const SphereQuadrature& q);  // integral of a dn

// Op^{AW}(a) = (d/4pi) sum_i w_i a(n_i)|n_i><n_i|; throws NumericError when the
// rule fails the coherent-state completeness check (under-resolved order).
Eigen::MatrixXcd anti_wick(const SpinRep& rep, const SphereFn& a, const SphereQuadrature& q);

Complex wick_symbol(const SpinRep& rep, const Eigen::MatrixXcd& A, const Eigen::Vector3d& n);

// (tr Op^{AW}(a), (d/4pi) integral of a): equal up to quadrature error.
std::pair<Complex, Complex> trace_check(const SpinRep& rep, const SphereFn& a,
                                        const SphereQuadrature& q);

} // namespace skewspec
