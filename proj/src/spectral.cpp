#include "skewspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace skewspec {

namespace {

void sort_by_modulus(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
}

} // namespace

std::vector<Complex> eigenvalues(const Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols()) throw ConfigError("eigenvalues: matrix must be square");
    if (!M.allFinite()) throw NumericError("eigenvalues: non-finite entries");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError("eigenvalue iteration failed at size " + std::to_string(M.rows()));
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + M.rows());
    sort_by_modulus(out);
    return out;
}

std::pair<Eigen::VectorXcd, Eigen::MatrixXcd> eigenpairs(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, true);
    if (es.info() != Eigen::Success)
        throw NumericError("eigenvalue iteration failed at size " + std::to_string(M.rows()));
    return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<double> singular_values(const Eigen::MatrixXcd& M) {
    // One-sided Jacobi: slower than divide-and-conquer but reliable for
    // complex scalars, and every caller stays below a few hundred rows.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    std::vector<double> out(svd.singularValues().data(),
                            svd.singularValues().data() + svd.singularValues().size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::vector<std::pair<double, Complex>> match_spectra(const std::vector<Complex>& a,
                                                      const std::vector<Complex>& b) {
    std::vector<Complex> order = a;
    sort_by_modulus(order);
    std::vector<bool> used(b.size(), false);
    std::vector<std::pair<double, Complex>> out;
    out.reserve(order.size());
    for (const Complex& z : order) {
        int best = -1;
        double best_d = 0.0, best_phase = 0.0;
        for (int i = 0; i < int(b.size()); ++i) {
            if (used[i]) continue;
            double d = std::abs(z - b[i]);
            double ph = std::abs(std::arg(b[i]) - std::arg(z));
            if (best < 0 || d < best_d || (d == best_d && ph < best_phase)) {
                best = i;
                best_d = d;
                best_phase = ph;
            }
        }
        if (best < 0) {
            out.emplace_back(std::numeric_limits<double>::infinity(), z);
        } else {
            used[best] = true;
            out.emplace_back(best_d, b[best]);
        }
    }
    return out;
}

int ResonanceSet::n_stable() const {
    int n = 0;
    for (const Resonance& r : entries) n += r.stable ? 1 : 0;
    return n;
}

double ResonanceSet::max_stable_modulus() const {
    double m = 0.0;
    for (const Resonance& r : entries)
        if (r.stable) m = std::max(m, std::abs(r.lambda));
    return m;
}

ResonanceSet resonances_from_values(const std::vector<Complex>& coarse,
                                    const std::vector<Complex>& fine, int alpha_num,
                                    int alpha_den, const ExpandingMap& map, double tol) {
    ResonanceSet rs;
    rs.alpha_num = alpha_num;
    rs.alpha_den = alpha_den;
    rs.tol = tol;
    rs.r_floor = std::max(2.0 * tol, 0.05);
    rs.r_m = sobolev_radius(-3, map.k, map.e_min);
    auto matches = match_spectra(coarse, fine);
    rs.entries.reserve(matches.size());
    for (const auto& [dist, lambda] : matches) {
        Resonance r;
        r.lambda = lambda;
        r.stab_err = dist;
        r.stable = dist < tol && std::abs(lambda) > rs.r_floor;
        rs.entries.push_back(r);
    }
    std::sort(rs.entries.begin(), rs.entries.end(), [](const Resonance& a, const Resonance& b) {
        double ma = std::abs(a.lambda), mb = std::abs(b.lambda);
        if (ma != mb) return ma > mb;
        return std::arg(a.lambda) < std::arg(b.lambda);
    });
    return rs;
}

ResonanceSet resonances_from_matrices(const TruncatedTransferMatrix& at_K,
                                      const TruncatedTransferMatrix& at_2K,
                                      const ExpandingMap& map, double tol) {
    if (at_K.group != at_2K.group || at_K.alpha_num != at_2K.alpha_num ||
        at_K.alpha_den != at_2K.alpha_den)
        throw ConfigError("resonance stability check needs matching blocks");
    return resonances_from_values(eigenvalues(at_K.entries), eigenvalues(at_2K.entries),
                                  at_K.alpha_num, at_K.alpha_den, map, tol);
}

// Assembled matrices are freed as soon as their spectrum is taken, so the
// peak footprint is a single cutoff-2K matrix plus solver workspace.
ResonanceSet extract_resonances(const ExpandingMap& map, const CocycleU1& c, int nu,
                                int K, double tol, int threads) {
    std::vector<Complex> coarse = eigenvalues(assemble_u1(map, c, nu, K, threads).entries);
    std::vector<Complex> fine = eigenvalues(assemble_u1(map, c, nu, 2 * K, threads).entries);
    return resonances_from_values(coarse, fine, nu, 1, map, tol);
}

ResonanceSet extract_resonances(const ExpandingMap& map, const CocycleSU2& c, int two_j,
                                int K, double tol, int threads) {
    std::vector<Complex> coarse = eigenvalues(assemble_su2(map, c, two_j, K, threads).entries);
    std::vector<Complex> fine = eigenvalues(assemble_su2(map, c, two_j, 2 * K, threads).entries);
    return resonances_from_values(coarse, fine, two_j, 2, map, tol);
}

int count_above(const ResonanceSet& rs, double eps) {
    if (!(eps > rs.r_floor))
        throw ConfigError("count threshold " + std::to_string(eps) +
                          " not above the trust floor " + std::to_string(rs.r_floor));
    int n = 0;
    for (const Resonance& r : rs.entries)
        if (r.stable && std::abs(r.lambda) > eps) ++n;
    return n;
}

double weyl_violation(std::vector<Complex> lambdas, std::vector<double> sigmas) {
    if (lambdas.size() != sigmas.size())
        throw ConfigError("weyl check needs equally long spectra");
    sort_by_modulus(lambdas);
    std::sort(sigmas.begin(), sigmas.end(), std::greater<double>());
    // Stop at the numerical rank: past it both partial products vanish in
    // exact arithmetic (#nonzero eigenvalues <= rank), so the inequality says
    // 0 <= 0 there, while the computed eigenvalues of a defective trailing
    // block are pure roundoff noise of size eps^(1/m).
    const double rank_floor = sigmas.empty()
                                  ? 0.0
                                  : sigmas.front() * double(sigmas.size()) *
                                        std::numeric_limits<double>::epsilon();
    double viol = -std::numeric_limits<double>::infinity();
    double sl = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (sigmas[i] <= rank_floor) break;
        sl += std::log(std::max(std::abs(lambdas[i]), 1e-300));
        ss += std::log(sigmas[i]);
        viol = std::max(viol, sl - ss);
    }
    return viol;
}

double sobolev_radius(int m, int k, double e_min) {
    return std::pow(e_min, m) * std::sqrt(k / e_min);
}

double SrbDensity::eval(double x) const {
    Complex s = 0.0;
    for (int m = -K; m <= K; ++m)
        s += coef(m + K) * std::polar(1.0, two_pi * m * x);
    return s.real();
}

SrbDensity srb_density(const ExpandingMap& map, int K, int threads) {
    if (K < 16) throw ConfigError("srb_density needs K >= 16");
    CocycleU1 trivial{FourierSeries::zero()};
    TruncatedTransferMatrix A = assemble_adjoint_u1(map, trivial, 0, K, threads);
    auto [vals, vecs] = eigenpairs(A.entries);
    int lead = 0;
    for (int i = 1; i < vals.size(); ++i)
        if (std::abs(vals(i)) > std::abs(vals(lead))) lead = i;
    double res = std::abs(vals(lead) - 1.0);
    if (res > 1e-8)
        throw NumericError("invariant-density eigenvalue off unity by " + std::to_string(res));
    int near = 0;
    for (int i = 0; i < vals.size(); ++i)
        if (std::abs(vals(i) - vals(lead)) < 1e-6) ++near;
    if (near != 1)
        throw NumericError("invariant-density eigenvalue not simple (multiplicity " +
                           std::to_string(near) + ")");
    SrbDensity rho;
    rho.K = K;
    rho.eigen_residual = res;
    Eigen::VectorXcd v = vecs.col(lead);
    Complex c0 = v(K);
    if (std::abs(c0) < 1e-12)
        throw NumericError("invariant-density eigenvector has vanishing mean");
    rho.coef = v / c0;
    return rho;
}

} // namespace skewspec
