// Acceptance gate: every release-blocking property on one pass/fail line.
// Exit code = number of failed criteria.  Set SKEWSPEC_ACCEPT_EXTENDED=1 for
// the long counting sweep (spectral parameter up to 600).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "skewspec/config.hpp"
#include "skewspec/experiment.hpp"
#include "skewspec/fourier.hpp"
#include "skewspec/parallel.hpp"
#include "skewspec/phasespace.hpp"
#include "skewspec/spectral.hpp"
#include "skewspec/su2.hpp"
#include "skewspec/transfer.hpp"
#include "skewspec/types.hpp"

using namespace skewspec;

namespace {

int g_threads = 1;

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double op_norm(const Eigen::MatrixXcd& A) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

Complex i_pow(int p) {
    switch (((p % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

Eigen::Vector3d random_unit(std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::Vector3d v(g(rng), g(rng), g(rng));
    while (v.norm() < 1e-3) v = Eigen::Vector3d(g(rng), g(rng), g(rng));
    return v.normalized();
}

// Accumulates the first failure reason; later checks still run for timing
// realism but cannot flip a failure back.
struct Check {
    bool ok = true;
    std::string why;

    void that(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("CRITERION %2d [%s] %s (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL", name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++g_failures;
}

const ExpandingMap kDoubling = ExpandingMap::linear(2);
const CocycleU1 kCos{FourierSeries::cosine()};

CocycleSU2 tilted_cocycle() {
    return CocycleSU2::single(FourierSeries::cosine(0.2), FourierSeries::zero(),
                              FourierSeries::cosine());
}

std::string scratch(const std::string& name) {
    std::filesystem::path p = std::filesystem::path("acceptance_out") / name;
    std::filesystem::create_directories(p);
    return p.string();
}

ExperimentConfig cosine_config() {
    ExperimentConfig cfg;
    cfg.u1_omega = FourierSeries::cosine();
    return cfg;
}

// ---- the twelve criteria ----------------------------------------------

Outcome bessel_oracle() {
    Check c;
    double worst = 0.0;
    const int K = 64;
    for (int nu : {1, 10, 40}) {
        TruncatedTransferMatrix M = assemble_u1(kDoubling, kCos, nu, K, g_threads);
        for (int m = -K; m <= K; ++m) {
            for (int k = -K; k <= K; ++k) {
                Complex want = i_pow(m - 2 * k) * oracles::bessel_j(m - 2 * k, double(nu));
                worst = std::max(worst, std::abs(M.entries(M.index(m), M.index(k)) - want));
            }
        }
    }
    c.that(worst <= 1e-10, fmt("entrywise error %.3g > 1e-10", worst));
    return {c.ok, c.ok ? fmt("max entrywise deviation %.3g over nu=1,10,40 at K=64", worst)
                       : c.why};
}

Outcome trivial_block() {
    Check c;
    ResonanceSet u1 = extract_resonances(kDoubling, kCos, 0, 32, 1e-6, g_threads);
    c.that(u1.n_stable() == 1, fmt("flat U(1) block has %d stable resonances", u1.n_stable()));
    double dev_u1 = std::abs(u1.entries.empty() ? Complex(0, 0) - Complex(1, 0)
                                                : u1.entries.front().lambda - Complex(1, 0));
    c.that(dev_u1 <= 1e-10, fmt("flat U(1) leading eigenvalue off by %.3g", dev_u1));

    ResonanceSet j0 = extract_resonances(kDoubling, tilted_cocycle(), 0, 32, 1e-6, g_threads);
    c.that(j0.n_stable() == 1, fmt("spin-0 block has %d stable resonances", j0.n_stable()));
    double dev_j0 = std::abs(j0.entries.empty() ? Complex(0, 0) - Complex(1, 0)
                                                : j0.entries.front().lambda - Complex(1, 0));
    c.that(dev_j0 <= 1e-10, fmt("spin-0 leading eigenvalue off by %.3g", dev_j0));

    SrbDensity rho = srb_density(kDoubling, 32, g_threads);
    c.that(rho.eigen_residual <= 1e-10,
           fmt("density eigenvalue off 1 by %.3g", rho.eigen_residual));
    double flat = 0.0;
    for (int m = -32; m <= 32; ++m) {
        if (m != 0) flat = std::max(flat, std::abs(rho.coef(m + 32)));
    }
    c.that(flat <= 1e-10, fmt("invariant density non-constant: max |c_m| = %.3g", flat));
    return {c.ok,
            c.ok ? fmt("lambda deviations %.3g / %.3g, density flat to %.3g", dev_u1, dev_j0, flat)
                 : c.why};
}

Outcome cutoff_stability() {
    Check c;
    std::vector<std::vector<Complex>> spectra;
    for (int K : {64, 128, 256}) {
        spectra.push_back(eigenvalues(assemble_u1(kDoubling, kCos, 1, K, g_threads).entries));
    }
    double worst = 0.0;
    int tracked = 0;
    for (std::size_t level = 0; level + 1 < spectra.size(); ++level) {
        std::vector<Complex> kept;
        for (const Complex& z : spectra[level]) {
            if (std::abs(z) > 0.2) kept.push_back(z);
        }
        tracked = std::max(tracked, int(kept.size()));
        for (const auto& dm : match_spectra(kept, spectra[level + 1])) {
            worst = std::max(worst, dm.first);
        }
    }
    c.that(tracked >= 1, "no eigenvalues above modulus 0.2");
    c.that(worst < 1e-6, fmt("eigenvalue moved %.3g under K doubling", worst));
    return {c.ok, c.ok ? fmt("%d eigenvalues above 0.2 move at most %.3g over K=64,128,256",
                             tracked, worst)
                       : c.why};
}

Outcome gap_trend() {
    Check c;
    std::vector<double> moduli;
    std::string vals;
    for (int nu : {100, 200, 300}) {
        const int K = default_cutoff_u1(kDoubling, kCos, nu);
        ResonanceSet rs = extract_resonances(kDoubling, kCos, nu, K, 1e-6, g_threads);
        moduli.push_back(rs.max_stable_modulus());
        vals += fmt(" r(%d)=%.4f", nu, moduli.back());
        c.that(moduli.back() > 0.0, fmt("no stable resonance in block nu=%d", nu));
        c.that(moduli.back() <= 0.85, fmt("block nu=%d radius %.4f > 0.85", nu, moduli.back()));
    }
    for (std::size_t i = 1; i < moduli.size(); ++i) {
        c.that(moduli[i] <= moduli[i - 1] + 0.03,
               fmt("radius increased by %.3f between blocks", moduli[i] - moduli[i - 1]));
    }
    return {c.ok, c.ok ? fmt("reference 1/sqrt(E_min) = %.6f;%s", 1.0 / std::sqrt(2.0),
                             vals.c_str())
                       : c.why};
}

Outcome weyl_scaling() {
    Check c;
    const bool extended = std::getenv("SKEWSPEC_ACCEPT_EXTENDED") != nullptr;
    ExperimentConfig cfg = cosine_config();
    cfg.alphas = extended ? std::vector<int>{50, 100, 200, 300, 600}
                          : std::vector<int>{50, 100, 200};
    std::vector<WeylRow> rows = run_weyl(cfg, scratch("weyl"), g_threads);
    std::string vals;
    for (const WeylRow& r : rows) {
        c.that(!r.flagged, fmt("row nu=%d flagged: %s", r.alpha_num, r.note.c_str()));
        if (r.flagged) continue;
        vals += fmt(" nu=%d:(%.3f,%.3f)", r.alpha_num, r.ratio_count, r.ratio_volume);
        if (r.alpha_num >= 200) {
            const double diff = std::abs(r.ratio_count - r.ratio_volume);
            c.that(diff <= 0.3, fmt("nu=%d exponent mismatch %.3f > 0.3", r.alpha_num, diff));
            for (double v : {r.ratio_count, r.ratio_volume}) {
                c.that(v >= 0.8 && v <= 1.3,
                       fmt("nu=%d exponent %.3f outside [0.8, 1.3]", r.alpha_num, v));
            }
        }
    }
    return {c.ok, c.ok ? fmt("(count, volume) exponents:%s", vals.c_str()) : c.why};
}

Outcome weyl_inequality() {
    Check c;
    double worst = 0.0;
    auto probe = [&](const Eigen::MatrixXcd& A) {
        worst = std::max(worst, weyl_violation(eigenvalues(A), singular_values(A)));
    };
    for (int nu : {0, 1, 5}) probe(assemble_u1(kDoubling, kCos, nu, 24, g_threads).entries);
    for (int two_j : {1, 4}) {
        probe(assemble_su2(kDoubling, tilted_cocycle(), two_j, 16, g_threads).entries);
    }
    probe(assemble_adjoint_u1(kDoubling, kCos, 2, 24, g_threads).entries);

    std::mt19937 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int d = 5 + t % 36;
        Eigen::MatrixXcd A(d, d);
        for (int r = 0; r < d; ++r) {
            for (int s = 0; s < d; ++s) A(r, s) = Complex(g(rng), g(rng)) / std::sqrt(double(d));
        }
        probe(A);
    }
    c.that(worst <= 1e-10, fmt("product inequality violated by %.3g", worst));
    return {c.ok, c.ok ? fmt("max violation %.3g over 6 assembled + 100 random matrices", worst)
                       : c.why};
}

Outcome coherent_states() {
    Check c;
    std::mt19937 rng(7);

    double overlap_err = 0.0;
    for (int two_j : {1, 2, 7, 16, 29, 40}) {
        SpinRep rep = spin_generators(two_j);
        for (int t = 0; t < 10; ++t) {
            Eigen::Vector3d n = random_unit(rng), m = random_unit(rng);
            Complex ov = coherent_state(rep, n).dot(coherent_state(rep, m));
            double want = std::pow(0.5 * (1.0 + n.dot(m)), two_j / 2.0);
            overlap_err = std::max(overlap_err, std::abs(std::abs(ov) - want));
        }
    }
    c.that(overlap_err <= 1e-10, fmt("overlap law off by %.3g", overlap_err));

    double compl_err = 0.0, cov_err = 0.0, trace_err = 0.0;
    for (int two_j : {8, 16, 32}) {
        SpinRep rep = spin_generators(two_j);
        SphereQuadrature q = SphereQuadrature::make(two_j + 4);
        Eigen::MatrixXcd id = anti_wick(rep, [](const Eigen::Vector3d&) { return 1.0; }, q);
        compl_err = std::max(
            compl_err, op_norm(id - Eigen::MatrixXcd::Identity(rep.dim, rep.dim)));

        for (int t = 0; t < 5; ++t) {
            Eigen::Vector3d axis = random_unit(rng), n = random_unit(rng);
            double angle = 0.3 + 2.0 * t / 5.0;
            Eigen::MatrixXcd U = rep_exp(rep, angle * axis);
            Eigen::Matrix3d R = adjoint_rotation_of(fundamental_rotation(angle, axis));
            Eigen::VectorXcd a = U * coherent_state(rep, n);
            Eigen::VectorXcd b = coherent_state(rep, R * n);
            cov_err = std::max(cov_err,
                               (a * a.adjoint() - b * b.adjoint()).cwiseAbs().maxCoeff());
        }

        auto [tr, ref] = trace_check(
            rep, [](const Eigen::Vector3d& n) { return 0.3 + n.x() - 0.2 * n.y() * n.z(); }, q);
        trace_err = std::max(trace_err, std::abs(tr - ref));
    }
    c.that(compl_err <= 1e-8, fmt("completeness residual %.3g", compl_err));
    c.that(cov_err <= 1e-8, fmt("covariance residual %.3g", cov_err));
    c.that(trace_err <= 1e-8, fmt("trace identity off by %.3g", trace_err));

    // quantized frame rotation: commutator residual must halve from j=8 to j=16
    auto cgr_residual = [&](int two_j) {
        SpinRep rep = spin_generators(two_j);
        SphereQuadrature q = SphereQuadrature::make(two_j + 4);
        auto comp = [&](int l) {
            return anti_wick(rep, [l](const Eigen::Vector3d& n) { return n[l]; }, q);
        };
        Eigen::MatrixXcd o1 = comp(0), o2 = comp(1), o3 = comp(2);
        const double j = 0.5 * two_j;
        return op_norm(Complex(0, -1) * j * (o3 * o1 - o1 * o3) - o2);
    };
    const double r8 = cgr_residual(16), r16 = cgr_residual(32);
    const double ratio = r16 / r8;
    c.that(ratio >= 0.3 && ratio <= 0.7, fmt("residual ratio %.3f outside [0.3, 0.7]", ratio));
    return {c.ok, c.ok ? fmt("overlap %.2g, completeness %.2g, covariance %.2g, trace %.2g, "
                             "commutator ratio %.3f",
                             overlap_err, compl_err, cov_err, trace_err, ratio)
                       : c.why};
}

Outcome h_field_cross_check() {
    Check c;
    const CocycleSU2 cocycles[2] = {
        tilted_cocycle(),
        CocycleSU2::single(FourierSeries::cosine(0.5, 2), FourierSeries::cosine(0.3),
                           FourierSeries::constant_value(0.7)),
    };
    double route_err = 0.0;
    for (const CocycleSU2& co : cocycles) {
        for (int i = 0; i < 200; ++i) {
            const double x = double(i) / 200.0;
            route_err = std::max(
                route_err, (su2_data(co, x).u - oracles::u_integral_oracle(co, x)).norm());
        }
    }
    c.that(route_err <= 1e-8, fmt("closed form vs integral route off by %.3g", route_err));

    // Representation-level route: differentiate tau_j itself with the same
    // integral formula, extract the symbol through coherent states, and
    // compare quantizations of the classical momentum kick.
    const CocycleSU2 co = tilted_cocycle();
    const double x = 0.37;
    const Eigen::Vector3d u = su2_data(co, x).u;
    std::mt19937 rng(11);
    static const oracles::GaussLegendre gl(64);

    double wick_err = 0.0;
    std::vector<double> aw_err;
    for (int two_j : {10, 20, 40, 80}) {
        SpinRep rep = spin_generators(two_j);
        const double j = 0.5 * two_j;
        const Eigen::Vector3d w = co.omega_value(x);
        const Eigen::Vector3d wp = co.omega_deriv(x);
        Eigen::MatrixXcd wpJ = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
        for (int l = 0; l < 3; ++l) wpJ += wp[l] * rep.J[l];
        Eigen::MatrixXcd dtau = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
        for (std::size_t s = 0; s < gl.nodes.size(); ++s) {
            dtau += gl.weights[s] * rep_exp(rep, gl.nodes[s] * w) * (Complex(0, 1) * wpJ) *
                    rep_exp(rep, (1.0 - gl.nodes[s]) * w);
        }
        Eigen::MatrixXcd H = Complex(0, -1) * group_rep(rep, co, x).adjoint() * dtau;

        for (int t = 0; t < 10; ++t) {
            Eigen::Vector3d n = random_unit(rng);
            wick_err = std::max(
                wick_err, std::abs(wick_symbol(rep, H, n) / j - Complex(u.dot(n), 0.0)));
        }

        SphereQuadrature q = SphereQuadrature::make(two_j + 4);
        Eigen::MatrixXcd aw =
            anti_wick(rep, [&u](const Eigen::Vector3d& n) { return u.dot(n); }, q);
        aw_err.push_back(op_norm(aw - H / j));
    }
    c.that(wick_err <= 1e-8, fmt("symbol of the rep derivative off by %.3g", wick_err));
    std::string ratios;
    for (std::size_t i = 0; i + 1 < aw_err.size(); ++i) {
        const double ratio = aw_err[i + 1] / aw_err[i];
        ratios += fmt(" %.3f", ratio);
        c.that(ratio >= 0.3 && ratio <= 0.7,
               fmt("quantization error ratio %.3f outside [0.3, 0.7]", ratio));
    }
    return {c.ok, c.ok ? fmt("routes agree to %.2g, symbol to %.2g, error ratios j->2j:%s",
                             route_err, wick_err, ratios.c_str())
                       : c.why};
}

Outcome graph_jump() {
    Check c;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_int_distribution<int> ulen(3, 14), uletter(0, 1);
    const CocycleSU2 co = tilted_cocycle();

    const double R_u1 = escape_radius(kDoubling, kCos, default_kappa(kDoubling));
    const double S_u1 = s_max_u1(kDoubling, kCos);
    const double R_su2 = escape_radius(kDoubling, co, default_kappa(kDoubling));
    const double S_su2 = s_max_su2(kDoubling, co);

    double worst_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 200; ++t) {
        const int n = ulen(rng);
        Word w;
        for (int i = 0; i < n; ++i) w.letters.push_back(uletter(rng));
        Word shifted{{w.letters.begin() + 1, w.letters.end()}};
        const double x = ux(rng);
        double resid, bound;
        if (t < 100) {
            PhasePoint p;
            p.x = x;
            p.xi = backward_graph(kDoubling, kCos, w, x);
            PhasePoint q = canonical_map_u1(kDoubling, kCos, w.letters[0], p);
            resid = std::abs(q.xi - backward_graph(kDoubling, kCos, shifted, q.x));
            bound = (R_u1 + S_u1) * std::pow(kDoubling.e_min, -n);
        } else {
            PhasePoint p;
            p.x = x;
            p.has_sphere = true;
            p.n = random_unit(rng);
            p.xi = backward_graph(kDoubling, co, w, x, p.n);
            PhasePoint q = canonical_map_su2(kDoubling, co, w.letters[0], p);
            resid = std::abs(q.xi - backward_graph(kDoubling, co, shifted, q.x, q.n));
            bound = (R_su2 + S_su2) * std::pow(kDoubling.e_min, -n);
        }
        c.that(resid <= bound, fmt("jump residual %.3g above bound %.3g", resid, bound));
        worst_margin = std::min(worst_margin, bound - resid);
    }

    TrappedCloud cloud = sample_trapped_set(kDoubling, kCos, 0.05, 64);
    c.that(std::abs(cloud.s_max - two_pi) <= 1e-6,
           fmt("graph bound %.6f differs from 2 pi", cloud.s_max));
    double max_xi = 0.0;
    for (const auto& p : cloud.pts) max_xi = std::max(max_xi, std::abs(p.xi));
    c.that(max_xi <= cloud.s_max + 1e-9,
           fmt("cloud momentum %.6f above the bound %.6f", max_xi, cloud.s_max));
    return {c.ok, c.ok ? fmt("100 jumps per group within bounds (min margin %.3g); |xi| <= "
                             "%.4f = 2 pi over %zu points",
                             worst_margin, cloud.s_max, cloud.pts.size())
                       : c.why};
}

Outcome dimension_calibration() {
    Check c;
    std::vector<double> deltas{0.028, 0.014, 0.007, 0.0035, 0.0016, 0.0008};
    BoxCountResult sq = box_count(oracles::synthetic_square(2500), deltas);
    c.that(std::abs(sq.dim - 2.0) <= 0.05, fmt("square dimension %.4f not 2 +- 0.05", sq.dim));

    BoxCountResult ln = box_count(oracles::synthetic_line(1250), deltas);
    c.that(std::abs(ln.dim - 1.0) <= 0.05, fmt("line dimension %.4f not 1 +- 0.05", ln.dim));

    std::vector<double> cantor_deltas;
    for (double e : {-1.5, -2.2, -2.9, -3.6, -4.3, -5.0}) {
        cantor_deltas.push_back(std::pow(3.0, e));
    }
    BoxCountResult ca = box_count(oracles::synthetic_cantor_circle(10, 486), cantor_deltas);
    const double want = 1.0 + std::log(2.0) / std::log(3.0);
    c.that(std::abs(ca.dim - want) <= 0.05,
           fmt("circle x third-set dimension %.4f not %.4f +- 0.05", ca.dim, want));
    return {c.ok, c.ok ? fmt("square %.4f, line %.4f, circle x third-set %.4f (target %.4f)",
                             sq.dim, ln.dim, ca.dim, want)
                       : c.why};
}

Outcome correlation_mixing() {
    Check c;
    ExperimentConfig cfg = cosine_config();
    cfg.corr_alpha = 1;
    cfg.corr_n_max = 40;
    cfg.psi_re = {0.0, 0.0, 1.0};
    cfg.psi_im = {0.0, 0.0, 0.0};
    cfg.phi_re = cfg.psi_re;
    cfg.phi_im = cfg.psi_im;
    CorrelationOutcome mixing = run_correlation(cfg, scratch("corr_mix"), g_threads);
    c.that(mixing.fit_ok, "decay fit failed on the twisted block");
    c.that(!mixing.degenerate, "twisted block reported as degenerate");
    const double diff = std::abs(mixing.fitted_rate - mixing.leading_modulus);
    c.that(diff <= 0.05, fmt("fitted rate %.4f vs leading modulus %.4f", mixing.fitted_rate,
                             mixing.leading_modulus));

    ExperimentConfig flat;  // zero cocycle: the twist is a coboundary of nothing
    flat.corr_alpha = 1;
    flat.corr_n_max = 40;
    flat.psi_re = {0.0, 1.0, 1.0};
    flat.psi_im = {0.0, 0.0, 0.0};
    flat.phi_re = flat.psi_re;
    flat.phi_im = flat.psi_im;
    CorrelationOutcome stuck = run_correlation(flat, scratch("corr_flat"), g_threads);
    c.that(stuck.degenerate, "flat block not flagged as degenerate");
    c.that(stuck.fit_ok && stuck.fitted_rate >= 0.99,
           fmt("flat block decay rate %.4f below 0.99", stuck.fitted_rate));
    return {c.ok, c.ok ? fmt("rate %.4f vs modulus %.4f (diff %.4f); flat rate %.4f flagged "
                             "degenerate",
                             mixing.fitted_rate, mixing.leading_modulus, diff,
                             stuck.fitted_rate)
                       : c.why};
}

Outcome captive_counts() {
    Check c;
    ExperimentConfig cfg = cosine_config();
    CaptiveOutcome pruned = run_captive(cfg, scratch("captive_cos"), g_threads);
    std::uint64_t full = 1;
    for (std::size_t i = 0; i < pruned.counts.size(); ++i) {
        full *= 2;
        c.that(pruned.counts[i] <= full,
               fmt("N(%zu) = %llu exceeds 2^%zu", i + 1,
                   static_cast<unsigned long long>(pruned.counts[i]), i + 1));
    }
    for (int n = 6; n <= 18; ++n) {
        c.that(pruned.log_ratios[std::size_t(n - 1)] < pruned.log_ratios[std::size_t(n - 2)],
               fmt("log N(n)/n not strictly decreasing at n=%d", n));
    }

    ExperimentConfig flat;  // zero kick: nothing ever escapes
    flat.captive_x_grid = 2;
    flat.captive_xi_grid = 1;
    CaptiveOutcome free_case = run_captive(flat, scratch("captive_flat"), g_threads);
    full = 1;
    for (std::size_t i = 0; i < free_case.counts.size(); ++i) {
        full *= 2;
        c.that(free_case.counts[i] == full,
               fmt("zero-kick N(%zu) = %llu, want 2^%zu", i + 1,
                   static_cast<unsigned long long>(free_case.counts[i]), i + 1));
    }
    return {c.ok, c.ok ? fmt("N(18) = %llu at R = %.4f, log N/n falls %.4f -> %.4f; zero kick "
                             "saturates 2^n",
                             static_cast<unsigned long long>(pruned.counts.back()), pruned.R,
                             pruned.log_ratios[4], pruned.log_ratios.back())
                       : c.why};
}

}  // namespace

int main() {
    g_threads = resolve_threads(0);
    std::printf("acceptance gate (%d threads)%s\n", g_threads,
                std::getenv("SKEWSPEC_ACCEPT_EXTENDED") ? ", extended counting sweep" : "");

    criterion(1, "transfer-block-bessel-oracle", bessel_oracle);
    criterion(2, "trivial-block-identity", trivial_block);
    criterion(3, "cutoff-stability", cutoff_stability);
    criterion(4, "spectral-gap-trend", gap_trend);
    criterion(5, "count-vs-volume-scaling", weyl_scaling);
    criterion(6, "eigenvalue-singular-value-inequality", weyl_inequality);
    criterion(7, "coherent-state-suite", coherent_states);
    criterion(8, "momentum-kick-cross-check", h_field_cross_check);
    criterion(9, "graph-jump-invariance", graph_jump);
    criterion(10, "dimension-estimator-calibration", dimension_calibration);
    criterion(11, "correlation-decay-vs-spectrum", correlation_mixing);
    criterion(12, "captive-word-counts", captive_counts);

    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures;
}
