#include "skewspec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "skewspec/csv.hpp"
#include "skewspec/parallel.hpp"
#include "skewspec/svg.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_resolved(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(join_path(out_dir, "resolved.json"), std::ios::binary);
    if (!f) throw ConfigError("cannot write resolved config in " + out_dir);
    f << resolved_json(cfg).dump(2) << "\n";
}

int cutoff_for(const ExperimentConfig& cfg, const ExpandingMap& map, int alpha) {
    if (cfg.cutoff > 0) return cfg.cutoff;
    if (cfg.group == GroupTag::U1) return default_cutoff_u1(map, cfg.make_u1(), alpha);
    return default_cutoff_su2(map, cfg.make_su2(), alpha);
}

ResonanceSet extract_for(const ExperimentConfig& cfg, const ExpandingMap& map, int alpha,
                         int K, int threads) {
    if (cfg.group == GroupTag::U1) {
        return extract_resonances(map, cfg.make_u1(), alpha, K, cfg.tol, threads);
    }
    return extract_resonances(map, cfg.make_su2(), alpha, K, cfg.tol, threads);
}

std::string alpha_label(const ExperimentConfig& cfg, int alpha) {
    if (cfg.group == GroupTag::U1) return "nu=" + csv_num(alpha);
    return "j=" + csv_num(alpha / 2.0);
}

// Spectral parameter as a real number: nu, or j = two_j / 2.
double alpha_value(const ExperimentConfig& cfg, int alpha) {
    return cfg.group == GroupTag::U1 ? double(alpha) : alpha / 2.0;
}

int alpha_den(const ExperimentConfig& cfg) { return cfg.group == GroupTag::U1 ? 1 : 2; }

TrappedCloud sample_cloud(const ExperimentConfig& cfg, const ExpandingMap& map, double delta) {
    if (cfg.group == GroupTag::U1) {
        return sample_trapped_set(map, cfg.make_u1(), delta, cfg.x_grid, cfg.budget, cfg.seed);
    }
    return sample_trapped_set(map, cfg.make_su2(), delta, cfg.x_grid, cfg.sphere_grid,
                              cfg.budget, cfg.seed);
}

// The sampler works in the distribution-theoretic frequency variable; the
// fractal-volume normalization of the counting law lives in the canonical
// variable xi/2pi.  Both the graph values and their accuracy bound rescale.
TrappedCloud to_canonical_units(TrappedCloud cloud) {
    for (auto& p : cloud.pts) p.xi /= two_pi;
    cloud.accuracy /= two_pi;
    cloud.s_max /= two_pi;
    cloud.R /= two_pi;
    return cloud;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    return sxy / sxx;
}

}  // namespace

SpectrumOutcome run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir,
                             int threads) {
    write_resolved(cfg, out_dir);
    const ExpandingMap map = cfg.make_map();
    const int n = int(cfg.alphas.size());

    SpectrumOutcome out;
    out.sets.resize(n);
    out.row_errors.assign(n, "");

    const int inner = (n == 1) ? threads : 1;
    parallel_for(n, threads, [&](int i) {
        const int alpha = cfg.alphas[i];
        try {
            const int K = cutoff_for(cfg, map, alpha);
            out.sets[i] = extract_for(cfg, map, alpha, K, inner);
        } catch (const NumericError& e) {
            out.row_errors[i] = e.what();
        }
    });

    CsvWriter csv(join_path(out_dir, "resonances.csv"),
                  "alpha_num,alpha_den,re,im,modulus,stab_err,stable");
    for (const auto& rs : out.sets) {
        for (const auto& r : rs.entries) {
            csv.row(csv_num(rs.alpha_num) + "," + csv_num(rs.alpha_den) + "," +
                    csv_num(r.lambda.real()) + "," + csv_num(r.lambda.imag()) + "," +
                    csv_num(std::abs(r.lambda)) + "," + csv_num(r.stab_err) + "," +
                    (r.stable ? "1" : "0"));
        }
    }

    SvgPlot plot(-1.08, 1.08, -1.08, 1.08);
    plot.set_title("stable resonances per block");
    plot.set_axis_labels("Re", "Im");
    plot.add_circle_guide(0, 0, 1.0, "#000000");
    plot.add_circle_guide(0, 0, 1.0 / std::sqrt(map.E_min_est), "#888888");
    for (int i = 0; i < n; ++i) {
        const char* color = SvgPlot::palette(std::size_t(i));
        for (const auto& r : out.sets[i].entries) {
            if (r.stable) plot.add_point(r.lambda.real(), r.lambda.imag(), color, 2.5);
        }
        plot.add_legend_entry(color, alpha_label(cfg, cfg.alphas[i]));
    }
    plot.add_point(1.0, 0.0, "#000000", 4.0);  // the trivial-block eigenvalue
    plot.save(join_path(out_dir, "spectrum.svg"));

    for (int i = 0; i < n; ++i) {
        if (!out.row_errors[i].empty()) {
            std::fprintf(stderr, "spectrum row %s failed: %s\n",
                         alpha_label(cfg, cfg.alphas[i]).c_str(), out.row_errors[i].c_str());
        }
    }
    return out;
}

std::vector<WeylRow> run_weyl(const ExperimentConfig& cfg, const std::string& out_dir,
                              int threads) {
    write_resolved(cfg, out_dir);
    const ExpandingMap map = cfg.make_map();
    const int n = int(cfg.alphas.size());
    std::vector<WeylRow> rows(n);

    const int inner = (n == 1) ? threads : 1;
    parallel_for(n, threads, [&](int i) {
        const int alpha = cfg.alphas[i];
        WeylRow& row = rows[i];
        row.alpha_num = alpha;
        row.alpha_den = alpha_den(cfg);
        const double a_val = alpha_value(cfg, alpha);
        if (a_val <= 1.0) {
            row.flagged = true;
            row.note = "alpha too small for log ratios";
            return;
        }
        try {
            row.cutoff = cutoff_for(cfg, map, alpha);
            const ResonanceSet rs = extract_for(cfg, map, alpha, row.cutoff, inner);
            row.count = count_above(rs, cfg.epsilon);

            const double delta = cfg.delta_for(a_val);
            const TrappedCloud cloud = to_canonical_units(sample_cloud(cfg, map, delta));
            row.volume = box_volume(cloud, delta);

            const double la = std::log(a_val);
            if (row.count > 0) row.ratio_count = std::log(double(row.count)) / la;
            if (row.volume > 0.0) row.ratio_volume = 1.0 + std::log(row.volume) / la;
            if (row.count == 0 || row.volume <= 0.0) {
                row.flagged = true;
                row.note = "empty count or volume";
            }
        } catch (const NumericError& e) {
            row.flagged = true;
            row.note = e.what();
        }
    });

    CsvWriter csv(join_path(out_dir, "weyl.csv"),
                  "alpha_num,alpha_den,cutoff,count,volume,log_ratio_count,log_ratio_volume,"
                  "flagged");
    for (const auto& r : rows) {
        csv.row(csv_num(r.alpha_num) + "," + csv_num(r.alpha_den) + "," + csv_num(r.cutoff) +
                "," + csv_num(r.count) + "," + csv_num(r.volume) + "," +
                csv_num(r.ratio_count) + "," + csv_num(r.ratio_volume) + "," +
                (r.flagged ? "1" : "0"));
    }

    double x_hi = 1.0;
    for (const auto& r : rows) x_hi = std::max(x_hi, alpha_value(cfg, r.alpha_num));
    SvgPlot plot(0.0, x_hi * 1.05, 0.0, 2.0);
    plot.set_title("resonance count vs neighborhood volume scaling");
    plot.set_axis_labels("alpha", "log ratio");
    plot.add_polyline({{0.0, 1.0}, {x_hi * 1.05, 1.0}}, "#888888");
    for (const auto& r : rows) {
        if (r.flagged) continue;
        plot.add_marker(alpha_value(cfg, r.alpha_num), r.ratio_count, SvgPlot::palette(0));
        plot.add_point(alpha_value(cfg, r.alpha_num), r.ratio_volume, SvgPlot::palette(1), 3.0);
    }
    plot.add_legend_entry(SvgPlot::palette(0), "log N / log alpha");
    plot.add_legend_entry(SvgPlot::palette(1), "1 + log Vol / log alpha");
    plot.save(join_path(out_dir, "weyl.svg"));

    for (const auto& r : rows) {
        if (r.flagged) {
            std::fprintf(stderr, "weyl row alpha=%d/%d flagged: %s\n", r.alpha_num, r.alpha_den,
                         r.note.c_str());
        }
    }
    return rows;
}

TrappedCloud run_trapped(const ExperimentConfig& cfg, const std::string& out_dir,
                         int /*threads*/) {
    write_resolved(cfg, out_dir);
    const ExpandingMap map = cfg.make_map();
    const double delta = cfg.delta > 0.0 ? cfg.delta : 0.05;
    const TrappedCloud cloud = sample_cloud(cfg, map, delta);

    const bool sphere = cloud.has_sphere;
    CsvWriter csv(join_path(out_dir, "trapped.csv"),
                  sphere ? "x,xi,nx,ny,nz,depth,word" : "x,xi,depth,word");
    for (const auto& p : cloud.pts) {
        std::string row = csv_num(p.x) + "," + csv_num(p.xi);
        if (sphere) {
            row += "," + csv_num(p.n.x()) + "," + csv_num(p.n.y()) + "," + csv_num(p.n.z());
        }
        row += "," + csv_num(cloud.depth) + "," +
               Word::from_index(p.word, cloud.k, cloud.depth).to_string();
        csv.row(row);
    }

    const double reach = cloud.R + cloud.s_max;
    SvgPlot plot(0.0, 1.0, -reach, reach);
    plot.set_title(sphere ? "trapped set, (x, xi) projection, color = n3"
                          : "trapped set, (x, xi)");
    plot.set_axis_labels("x", "xi");
    // Plots are qualitative; cap the point count so files stay viewable.
    const std::size_t max_pts = 20000;
    const std::size_t stride = std::max<std::size_t>(1, cloud.pts.size() / max_pts);
    for (std::size_t i = 0; i < cloud.pts.size(); i += stride) {
        const auto& p = cloud.pts[i];
        const std::string color =
            sphere ? SvgPlot::diverging_color(p.n.z()) : std::string(SvgPlot::palette(0));
        plot.add_point(p.x, p.xi, color, 1.2);
    }
    plot.save(join_path(out_dir, "trapped.svg"));

    if (!cfg.box_deltas.empty()) {
        const BoxCountResult bc = box_count(cloud, cfg.box_deltas);
        CsvWriter bcsv(join_path(out_dir, "boxcount.csv"),
                       "delta,volume,log_delta,log_volume");
        for (std::size_t i = 0; i < bc.deltas.size(); ++i) {
            bcsv.row(csv_num(bc.deltas[i]) + "," + csv_num(bc.volumes[i]) + "," +
                     csv_num(std::log(bc.deltas[i])) + "," + csv_num(std::log(bc.volumes[i])));
        }
        std::printf("box-counting dimension estimate: %.4f (ambient %d, fit rms %.3g)\n",
                    bc.dim, bc.ambient_d, bc.residual);
    }
    std::printf("trapped cloud: %zu points, depth %d, accuracy %.3g\n", cloud.pts.size(),
                cloud.depth, cloud.accuracy);
    return cloud;
}

std::vector<GapRow> run_gap(const ExperimentConfig& cfg, const std::string& out_dir,
                            int threads) {
    write_resolved(cfg, out_dir);
    const ExpandingMap map = cfg.make_map();

    std::vector<int> alphas;
    for (int a : cfg.alphas) {
        if (a > 0) alphas.push_back(a);  // the trivial block always carries lambda = 1
    }
    const int n = int(alphas.size());
    std::vector<GapRow> rows(n);

    const int inner = (n == 1) ? threads : 1;
    parallel_for(n, threads, [&](int i) {
        const int alpha = alphas[i];
        const int K = cutoff_for(cfg, map, alpha);
        const ResonanceSet rs = extract_for(cfg, map, alpha, K, inner);
        rows[i] = GapRow{alpha, alpha_den(cfg), rs.max_stable_modulus()};
    });

    const double reference = 1.0 / std::sqrt(map.E_min_est);
    CsvWriter csv(join_path(out_dir, "gap.csv"), "alpha_num,alpha_den,radius,reference");
    for (const auto& r : rows) {
        csv.row(csv_num(r.alpha_num) + "," + csv_num(r.alpha_den) + "," + csv_num(r.radius) +
                "," + csv_num(reference));
    }
    std::printf("spectral-gap reference 1/sqrt(E_min) = %.6f\n", reference);
    return rows;
}

CorrelationOutcome run_correlation(const ExperimentConfig& cfg, const std::string& out_dir,
                                   int threads) {
    write_resolved(cfg, out_dir);
    if (cfg.group != GroupTag::U1) {
        throw ConfigError("correlation runs are defined on U(1) blocks");
    }
    const ExpandingMap map = cfg.make_map();
    const CocycleU1 c = cfg.make_u1();
    const int nu = cfg.corr_alpha;
    const int modes = int(cfg.psi_re.size() / 2);
    const int K = std::max(default_cutoff_u1(map, c, nu),
                           std::max(modes, int(cfg.phi_re.size() / 2)) + 8);

    const TruncatedTransferMatrix M = assemble_u1(map, c, nu, K, threads);
    const SrbDensity rho = srb_density(map, K, threads);

    const int dim = 2 * K + 1;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(dim);
    const int p_off = K - modes;
    for (std::size_t i = 0; i < cfg.psi_re.size(); ++i) {
        psi[p_off + int(i)] = Complex(cfg.psi_re[i], cfg.psi_im[i]);
    }
    const int f_off = K - int(cfg.phi_re.size() / 2);
    for (std::size_t i = 0; i < cfg.phi_re.size(); ++i) {
        phi[f_off + int(i)] = Complex(cfg.phi_re[i], cfg.phi_im[i]);
    }

    // mu-weighted pairing on a fixed grid: C(n) = (1/G) sum conj(psi_n) phi rho
    const int G = 4096;
    Eigen::VectorXcd weight(G);  // phi(x) rho(x)
    Eigen::MatrixXcd modes_at(G, dim);
    for (int q = 0; q < G; ++q) {
        const double x = double(q) / G;
        for (int m = -K; m <= K; ++m) {
            modes_at(q, m + K) = std::exp(Complex(0.0, two_pi * m * x));
        }
    }
    Eigen::VectorXcd phi_vals = modes_at * phi;
    for (int q = 0; q < G; ++q) weight[q] = phi_vals[q] * rho.eval(double(q) / G);

    // C_inf: zero on twisted blocks; the product of mu-means on the flat block.
    Complex c_inf(0.0, 0.0);
    if (nu == 0) {
        Eigen::VectorXcd psi_vals = modes_at * psi;
        Complex mean_psi(0.0, 0.0), mean_phi(0.0, 0.0);
        for (int q = 0; q < G; ++q) {
            const double r = rho.eval(double(q) / G);
            mean_psi += std::conj(psi_vals[q]) * r;
            mean_phi += phi_vals[q] * r;
        }
        c_inf = (mean_psi / double(G)) * (mean_phi / double(G));
    }

    CorrelationOutcome out;
    Eigen::VectorXcd v = psi;
    for (int n = 0; n <= cfg.corr_n_max; ++n) {
        Eigen::VectorXcd vals = modes_at * v;
        Complex corr(0.0, 0.0);
        for (int q = 0; q < G; ++q) corr += std::conj(vals[q]) * weight[q];
        corr /= double(G);
        out.abs_c.push_back(std::abs(corr - c_inf));
        if (n < cfg.corr_n_max) v = M.entries * v;
    }

    // Fit the tail only: the first steps carry non-resonant transients.
    out.fit_start = std::max(5, cfg.corr_n_max / 5);
    std::vector<double> xs, ys;
    for (int n = out.fit_start; n <= cfg.corr_n_max; ++n) {
        if (out.abs_c[std::size_t(n)] > 1e-250) {
            xs.push_back(double(n));
            ys.push_back(std::log(out.abs_c[std::size_t(n)]));
        }
    }
    if (xs.size() >= 3) {
        out.fitted_rate = std::exp(fit_slope(xs, ys));
    } else {
        out.fit_ok = false;
    }

    const ResonanceSet rs = extract_resonances(map, c, nu, K, cfg.tol, threads);
    out.leading_modulus = rs.max_stable_modulus();
    out.degenerate = out.leading_modulus >= 1.0 - cfg.tol;

    CsvWriter csv(join_path(out_dir, "correlation.csv"), "n,abs_c,fitted_rate");
    for (std::size_t n = 0; n < out.abs_c.size(); ++n) {
        csv.row(csv_num(std::int64_t(n)) + "," + csv_num(out.abs_c[n]) + "," +
                csv_num(out.fitted_rate));
    }
    std::printf("correlation decay: fitted rate %.6f, leading stable modulus %.6f%s\n",
                out.fitted_rate, out.leading_modulus,
                out.degenerate ? " (degenerate: no decay expected)" : "");
    return out;
}

CaptiveOutcome run_captive(const ExperimentConfig& cfg, const std::string& out_dir,
                           int /*threads*/) {
    write_resolved(cfg, out_dir);
    const ExpandingMap map = cfg.make_map();

    CaptiveOutcome out;
    out.kappa = cfg.kappa > 0.0 ? cfg.kappa : default_kappa(map);
    if (cfg.group == GroupTag::U1) {
        const CocycleU1 c = cfg.make_u1();
        out.R = escape_radius(map, c, out.kappa);
        out.counts = captive_series(map, c, cfg.captive_n_max, cfg.captive_x_grid,
                                    cfg.captive_xi_grid, out.R);
    } else {
        const CocycleSU2 c = cfg.make_su2();
        out.R = escape_radius(map, c, out.kappa);
        out.counts = captive_series(map, c, cfg.captive_n_max, cfg.captive_x_grid,
                                    cfg.captive_xi_grid, cfg.captive_sphere_grid, out.R);
    }

    CsvWriter csv(join_path(out_dir, "captive.csv"), "n,count,log_ratio");
    for (std::size_t i = 0; i < out.counts.size(); ++i) {
        const double ratio = std::log(double(out.counts[i])) / double(i + 1);
        out.log_ratios.push_back(ratio);
        csv.row(csv_num(std::int64_t(i + 1)) + "," + csv_num(out.counts[i]) + "," +
                csv_num(ratio));
    }
    std::printf("captive counts at R=%.4f (kappa=%.3f): N(%d)=%llu, log N/n=%.4f vs log k=%.4f\n",
                out.R, out.kappa, cfg.captive_n_max,
                static_cast<unsigned long long>(out.counts.back()),
                out.log_ratios.back(), std::log(double(map.k)));
    return out;
}

}  // namespace skewspec
