#include "skewspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "skewspec/parallel.hpp"

namespace skewspec {

namespace {

int next_pow2(double x) {
    int n = 64;  // keeps the half-grid comparison meaningful at tiny K
    while (double(n) < x) n *= 2;
    return n;
}

// Phase bandwidth proxies: e^{i z cos(2 pi f x)} carries Fourier mass out to
// roughly |z| f (Bessel decay), so budget amplitude x frequency per factor.
double u1_bandwidth(const CocycleU1& c, int nu) {
    return std::abs(nu) * c.omega.coeff_bound() * std::max(1, c.omega.max_frequency());
}

double su2_bandwidth(const CocycleSU2& c, int two_j) {
    double b = 0.0;
    if (c.product_form) {
        for (const auto& f : c.factors)
            b += f.angle.coeff_bound() * std::max(1, f.angle.max_frequency());
    } else {
        for (const auto& o : c.omega)
            b += o.coeff_bound() * std::max(1, o.max_frequency());
    }
    return two_j * b;
}

// Column integrands sampled on the q/n_grid lattice, one stream per row-spin
// index; n_grid always divides N_q so streams reuse the full-grid tables.
using ColumnSampler =
    std::function<void(int col, int n_grid, std::vector<Eigen::VectorXcd>&)>;

Eigen::MatrixXcd columns_at(const TruncatedTransferMatrix& shape, const std::vector<int>& cols,
                            int n_grid, const ColumnSampler& sample, int threads) {
    const int d = shape.dim_rep;
    const int rows = shape.size();
    Eigen::MatrixXcd out(rows, int(cols.size()));
    parallel_for_workers(int(cols.size()), threads, [&](int, int ci) {
        thread_local Eigen::FFT<double> fft;
        std::vector<Eigen::VectorXcd> streams(d, Eigen::VectorXcd(n_grid));
        sample(cols[ci], n_grid, streams);
        std::vector<Complex> in(n_grid), coef(n_grid);
        for (int a = 0; a < d; ++a) {
            Eigen::VectorXcd::Map(in.data(), n_grid) = streams[a];
            fft.fwd(coef, in);
            for (int m = -shape.K; m <= shape.K; ++m) {
                int r = ((m % n_grid) + n_grid) % n_grid;
                out(shape.index(m, a), ci) = coef[r] / double(n_grid);
            }
        }
    });
    return out;
}

// Full assembly plus the aliasing estimate: a spread of columns is re-assembled
// on the half grid and compared entrywise; disagreement means the integrand's
// Fourier tail wrapped into the kept band.
void assemble_core(TruncatedTransferMatrix& M, const ColumnSampler& sample, int threads) {
    const int n = M.size();
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    M.entries = columns_at(M, all, M.N_q, sample, threads);

    std::vector<int> probe;
    int n_probe = std::min(8, n);
    for (int i = 0; i < n_probe; ++i) {
        int c = (n_probe == 1) ? 0 : int(std::int64_t(i) * (n - 1) / (n_probe - 1));
        if (probe.empty() || probe.back() != c) probe.push_back(c);
    }
    Eigen::MatrixXcd half = columns_at(M, probe, M.N_q / 2, sample, threads);
    double res = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i)
        res = std::max(res, (half.col(i) - M.entries.col(probe[i])).cwiseAbs().maxCoeff());
    M.residual = res;
    if (!(res < 1e-10))
        throw NumericError("transfer assembly under-resolved: aliasing estimate " +
                           std::to_string(res) + " at N_q = " + std::to_string(M.N_q));
}

} // namespace

TruncatedTransferMatrix assemble_u1(const ExpandingMap& map, const CocycleU1& c,
                                    int nu, int K, int threads) {
    if (K < 1) throw ConfigError("Fourier cutoff K must be >= 1");
    TruncatedTransferMatrix M;
    M.group = GroupTag::U1;
    M.alpha_num = nu;
    M.alpha_den = 1;
    M.K = K;
    M.dim_rep = 1;
    M.N_q = next_pow2(16.0 * (K + u1_bandwidth(c, nu) + 1.0));

    const int N = M.N_q;
    Eigen::VectorXd ev(N);
    Eigen::VectorXcd phase(N);
    for (int q = 0; q < N; ++q) {
        double x = double(q) / N;
        ev(q) = map.eval(x);
        phase(q) = c.phase(nu, x);
    }
    ColumnSampler sample = [&](int col, int n_grid, std::vector<Eigen::VectorXcd>& s) {
        const int k = col - K;
        const int stride = N / n_grid;
        for (int q = 0; q < n_grid; ++q) {
            int f = q * stride;
            s[0](q) = phase(f) * std::polar(1.0, two_pi * k * ev(f));
        }
    };
    assemble_core(M, sample, threads);
    return M;
}

TruncatedTransferMatrix assemble_su2(const ExpandingMap& map, const CocycleSU2& c,
                                     int two_j, int K, int threads) {
    if (K < 1) throw ConfigError("Fourier cutoff K must be >= 1");
    SpinRep rep = spin_generators(two_j);
    TruncatedTransferMatrix M;
    M.group = GroupTag::SU2;
    M.alpha_num = two_j;
    M.alpha_den = 2;
    M.K = K;
    M.dim_rep = rep.dim;
    M.N_q = next_pow2(16.0 * (K + su2_bandwidth(c, two_j) + 1.0));

    const int N = M.N_q;
    const int d = rep.dim;
    Eigen::VectorXd ev(N);
    std::vector<Eigen::MatrixXcd> tau(N);
    parallel_for(N, threads, [&](int q) {
        double x = double(q) / N;
        ev(q) = map.eval(x);
        tau[q] = group_rep(rep, c, x);
    });
    ColumnSampler sample = [&](int col, int n_grid, std::vector<Eigen::VectorXcd>& s) {
        const int k = col / d - K;
        const int b = col % d;
        const int stride = N / n_grid;
        for (int q = 0; q < n_grid; ++q) {
            int f = q * stride;
            Complex e = std::polar(1.0, two_pi * k * ev(f));
            for (int a = 0; a < d; ++a) s[a](q) = tau[f](a, b) * e;
        }
    };
    assemble_core(M, sample, threads);
    return M;
}

TruncatedTransferMatrix assemble_adjoint_u1(const ExpandingMap& map, const CocycleU1& c,
                                            int nu, int K, int threads) {
    if (K < 1) throw ConfigError("Fourier cutoff K must be >= 1");
    TruncatedTransferMatrix M;
    M.group = GroupTag::U1;
    M.alpha_num = nu;
    M.alpha_den = 1;
    M.K = K;
    M.dim_rep = 1;
    M.N_q = next_pow2(16.0 * (K + u1_bandwidth(c, nu) + 1.0));

    // Branch sum: the column integrand is sum_y 1/E'(y) e^{-i nu Omega(y)} e_k(y)
    // over the k preimages of each node, smooth and periodic as a whole.
    const int N = M.N_q;
    const int nb = map.k;
    Eigen::MatrixXd ypos(N, nb);
    Eigen::MatrixXcd wgt(N, nb);
    parallel_for(N, 1, [&](int q) {
        double x = double(q) / N;
        for (int e = 0; e < nb; ++e) {
            double y = map.inverse_branch(x, e);
            ypos(q, e) = y;
            wgt(q, e) = std::conj(c.phase(nu, y)) / map.deriv(y);
        }
    });
    ColumnSampler sample = [&](int col, int n_grid, std::vector<Eigen::VectorXcd>& s) {
        const int k = col - K;
        const int stride = N / n_grid;
        for (int q = 0; q < n_grid; ++q) {
            int f = q * stride;
            Complex acc = 0.0;
            for (int e = 0; e < nb; ++e)
                acc += wgt(f, e) * std::polar(1.0, two_pi * k * ypos(f, e));
            s[0](q) = acc;
        }
    };
    assemble_core(M, sample, threads);
    return M;
}

int default_cutoff_u1(const ExpandingMap& map, const CocycleU1& c, int nu) {
    double smax = c.omega.grid_max_abs_deriv() / (map.e_min - 1.0);
    return std::max(16, int(std::ceil(2.0 * std::abs(nu) * smax / two_pi)));
}

int default_cutoff_su2(const ExpandingMap& map, const CocycleSU2& c, int two_j) {
    double hmax = 0.0;
    for (int i = 0; i < 512; ++i)
        hmax = std::max(hmax, su2_data(c, double(i) / 512).u.norm());
    double smax = hmax / (map.e_min - 1.0);
    return std::max(16, int(std::ceil(two_j * smax / two_pi)));
}

namespace {

void put_i32(std::ofstream& f, std::int32_t v) {
    f.write(reinterpret_cast<const char*>(&v), 4);
}

std::int32_t get_i32(std::ifstream& f) {
    std::int32_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

} // namespace

void save_matrix(const TruncatedTransferMatrix& M, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write matrix cache: " + path);
    f.write("RTLM", 4);
    char tag[4] = {char(M.group == GroupTag::SU2 ? 1 : 0), 0, 0, 0};
    f.write(tag, 4);
    put_i32(f, M.alpha_num);
    put_i32(f, M.alpha_den);
    put_i32(f, M.K);
    put_i32(f, M.N_q);
    f.write(reinterpret_cast<const char*>(&M.residual), 8);
    const int n = M.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double re = M.entries(r, c).real(), im = M.entries(r, c).imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
    if (!f) throw ConfigError("short write on matrix cache: " + path);
}

TruncatedTransferMatrix load_matrix(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read matrix cache: " + path);
    char magic[4], tag[4];
    f.read(magic, 4);
    f.read(tag, 4);
    if (!f || std::memcmp(magic, "RTLM", 4) != 0)
        throw ConfigError("not a matrix cache file: " + path);
    TruncatedTransferMatrix M;
    M.group = tag[0] == 1 ? GroupTag::SU2 : GroupTag::U1;
    M.alpha_num = get_i32(f);
    M.alpha_den = get_i32(f);
    M.K = get_i32(f);
    M.N_q = get_i32(f);
    f.read(reinterpret_cast<char*>(&M.residual), 8);
    M.dim_rep = M.group == GroupTag::SU2 ? M.alpha_num + 1 : 1;
    const int n = M.size();
    M.entries.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double re = 0, im = 0;
            f.read(reinterpret_cast<char*>(&re), 8);
            f.read(reinterpret_cast<char*>(&im), 8);
            M.entries(r, c) = Complex(re, im);
        }
    if (!f) throw ConfigError("truncated matrix cache file: " + path);
    return M;
}

} // namespace skewspec
