#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "skewspec/su2.hpp"
#include "skewspec/transfer.hpp"

using namespace skewspec;

TEST_CASE("Miller Bessel oracle agrees with the standard library") {
    for (int n : {0, 1, 2, 5, 11, 20}) {
        for (double x : {0.5, 1.0, 3.0, 10.0, 25.0, 40.0}) {
            CHECK(oracles::bessel_j(n, x) ==
                  doctest::Approx(std::cyl_bessel_j(double(n), x)).epsilon(1e-11));
        }
    }
    CHECK(oracles::bessel_j(-3, 2.0) == doctest::Approx(-std::cyl_bessel_j(3.0, 2.0)));
}

TEST_CASE("cosine cocycle on the doubling map has Bessel entries") {
    // tau_nu(x) e^{2 pi i k E(x)} with E = 2x: the doubling moves mode k to 2k
    // and e^{i nu cos} expands by the Jacobi-Anger series,
    // M_{m,k} = i^{m-2k} J_{m-2k}(nu).
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleU1 c{FourierSeries::cosine()};
    const int K = 8, nu = 10;
    TruncatedTransferMatrix M = assemble_u1(map, c, nu, K);
    CHECK(M.residual < 1e-10);
    const Complex i_unit(0.0, 1.0);
    double worst = 0.0;
    for (int m = -K; m <= K; ++m) {
        for (int k = -K; k <= K; ++k) {
            Complex want = std::pow(i_unit, double(m - 2 * k)) *
                           oracles::bessel_j(m - 2 * k, double(nu));
            worst = std::max(worst, std::abs(M.entries(M.index(m), M.index(k)) - want));
        }
    }
    CHECK(worst < 1e-10);
    // spot value quoted to fixed digits: M_{0,0} = J_0(10)
    CHECK(M.entries(M.index(0), M.index(0)).real() == doctest::Approx(-0.2459358).epsilon(1e-6));
    CHECK(std::abs(M.entries(M.index(0), M.index(0)).imag()) < 1e-12);
}

TEST_CASE("linear base map gives shift-Toeplitz structure") {
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleU1 c{FourierSeries::cosine()};
    TruncatedTransferMatrix M = assemble_u1(map, c, 3, 6);
    for (int m = -6; m <= 4; ++m) {
        for (int k = -6; k <= 5; ++k) {
            CHECK(std::abs(M.entries(M.index(m), M.index(k)) -
                           M.entries(M.index(m + 2), M.index(k + 1))) < 1e-12);
        }
    }
}

TEST_CASE("flat block of the linear map has unit trace") {
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleU1 c{FourierSeries::cosine()};
    TruncatedTransferMatrix M = assemble_u1(map, c, 0, 12);
    CHECK(std::abs(M.entries.trace() - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("entries match direct quadrature on a perturbed map") {
    ExpandingMap map = ExpandingMap::perturbed(2, 0.5);
    CocycleU1 c{FourierSeries::cosine()};
    const int K = 4, nu = 2;
    TruncatedTransferMatrix M = assemble_u1(map, c, nu, K);
    for (int k = -K; k <= K; ++k) {
        auto symbol = [&](double x) {
            return c.phase(nu, x) * std::exp(Complex(0.0, two_pi * k * map.lift(x)));
        };
        for (int m = -K; m <= K; ++m) {
            Complex want = oracles::transfer_entry_direct(m, M.N_q, symbol);
            CHECK(std::abs(M.entries(M.index(m), M.index(k)) - want) < 1e-12);
        }
    }
}

TEST_CASE("columns obey the Parseval bound for unimodular symbols") {
    ExpandingMap map = ExpandingMap::perturbed(2, 0.3);
    CocycleU1 c{FourierSeries::cosine()};
    const int K = 16;
    TruncatedTransferMatrix M = assemble_u1(map, c, 1, K);
    for (int k = -K; k <= K; ++k) {
        double sum = M.entries.col(M.index(k)).squaredNorm();
        CHECK(sum <= 1.0 + 1e-10);
    }
    // central column: the symbol's spectrum is well inside the window
    CHECK(M.entries.col(M.index(0)).squaredNorm() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("spin block matches direct quadrature entrywise") {
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleSU2 c = CocycleSU2::single(FourierSeries::cosine(0.2), FourierSeries::zero(),
                                      FourierSeries::cosine());
    const int two_j = 2, K = 3;
    TruncatedTransferMatrix M = assemble_su2(map, c, two_j, K);
    CHECK(M.dim_rep == 3);
    SpinRep rep = spin_generators(two_j);
    std::vector<Eigen::MatrixXcd> taus(M.N_q);
    for (int q = 0; q < M.N_q; ++q) taus[q] = group_rep(rep, c, double(q) / M.N_q);
    double worst = 0.0;
    for (int k = -K; k <= K; ++k) {
        for (int b = 0; b < M.dim_rep; ++b) {
            for (int m = -K; m <= K; ++m) {
                for (int a = 0; a < M.dim_rep; ++a) {
                    Complex want(0.0, 0.0);
                    for (int q = 0; q < M.N_q; ++q) {
                        const double x = double(q) / M.N_q;
                        want += std::exp(Complex(0.0, two_pi * (k * map.lift(x) - m * x))) *
                                taus[q](a, b);
                    }
                    want /= double(M.N_q);
                    worst = std::max(worst,
                                     std::abs(M.entries(M.index(m, a), M.index(k, b)) - want));
                }
            }
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("j = 0 block reduces to the untwisted composition operator") {
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleSU2 c = CocycleSU2::single(FourierSeries::cosine(0.2), FourierSeries::zero(),
                                      FourierSeries::cosine());
    TruncatedTransferMatrix su2 = assemble_su2(map, c, 0, 10);
    CocycleU1 trivial{FourierSeries::zero()};
    TruncatedTransferMatrix u1 = assemble_u1(map, trivial, 0, 10);
    CHECK((su2.entries - u1.entries).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("adjoint assembly is the conjugate transpose of the direct one") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        int k = 2 + trial % 2;
        double a = 0.4 * unif(rng);
        ExpandingMap map = a == 0.0 ? ExpandingMap::linear(k) : ExpandingMap::perturbed(k, a);
        FourierSeries omega;
        omega.cosc = {unif(rng), 0.5 * unif(rng)};
        omega.sinc = {0.7 * unif(rng)};
        CocycleU1 c{omega};
        int nu = 1 + trial;
        int K = 12;
        TruncatedTransferMatrix direct = assemble_u1(map, c, nu, K);
        TruncatedTransferMatrix adj = assemble_adjoint_u1(map, c, nu, K);
        double err = (adj.entries - direct.entries.adjoint()).cwiseAbs().maxCoeff();
        CHECK(err < 1e-9);
    }
}

TEST_CASE("declared aliasing residual stays under the contract bound") {
    ExpandingMap map = ExpandingMap::perturbed(2, 0.5);
    CocycleU1 c{FourierSeries::cosine()};
    for (int nu : {0, 1, 7}) {
        TruncatedTransferMatrix M = assemble_u1(map, c, nu, 10);
        CHECK(M.residual < 1e-10);
    }
    CocycleSU2 s = CocycleSU2::single(FourierSeries::cosine(0.2), FourierSeries::zero(),
                                      FourierSeries::cosine());
    CHECK(assemble_su2(map, s, 3, 8).residual < 1e-10);
}

TEST_CASE("cutoff policy floors at 16 and scales with the block") {
    ExpandingMap map = ExpandingMap::linear(2);
    CocycleU1 c{FourierSeries::cosine()};
    CHECK(default_cutoff_u1(map, c, 0) == 16);
    CHECK(default_cutoff_u1(map, c, 100) == 200);
    CocycleSU2 s = CocycleSU2::single(FourierSeries::zero(), FourierSeries::zero(),
                                      FourierSeries::cosine());
    CHECK(default_cutoff_su2(map, s, 0) == 16);
    CHECK(default_cutoff_su2(map, s, 40) >= 16);
}

TEST_CASE("matrix cache round-trips exactly") {
    ExpandingMap map = ExpandingMap::perturbed(2, 0.4);
    CocycleU1 c{FourierSeries::cosine()};
    TruncatedTransferMatrix M = assemble_u1(map, c, 3, 9);
    std::string path = "cache_roundtrip.rtlm";
    save_matrix(M, path);
    TruncatedTransferMatrix L = load_matrix(path);
    std::remove(path.c_str());
    CHECK(L.group == M.group);
    CHECK(L.alpha_num == M.alpha_num);
    CHECK(L.alpha_den == M.alpha_den);
    CHECK(L.K == M.K);
    CHECK(L.N_q == M.N_q);
    CHECK(L.residual == M.residual);
    CHECK((L.entries - M.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(load_matrix("no_such_file.rtlm"), ConfigError);
}
