#pragma once

#include <string>

#include <Eigen/Dense>

#include "skewspec/dynamics.hpp"
#include "skewspec/su2.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

enum class GroupTag { U1, SU2 };

// Truncated matrix of the twisted transfer operator on the Fourier modes
// e_k, |k| <= K, tensored with D_alpha. Index layout: (m, a) -> (m+K)*dim + a.
struct TruncatedTransferMatrix {
    GroupTag group = GroupTag::U1;
    int alpha_num = 0;  // nu for U(1); 2j for SU(2)
    int alpha_den = 1;  // 1 for U(1); 2 for SU(2)
    int K = 0;
    int dim_rep = 1;  // 1 for U(1); 2j+1 for SU(2)
    int N_q = 0;      // quadrature size, power of two
    double residual = 0.0;  // aliasing estimate from the half-grid re-assembly
    Eigen::MatrixXcd entries;

    int size() const { return (2 * K + 1) * dim_rep; }
    int index(int m, int a = 0) const { return (m + K) * dim_rep + a; }
};

// Matrix of phi -> e^{i nu Omega} (phi o E): column k holds the Fourier
// coefficients of e^{i nu Omega(x)} e^{2 pi i k E(x)}, FFT over N_q nodes.
// Throws NumericError when the half-grid residual exceeds 1e-10.
TruncatedTransferMatrix assemble_u1(const ExpandingMap& map, const CocycleU1& c,
                                    int nu, int K, int threads = 1);

// Spin-j block: column (k,b) holds coefficients of tau_j(x)_{a,b} e^{2 pi i k E(x)}.
TruncatedTransferMatrix assemble_su2(const ExpandingMap& map, const CocycleSU2& c,
                                     int two_j, int K, int threads = 1);

// L^2 adjoint (transfer of densities): sum over inverse branches with weight
// 1/E' and conjugated phase. Assembled through the branch sum, not by
// transposing the direct matrix, so duality stays an independent check.
TruncatedTransferMatrix assemble_adjoint_u1(const ExpandingMap& map, const CocycleU1& c,
                                            int nu, int K, int threads = 1);

// Cutoff policy: trapped-set support puts the resonant modes at
// |k| <~ |alpha| S_max / 2 pi; doubled for margin, floored at 16.
int default_cutoff_u1(const ExpandingMap& map, const CocycleU1& c, int nu);
int default_cutoff_su2(const ExpandingMap& map, const CocycleSU2& c, int two_j);

// Binary cache: 32-byte header (magic "RTLM", group byte, alpha num/den,
// K, N_q as int32, residual as float64) then row-major (re, im) float64 pairs.
void save_matrix(const TruncatedTransferMatrix& M, const std::string& path);
TruncatedTransferMatrix load_matrix(const std::string& path);

} // namespace skewspec
