#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "skewspec/dynamics.hpp"
#include "skewspec/transfer.hpp"
#include "skewspec/types.hpp"

namespace skewspec {

struct PhasePoint {
    double x = 0.0;
    double xi = 0.0;
    bool has_sphere = false;
    Eigen::Vector3d n{0.0, 0.0, 0.0};
};

// One inverse-branch step of the multivalued canonical map on T*S^1:
// (x, xi) -> (y, E'(y) xi + Omega'(y)), y = E_eps^{-1}(x).
PhasePoint canonical_map_u1(const ExpandingMap& map, const CocycleU1& c, int eps,
                            const PhasePoint& p);
// Exact single-step inverse (forward map direction).
PhasePoint canonical_inverse_u1(const ExpandingMap& map, const CocycleU1& c,
                                const PhasePoint& p);

// H(x, n) = u(x).n, the momentum kick of the sphere extension.
double h_field(const CocycleSU2& c, double x, const Eigen::Vector3d& n);

// (x, xi, n) -> (y, E'(y) xi + H(y, n), R_{tau(y)} n), y = E_eps^{-1}(x).
PhasePoint canonical_map_su2(const ExpandingMap& map, const CocycleSU2& c, int eps,
                             const PhasePoint& p);
PhasePoint canonical_inverse_su2(const ExpandingMap& map, const CocycleSU2& c,
                                 const PhasePoint& p);

// Uniform bound on the graph values: ||Omega'||_inf / (e_min - 1), resp.
// max_x |u(x)| / (e_min - 1).
double s_max_u1(const ExpandingMap& map, const CocycleU1& c);
double s_max_su2(const ExpandingMap& map, const CocycleSU2& c, int grid = 512);

double default_kappa(const ExpandingMap& map);  // min(1.5, (1 + e_min)/2)

// Smallest radius with |xi| >= R  =>  |xi'| >= kappa |xi| on every branch;
// R = max{C-, C+} / (e_min - kappa) with C the extremes of the momentum kick,
// verified on a grid before returning.
double escape_radius(const ExpandingMap& map, const CocycleU1& c, double kappa);
double escape_radius(const ExpandingMap& map, const CocycleSU2& c, double kappa);

// S_eps(x[, n]): momentum at the base point whose backward orbit under the
// word eps stays bounded; partial sums of -sum_j kick(x_{eps|j}) / E'_{eps|j}(x).
double backward_graph(const ExpandingMap& map, const CocycleU1& c, const Word& eps, double x);
double backward_graph(const ExpandingMap& map, const CocycleSU2& c, const Word& eps, double x,
                      const Eigen::Vector3d& n);

struct TrappedPoint {
    double x = 0.0;
    double xi = 0.0;
    Eigen::Vector3d n{0.0, 0.0, 0.0};
    std::uint64_t word = 0;  // base-k digits, first-applied letter least significant
};

struct TrappedCloud {
    GroupTag group = GroupTag::U1;
    int k = 2;
    int depth = 0;
    bool has_sphere = false;
    double accuracy = 0.0;  // (R + S_max) e_min^{-depth}
    double s_max = 0.0;
    double R = 0.0;
    std::vector<TrappedPoint> pts;
};

inline constexpr std::uint64_t trapped_budget = std::uint64_t(1) << 22;

// Word-graph sampling of the trapped set at resolution delta_target: depth
// n = ceil(log(2 (R+S_max)/delta)/log e_min) so every point sits within
// delta/2 of the limit set; full word enumeration when it fits the budget,
// otherwise a seeded uniform word sample per base point.
TrappedCloud sample_trapped_set(const ExpandingMap& map, const CocycleU1& c,
                                double delta_target, int x_grid,
                                std::uint64_t budget = trapped_budget,
                                std::uint64_t seed = 0x5EED,
                                bool force_enumerate = false);
TrappedCloud sample_trapped_set(const ExpandingMap& map, const CocycleSU2& c,
                                double delta_target, int x_grid, int sphere_grid,
                                std::uint64_t budget = trapped_budget,
                                std::uint64_t seed = 0x5EED,
                                bool force_enumerate = false);

// Near-uniform deterministic sphere sample (golden-angle spiral).
std::vector<Eigen::Vector3d> fibonacci_sphere(int count);

// Volume of the delta-neighborhood in the sup-product metric (periodic x,
// linear xi, chordal sphere): cell-counting at side <= delta/4. Ambient
// dimension 2 (U(1)) or 4 (SU(2)).
double box_volume(const TrappedCloud& cloud, double delta);

struct BoxCountResult {
    std::vector<double> deltas;
    std::vector<double> volumes;
    int ambient_d = 2;
    double codim = 0.0;     // least-squares slope of log Vol vs log delta
    double dim = 0.0;       // ambient_d - codim, clamped to [0, d]
    double residual = 0.0;  // RMS of the fit
};

// Pure fit step; needs >= 5 deltas spanning >= 1.5 decades.
BoxCountResult minkowski_dimension(const std::vector<double>& deltas,
                                   const std::vector<double>& volumes, int ambient_d);
BoxCountResult box_count(const TrappedCloud& cloud, const std::vector<double>& deltas);

// N(n): maximal number of length-n words whose canonical orbit never leaves
// |xi| <= R, over a grid of starting points (x uniform, xi in the [-R, R]
// slab, sphere points on a Fibonacci lattice). Pruned DFS; series gives all
// depths 1..n_max in one sweep.
std::vector<std::uint64_t> captive_series(const ExpandingMap& map, const CocycleU1& c,
                                          int n_max, int x_grid, int xi_grid, double R);
std::vector<std::uint64_t> captive_series(const ExpandingMap& map, const CocycleSU2& c,
                                          int n_max, int x_grid, int xi_grid, int sphere_grid,
                                          double R);
std::uint64_t captive_count(const ExpandingMap& map, const CocycleU1& c, int n,
                            int x_grid, int xi_grid, double R);
std::uint64_t captive_count(const ExpandingMap& map, const CocycleSU2& c, int n,
                            int x_grid, int xi_grid, int sphere_grid, double R);

// B(n) = (k/E_min)^n kappa^{2m} + N(n-1)/E_min^n and the induced radius
// estimate B(n)^{1/2n}; N_series holds N(1)..N(n_max), N(0) = 1.
struct GapBound {
    std::vector<double> bound;
    std::vector<double> radius;
};

GapBound gap_bound(int k, double E_min, double kappa, double m,
                   const std::vector<std::uint64_t>& N_series);

} // namespace skewspec
