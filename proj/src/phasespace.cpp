#include "skewspec/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "skewspec/parallel.hpp"
#include "skewspec/su2.hpp"

namespace skewspec {

PhasePoint canonical_map_u1(const ExpandingMap& map, const CocycleU1& c, int eps,
                            const PhasePoint& p) {
    if (p.has_sphere) throw ConfigError("U(1) canonical map got a sphere component");
    double y = map.inverse_branch(p.x, eps);
    PhasePoint q;
    q.x = y;
    q.xi = map.deriv(y) * p.xi + c.omega.deriv(y);
    return q;
}

PhasePoint canonical_inverse_u1(const ExpandingMap& map, const CocycleU1& c,
                                const PhasePoint& p) {
    if (p.has_sphere) throw ConfigError("U(1) canonical map got a sphere component");
    PhasePoint q;
    q.x = map.eval(p.x);
    q.xi = (p.xi - c.omega.deriv(p.x)) / map.deriv(p.x);
    return q;
}

double h_field(const CocycleSU2& c, double x, const Eigen::Vector3d& n) {
    if (std::abs(n.norm() - 1.0) > 1e-6) throw ConfigError("h_field needs a unit vector");
    return su2_data(c, x).u.dot(n);
}

PhasePoint canonical_map_su2(const ExpandingMap& map, const CocycleSU2& c, int eps,
                             const PhasePoint& p) {
    if (!p.has_sphere) throw ConfigError("SU(2) canonical map needs a sphere component");
    double y = map.inverse_branch(p.x, eps);
    SU2Data d = su2_data(c, y);
    PhasePoint q;
    q.x = y;
    q.xi = map.deriv(y) * p.xi + d.u.dot(p.n);  // kick uses the incoming n
    q.has_sphere = true;
    q.n = adjoint_rotation_of(d.tau) * p.n;
    return q;
}

PhasePoint canonical_inverse_su2(const ExpandingMap& map, const CocycleSU2& c,
                                 const PhasePoint& p) {
    if (!p.has_sphere) throw ConfigError("SU(2) canonical map needs a sphere component");
    SU2Data d = su2_data(c, p.x);
    Eigen::Vector3d n_old = adjoint_rotation_of(d.tau).transpose() * p.n;
    PhasePoint q;
    q.x = map.eval(p.x);
    q.xi = (p.xi - d.u.dot(n_old)) / map.deriv(p.x);
    q.has_sphere = true;
    q.n = n_old;
    return q;
}

double s_max_u1(const ExpandingMap& map, const CocycleU1& c) {
    return c.omega.grid_max_abs_deriv() / (map.e_min - 1.0);
}

double s_max_su2(const ExpandingMap& map, const CocycleSU2& c, int grid) {
    double m = 0.0;
    for (int i = 0; i < grid; ++i)
        m = std::max(m, su2_data(c, double(i) / grid).u.norm());
    return m / (map.e_min - 1.0);
}

double default_kappa(const ExpandingMap& map) {
    return std::min(1.5, 0.5 * (1.0 + map.e_min));
}

namespace {

// R = C/(e_min - kappa) guarantees E'(y)|xi| - |kick(y)| >= kappa|xi| once
// |xi| >= R; re-checked on a grid so a bad C estimate cannot pass silently.
double escape_radius_from_kick(const ExpandingMap& map, double kappa, double c_minus,
                               double c_plus, const std::function<double(double)>& kick_bound) {
    if (!(kappa > 1.0 && kappa < map.e_min))
        throw ConfigError("kappa must lie in (1, e_min)");
    double C = std::max(c_minus, c_plus);
    double R = C / (map.e_min - kappa);
    const int G = 2048;
    for (int i = 0; i < G; ++i) {
        double y = double(i) / G;
        double slack = map.deriv(y) * R - kick_bound(y) - kappa * R;
        if (slack < -1e-9 * (1.0 + R))
            throw NumericError("escape radius failed grid verification");
    }
    return R;
}

} // namespace

double escape_radius(const ExpandingMap& map, const CocycleU1& c, double kappa) {
    double lo = 0.0, hi = 0.0;
    const int G = 4096;
    for (int i = 0; i < G; ++i) {
        double d = c.omega.deriv(double(i) / G);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return escape_radius_from_kick(map, kappa, -lo, hi,
                                   [&](double y) { return std::abs(c.omega.deriv(y)); });
}

double escape_radius(const ExpandingMap& map, const CocycleSU2& c, double kappa) {
    // Extremes of H(x, n) = u(x).n over a product grid; for each x the scan
    // also includes the exact extremal directions n = +-u/|u|, so the bound
    // equals max_x |u(x)| on the x-grid and the verification pass (which uses
    // the same x-nodes) cannot exceed it.
    const int GX = 2048;
    std::vector<Eigen::Vector3d> sphere = fibonacci_sphere(512);
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < GX; ++i) {
        Eigen::Vector3d u = su2_data(c, double(i) / GX).u;
        for (const auto& n : sphere) {
            double h = u.dot(n);
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
        hi = std::max(hi, u.norm());
        lo = std::min(lo, -u.norm());
    }
    return escape_radius_from_kick(map, kappa, -lo, hi, [&](double y) {
        return su2_data(c, y).u.norm();
    });
}

double backward_graph(const ExpandingMap& map, const CocycleU1& c, const Word& eps, double x) {
    double y = x, P = 1.0, S = 0.0;
    for (int letter : eps.letters) {
        y = map.inverse_branch(y, letter);
        P *= map.deriv(y);
        S -= c.omega.deriv(y) / P;
    }
    return S;
}

double backward_graph(const ExpandingMap& map, const CocycleSU2& c, const Word& eps, double x,
                      const Eigen::Vector3d& n) {
    double y = x, P = 1.0, S = 0.0;
    Eigen::Vector3d m = n;
    for (int letter : eps.letters) {
        y = map.inverse_branch(y, letter);
        P *= map.deriv(y);
        SU2Data d = su2_data(c, y);
        S -= d.u.dot(m) / P;  // kick sees the sphere point before this transport
        m = adjoint_rotation_of(d.tau) * m;
    }
    return S;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
    if (count < 1) throw ConfigError("sphere sample needs at least one point");
    std::vector<Eigen::Vector3d> out;
    out.reserve(count);
    const double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / count;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * i;
        out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return out;
}

namespace {

int trapped_depth(double reach, double e_min, double delta) {
    if (reach <= 0.0) return 1;  // zero kick: the cloud is exactly the zero section
    return std::max(1, int(std::ceil(std::log(2.0 * reach / delta) / std::log(e_min))));
}

std::uint64_t words_per_base(int k, int depth, bool& fits_u64) {
    long double w = 1.0L;
    for (int i = 0; i < depth; ++i) w *= k;
    fits_u64 = w <= 9.2e18L;
    return fits_u64 ? std::uint64_t(w) : std::uint64_t(0);
}

// Shared driver: enumerate (DFS over shared prefixes) or subsample words for
// every base point, writing into a preallocated disjoint slice per base.
template <class State, class Step, class Emit>
void run_words(int k, int depth, std::uint64_t n_words, bool enumerate, std::uint64_t seed,
               std::uint64_t base_id, const State& start, const Step& step, const Emit& emit) {
    if (enumerate) {
        struct Rec {
            int k, depth;
            const Step& step;
            const Emit& emit;
            std::uint64_t slot = 0;
            void dfs(int d, const State& s, std::uint64_t widx, std::uint64_t place) {
                if (d == depth) {
                    emit(slot++, widx, s);
                    return;
                }
                for (int eps = 0; eps < k; ++eps)
                    dfs(d + 1, step(s, eps), widx + place * std::uint64_t(eps), place * k);
            }
        } rec{k, depth, step, emit};
        rec.dfs(0, start, 0, 1);
    } else {
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (base_id + 1)));
        std::uniform_int_distribution<int> letter(0, k - 1);
        for (std::uint64_t w = 0; w < n_words; ++w) {
            State s = start;
            std::uint64_t widx = 0, place = 1;
            for (int d = 0; d < depth; ++d) {
                int eps = letter(rng);
                s = step(s, eps);
                widx += place * std::uint64_t(eps);
                place *= k;
            }
            emit(w, widx, s);
        }
    }
}

} // namespace

TrappedCloud sample_trapped_set(const ExpandingMap& map, const CocycleU1& c,
                                double delta_target, int x_grid, std::uint64_t budget,
                                std::uint64_t seed, bool force_enumerate) {
    if (delta_target <= 0.0) throw ConfigError("delta_target must be positive");
    if (x_grid < 1) throw ConfigError("x_grid must be >= 1");
    TrappedCloud cloud;
    cloud.group = GroupTag::U1;
    cloud.k = map.k;
    cloud.has_sphere = false;
    cloud.s_max = s_max_u1(map, c);
    cloud.R = escape_radius(map, c, default_kappa(map));
    cloud.depth = trapped_depth(cloud.R + cloud.s_max, map.e_min, delta_target);
    cloud.accuracy = (cloud.R + cloud.s_max) * std::pow(map.e_min, -cloud.depth);

    bool fits = false;
    std::uint64_t all_words = words_per_base(map.k, cloud.depth, fits);
    if (!fits) throw ConfigError("trapped-set depth too large to encode words");
    bool enumerate = all_words * std::uint64_t(x_grid) <= budget;
    if (force_enumerate && !enumerate)
        throw ConfigError("enumeration forced but word count exceeds the point budget");
    std::uint64_t per_base = enumerate ? all_words : std::max<std::uint64_t>(1, budget / x_grid);
    cloud.pts.resize(std::size_t(per_base) * x_grid);

    struct St {
        double y, P, S;
    };
    parallel_for(x_grid, 1, [&](int bi) {
        double x0 = double(bi) / x_grid;
        TrappedPoint* slice = cloud.pts.data() + std::size_t(bi) * per_base;
        run_words<St>(
            map.k, cloud.depth, per_base, enumerate, seed, std::uint64_t(bi), St{x0, 1.0, 0.0},
            [&](const St& s, int eps) {
                St t;
                t.y = map.inverse_branch(s.y, eps);
                t.P = s.P * map.deriv(t.y);
                t.S = s.S - c.omega.deriv(t.y) / t.P;
                return t;
            },
            [&](std::uint64_t slot, std::uint64_t widx, const St& s) {
                slice[slot] = TrappedPoint{x0, s.S, {0.0, 0.0, 0.0}, widx};
            });
    });
    return cloud;
}

TrappedCloud sample_trapped_set(const ExpandingMap& map, const CocycleSU2& c,
                                double delta_target, int x_grid, int sphere_grid,
                                std::uint64_t budget, std::uint64_t seed,
                                bool force_enumerate) {
    if (delta_target <= 0.0) throw ConfigError("delta_target must be positive");
    if (x_grid < 1 || sphere_grid < 1) throw ConfigError("grids must be >= 1");
    TrappedCloud cloud;
    cloud.group = GroupTag::SU2;
    cloud.k = map.k;
    cloud.has_sphere = true;
    cloud.s_max = s_max_su2(map, c);
    cloud.R = escape_radius(map, c, default_kappa(map));
    cloud.depth = trapped_depth(cloud.R + cloud.s_max, map.e_min, delta_target);
    cloud.accuracy = (cloud.R + cloud.s_max) * std::pow(map.e_min, -cloud.depth);

    bool fits = false;
    std::uint64_t all_words = words_per_base(map.k, cloud.depth, fits);
    if (!fits) throw ConfigError("trapped-set depth too large to encode words");
    std::uint64_t bases = std::uint64_t(x_grid) * sphere_grid;
    bool enumerate = all_words * bases <= budget;
    if (force_enumerate && !enumerate)
        throw ConfigError("enumeration forced but word count exceeds the point budget");
    std::uint64_t per_base = enumerate ? all_words : std::max<std::uint64_t>(1, budget / bases);
    cloud.pts.resize(std::size_t(per_base) * bases);
    std::vector<Eigen::Vector3d> sphere = fibonacci_sphere(sphere_grid);

    struct St {
        double y, P, S;
        Eigen::Vector3d m;
    };
    parallel_for(int(bases), 1, [&](int bi) {
        double x0 = double(bi / sphere_grid) / x_grid;
        Eigen::Vector3d n0 = sphere[bi % sphere_grid];
        TrappedPoint* slice = cloud.pts.data() + std::size_t(bi) * per_base;
        run_words<St>(
            map.k, cloud.depth, per_base, enumerate, seed, std::uint64_t(bi),
            St{x0, 1.0, 0.0, n0},
            [&](const St& s, int eps) {
                St t;
                t.y = map.inverse_branch(s.y, eps);
                t.P = s.P * map.deriv(t.y);
                SU2Data d = su2_data(c, t.y);
                t.S = s.S - d.u.dot(s.m) / t.P;
                t.m = adjoint_rotation_of(d.tau) * s.m;
                return t;
            },
            [&](std::uint64_t slot, std::uint64_t widx, const St& s) {
                slice[slot] = TrappedPoint{x0, s.S, n0, widx};
            });
    });
    return cloud;
}

namespace {

struct Bitmap {
    std::vector<std::uint64_t> bits;
    std::uint64_t n = 0;
    explicit Bitmap(std::uint64_t count) : bits((count + 63) / 64, 0), n(count) {}
    void set(std::uint64_t i) { bits[i >> 6] |= std::uint64_t(1) << (i & 63); }
    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : bits) c += std::uint64_t(__builtin_popcountll(w));
        return c;
    }
};

// Index window of cells (side h, origin `lo`) whose centers lie within dist of
// v; closed interval, may be empty (first > last).
std::pair<long, long> window(double v, double dist, double lo, double h) {
    long first = long(std::ceil((v - dist - lo) / h - 0.5 - 1e-12));
    long last = long(std::floor((v + dist - lo) / h - 0.5 + 1e-12));
    return {first, last};
}

} // namespace

double box_volume(const TrappedCloud& cloud, double delta) {
    if (delta <= 0.0) throw ConfigError("delta must be positive");
    if (cloud.pts.empty()) return 0.0;
    if (cloud.accuracy > delta / 2.0 + 1e-15)
        throw NumericError("cloud under-resolved: accuracy " + std::to_string(cloud.accuracy) +
                           " exceeds delta/2 = " + std::to_string(delta / 2.0));
    const double h = delta / 4.0;
    const int nx = std::max(1, int(std::ceil(1.0 / h)));
    const double hx = 1.0 / nx;

    double xi_lo = std::numeric_limits<double>::infinity(), xi_hi = -xi_lo;
    for (const TrappedPoint& p : cloud.pts) {
        xi_lo = std::min(xi_lo, p.xi);
        xi_hi = std::max(xi_hi, p.xi);
    }
    const double lo = xi_lo - delta - 2.0 * h;
    const int ny = int(std::ceil((xi_hi + delta + 2.0 * h - lo) / h)) + 1;

    int nz = 1, nphi = 1;
    double hz = 2.0, hphi = two_pi;
    if (cloud.has_sphere) {
        nz = std::max(1, int(std::ceil(2.0 / h)));
        hz = 2.0 / nz;
        nphi = std::max(1, int(std::ceil(two_pi / h)));
        hphi = two_pi / nphi;
    }
    const std::uint64_t total =
        std::uint64_t(nx) * std::uint64_t(ny) * std::uint64_t(nz) * std::uint64_t(nphi);
    if (total > (std::uint64_t(1) << 31))
        throw NumericError("box grid too large at delta = " + std::to_string(delta));
    Bitmap marked(total);

    const double qh = h / 2.0;  // consecutive-duplicate skip resolution
    long pqx = std::numeric_limits<long>::min(), pqy = 0, pqz = 0, pqp = 0;
    for (const TrappedPoint& p : cloud.pts) {
        long qx = std::lround(p.x / qh), qy = std::lround(p.xi / qh);
        long qz = 0, qp = 0;
        double z = 0.0, phi = 0.0;
        if (cloud.has_sphere) {
            z = std::clamp(p.n.z(), -1.0, 1.0);
            phi = std::atan2(p.n.y(), p.n.x());
            if (phi < 0.0) phi += two_pi;
            qz = std::lround(z / qh);
            qp = std::lround(phi / qh);
        }
        if (qx == pqx && qy == pqy && qz == pqz && qp == pqp) continue;
        pqx = qx; pqy = qy; pqz = qz; pqp = qp;

        auto [x0, x1] = window(p.x, delta, 0.0, hx);
        if (x1 - x0 + 1 >= nx) { x0 = 0; x1 = nx - 1; }
        auto [y0, y1] = window(p.xi, delta, lo, h);
        y0 = std::max(y0, 0L);
        y1 = std::min(y1, long(ny) - 1);

        long z0 = 0, z1 = 0;
        if (cloud.has_sphere) {
            auto [a, b] = window(z, delta, -1.0, hz);
            z0 = std::max(a, 0L);
            z1 = std::min(b, long(nz) - 1);
        }
        for (long ix = x0; ix <= x1; ++ix) {
            long wx = ((ix % nx) + nx) % nx;
            for (long iy = y0; iy <= y1; ++iy) {
                if (!cloud.has_sphere) {
                    marked.set(std::uint64_t(wx) * ny + std::uint64_t(iy));
                    continue;
                }
                for (long iz = z0; iz <= z1; ++iz) {
                    double zc = -1.0 + (iz + 0.5) * hz;
                    // chordal ball: c.n >= 1 - delta^2/2 restricted to this band
                    double A = zc * z;
                    double B = std::sqrt(std::max(0.0, 1.0 - zc * zc)) *
                               std::sqrt(std::max(0.0, 1.0 - z * z));
                    long p0, p1;
                    double need = 1.0 - delta * delta / 2.0 - A;
                    if (B < 1e-12) {
                        if (need > 0.0) continue;
                        p0 = 0;
                        p1 = nphi - 1;
                    } else {
                        double t = need / B;
                        if (t > 1.0) continue;
                        double dphi = (t <= -1.0) ? pi : std::acos(t);
                        auto [a, b] = window(phi, dphi, 0.0, hphi);
                        p0 = a;
                        p1 = b;
                        if (p1 - p0 + 1 >= nphi) { p0 = 0; p1 = nphi - 1; }
                    }
                    std::uint64_t base =
                        ((std::uint64_t(wx) * ny + std::uint64_t(iy)) * nz + std::uint64_t(iz)) *
                        nphi;
                    for (long ip = p0; ip <= p1; ++ip) {
                        long wp = ((ip % nphi) + nphi) % nphi;
                        marked.set(base + std::uint64_t(wp));
                    }
                }
            }
        }
    }
    double cell = hx * h;
    if (cloud.has_sphere) cell *= hz * hphi;
    return double(marked.count()) * cell;
}

BoxCountResult minkowski_dimension(const std::vector<double>& deltas,
                                   const std::vector<double>& volumes, int ambient_d) {
    if (deltas.size() != volumes.size())
        throw ConfigError("delta and volume lists differ in length");
    if (deltas.size() < 5) throw ConfigError("dimension fit needs at least 5 deltas");
    auto [mn, mx] = std::minmax_element(deltas.begin(), deltas.end());
    if (*mn <= 0.0 || std::log10(*mx / *mn) < 1.5 - 1e-9)
        throw ConfigError("deltas must span at least 1.5 decades");
    BoxCountResult r;
    r.deltas = deltas;
    r.volumes = volumes;
    r.ambient_d = ambient_d;
    const int n = int(deltas.size());
    std::vector<double> t(n), v(n);
    for (int i = 0; i < n; ++i) {
        if (volumes[i] <= 0.0) throw NumericError("empty box count in dimension fit");
        t[i] = std::log(deltas[i]);
        v[i] = std::log(volumes[i]);
    }
    double tm = 0.0, vm = 0.0;
    for (int i = 0; i < n; ++i) { tm += t[i]; vm += v[i]; }
    tm /= n;
    vm /= n;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        num += (t[i] - tm) * (v[i] - vm);
        den += (t[i] - tm) * (t[i] - tm);
    }
    double slope = num / den;
    double icept = vm - slope * tm;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = v[i] - (icept + slope * t[i]);
        ss += e * e;
    }
    r.codim = slope;
    r.dim = std::clamp(double(ambient_d) - slope, 0.0, double(ambient_d));
    r.residual = std::sqrt(ss / n);
    return r;
}

BoxCountResult box_count(const TrappedCloud& cloud, const std::vector<double>& deltas) {
    std::vector<double> vols(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) vols[i] = box_volume(cloud, deltas[i]);
    return minkowski_dimension(deltas, vols, cloud.has_sphere ? 4 : 2);
}

namespace {

template <class State, class Step>
void captive_dfs(int k, int depth, const State& s, int d, const Step& step,
                 std::vector<std::uint64_t>& alive) {
    if (d == depth) return;
    for (int eps = 0; eps < k; ++eps) {
        State t = s;
        if (!step(t, eps)) continue;  // escaped: Lemma-style monotone pruning
        ++alive[d];
        captive_dfs(k, depth, t, d + 1, step, alive);
    }
}

std::vector<double> slab_grid(double R, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = (count == 1) ? 0.0 : -R + 2.0 * R * i / (count - 1);
    return v;
}

} // namespace

std::vector<std::uint64_t> captive_series(const ExpandingMap& map, const CocycleU1& c,
                                          int n_max, int x_grid, int xi_grid, double R) {
    if (n_max < 1 || n_max > 30) throw ConfigError("captive depth must be in 1..30");
    if (R < 0.0) throw ConfigError("R must be >= 0");
    std::vector<std::uint64_t> best(n_max, 0);
    std::vector<double> xis = slab_grid(R, xi_grid);
    struct St {
        double y, xi;
    };
    for (int ix = 0; ix < x_grid; ++ix) {
        for (double xi0 : xis) {
            std::vector<std::uint64_t> alive(n_max, 0);
            St s{double(ix) / x_grid, xi0};
            captive_dfs(
                map.k, n_max, s, 0,
                [&](St& t, int eps) {
                    t.y = map.inverse_branch(t.y, eps);
                    t.xi = map.deriv(t.y) * t.xi + c.omega.deriv(t.y);
                    return std::abs(t.xi) <= R + 1e-12;
                },
                alive);
            for (int n = 0; n < n_max; ++n) best[n] = std::max(best[n], alive[n]);
        }
    }
    return best;
}

std::vector<std::uint64_t> captive_series(const ExpandingMap& map, const CocycleSU2& c,
                                          int n_max, int x_grid, int xi_grid, int sphere_grid,
                                          double R) {
    if (n_max < 1 || n_max > 30) throw ConfigError("captive depth must be in 1..30");
    if (R < 0.0) throw ConfigError("R must be >= 0");
    std::vector<std::uint64_t> best(n_max, 0);
    std::vector<double> xis = slab_grid(R, xi_grid);
    std::vector<Eigen::Vector3d> sphere = fibonacci_sphere(sphere_grid);
    struct St {
        double y, xi;
        Eigen::Vector3d m;
    };
    for (int ix = 0; ix < x_grid; ++ix) {
        for (double xi0 : xis) {
            for (const Eigen::Vector3d& n0 : sphere) {
                std::vector<std::uint64_t> alive(n_max, 0);
                St s{double(ix) / x_grid, xi0, n0};
                captive_dfs(
                    map.k, n_max, s, 0,
                    [&](St& t, int eps) {
                        t.y = map.inverse_branch(t.y, eps);
                        SU2Data d = su2_data(c, t.y);
                        t.xi = map.deriv(t.y) * t.xi + d.u.dot(t.m);
                        t.m = adjoint_rotation_of(d.tau) * t.m;
                        return std::abs(t.xi) <= R + 1e-12;
                    },
                    alive);
                for (int n = 0; n < n_max; ++n) best[n] = std::max(best[n], alive[n]);
            }
        }
    }
    return best;
}

std::uint64_t captive_count(const ExpandingMap& map, const CocycleU1& c, int n,
                            int x_grid, int xi_grid, double R) {
    return captive_series(map, c, n, x_grid, xi_grid, R).back();
}

std::uint64_t captive_count(const ExpandingMap& map, const CocycleSU2& c, int n,
                            int x_grid, int xi_grid, int sphere_grid, double R) {
    return captive_series(map, c, n, x_grid, xi_grid, sphere_grid, R).back();
}

GapBound gap_bound(int k, double E_min, double kappa, double m,
                   const std::vector<std::uint64_t>& N_series) {
    if (!(kappa > 1.0)) throw ConfigError("kappa must exceed 1");
    if (!(m < 0.0)) throw ConfigError("escape order m must be negative");
    GapBound g;
    g.bound.reserve(N_series.size());
    g.radius.reserve(N_series.size());
    for (std::size_t i = 0; i < N_series.size(); ++i) {
        int n = int(i) + 1;
        double n_prev = (n == 1) ? 1.0 : double(N_series[i - 1]);
        double B = std::pow(double(k) / E_min, n) * std::pow(kappa, 2.0 * m) +
                   n_prev / std::pow(E_min, n);
        g.bound.push_back(B);
        g.radius.push_back(std::pow(B, 1.0 / (2.0 * n)));
    }
    return g;
}

} // namespace skewspec
