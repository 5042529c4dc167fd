#pragma once

#include <cstddef>
#include <vector>

#include "skewspec/types.hpp"

namespace skewspec {

// Real trigonometric polynomial on the circle,
//   f(x) = c0 + sum_m ( cosc[m-1] cos(2 pi m x) + sinc[m-1] sin(2 pi m x) ),
// with the derivative taken analytically from the coefficients.
struct FourierSeries {
    double constant = 0.0;
    std::vector<double> cosc;
    std::vector<double> sinc;

    double operator()(double x) const;
    double deriv(double x) const;

    // |c0| + sum(|a_m| + |b_m|): cheap upper bound for the sup norm.
    double coeff_bound() const;
    double grid_max_abs(int grid = 4096) const;
    double grid_max_abs_deriv(int grid = 4096) const;
    int max_frequency() const;
    bool is_zero() const;

    static FourierSeries zero() { return {}; }
    static FourierSeries constant_value(double c) {
        FourierSeries f;
        f.constant = c;
        return f;
    }
    static FourierSeries cosine(double amplitude = 1.0, int frequency = 1);
};

} // namespace skewspec
