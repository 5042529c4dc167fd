#include "skewspec/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace skewspec {

double FourierSeries::operator()(double x) const {
    double v = constant;
    for (std::size_t m = 0; m < cosc.size(); ++m)
        if (cosc[m] != 0.0) v += cosc[m] * std::cos(two_pi * double(m + 1) * x);
    for (std::size_t m = 0; m < sinc.size(); ++m)
        if (sinc[m] != 0.0) v += sinc[m] * std::sin(two_pi * double(m + 1) * x);
    return v;
}

double FourierSeries::deriv(double x) const {
    double v = 0.0;
    for (std::size_t m = 0; m < cosc.size(); ++m)
        if (cosc[m] != 0.0) v -= cosc[m] * two_pi * double(m + 1) * std::sin(two_pi * double(m + 1) * x);
    for (std::size_t m = 0; m < sinc.size(); ++m)
        if (sinc[m] != 0.0) v += sinc[m] * two_pi * double(m + 1) * std::cos(two_pi * double(m + 1) * x);
    return v;
}

double FourierSeries::coeff_bound() const {
    double b = std::abs(constant);
    for (double c : cosc) b += std::abs(c);
    for (double c : sinc) b += std::abs(c);
    return b;
}

double FourierSeries::grid_max_abs(int grid) const {
    double m = 0.0;
    for (int i = 0; i < grid; ++i) m = std::max(m, std::abs((*this)(double(i) / grid)));
    return m;
}

double FourierSeries::grid_max_abs_deriv(int grid) const {
    double m = 0.0;
    for (int i = 0; i < grid; ++i) m = std::max(m, std::abs(deriv(double(i) / grid)));
    return m;
}

int FourierSeries::max_frequency() const {
    int mf = 0;
    for (std::size_t m = 0; m < cosc.size(); ++m)
        if (cosc[m] != 0.0) mf = std::max(mf, int(m + 1));
    for (std::size_t m = 0; m < sinc.size(); ++m)
        if (sinc[m] != 0.0) mf = std::max(mf, int(m + 1));
    return mf;
}

bool FourierSeries::is_zero() const {
    if (constant != 0.0) return false;
    for (double c : cosc)
        if (c != 0.0) return false;
    for (double c : sinc)
        if (c != 0.0) return false;
    return true;
}

FourierSeries FourierSeries::cosine(double amplitude, int frequency) {
    FourierSeries f;
    f.cosc.assign(std::size_t(frequency), 0.0);
    f.cosc[std::size_t(frequency - 1)] = amplitude;
    return f;
}

} // namespace skewspec
