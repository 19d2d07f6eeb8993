#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "lamehardy/multivector.hpp"

namespace lamehardy {

// Fundamental solutions used by every integral operator.
//
//   sigma_m = 2 pi^{m/2} / Gamma(m/2)          (unit sphere area in R^m)
//   E1(x)   = 1 / ((m-2) sigma_m |x|^{m-2})     scalar, harmonic off 0
//   E0(x)   = -(1/sigma_m) x / |x|^m            grade-1, two-sided monogenic
//
// and E0 = sum_j e_j d_j E1 in the displacement argument.  The *_grad
// variants are the z-derivatives E^j(y - z) := d/dz_j E(y - z), which flip
// sign relative to the derivative in the displacement argument:
//
//   E1^j(x) =  (1/sigma_m) x_j / |x|^m
//   E0^j(x) =  (1/sigma_m) |x|^{-m} (e_j - m x_j x / |x|^2)

inline double sigma_m(int m) {
    detail::check_m(m);
    static const std::array<double, kMaxM + 1> table = [] {
        std::array<double, kMaxM + 1> t{};
        for (int k = 1; k <= kMaxM; ++k)
            t[k] = 2.0 * std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k);
        return t;
    }();
    return table[m];
}

namespace detail {

// r^k for the small positive exponents used here; much cheaper than the
// general pow on the hot paths.
inline double pow_int(double r, int k) {
    double p = 1.0;
    while (k-- > 0) p *= r;
    return p;
}

inline double norm_or_throw(std::span<const double> x, int m) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += x[i] * x[i];
    if (s == 0.0) throw singularity_error("kernel evaluated at the origin");
    return std::sqrt(s);
}

inline void check_kernel_args(std::span<const double> x, int m, int min_m = 3) {
    if (m < min_m || m > kMaxM) throw std::invalid_argument("kernel: m out of range");
    if ((int)x.size() < m) throw std::invalid_argument("kernel: point shorter than m");
}

} // namespace detail

inline double eval_E1(std::span<const double> x, int m) {
    detail::check_kernel_args(x, m);
    const double r = detail::norm_or_throw(x, m);
    return 1.0 / ((m - 2) * sigma_m(m) * detail::pow_int(r, m - 2));
}

inline Multivector eval_E0(std::span<const double> x, int m) {
    detail::check_kernel_args(x, m);
    const double r = detail::norm_or_throw(x, m);
    const double scale = -1.0 / (sigma_m(m) * detail::pow_int(r, m));
    Multivector v(m);
    for (int i = 0; i < m; ++i) v.coeff(1u << i) = scale * x[i];
    return v;
}

inline double eval_E1_grad(std::span<const double> x, int m, int j) {
    detail::check_kernel_args(x, m);
    if (j < 1 || j > m) throw std::invalid_argument("kernel: axis out of range");
    const double r = detail::norm_or_throw(x, m);
    return x[j - 1] / (sigma_m(m) * detail::pow_int(r, m));
}

inline Multivector eval_E0_grad(std::span<const double> x, int m, int j) {
    detail::check_kernel_args(x, m);
    if (j < 1 || j > m) throw std::invalid_argument("kernel: axis out of range");
    const double r = detail::norm_or_throw(x, m);
    const double base = 1.0 / (sigma_m(m) * detail::pow_int(r, m));
    const double lead = -m * base * x[j - 1] / (r * r);
    Multivector v(m);
    for (int i = 0; i < m; ++i) v.coeff(1u << i) = lead * x[i];
    v.coeff(1u << (j - 1)) += base;
    return v;
}

} // namespace lamehardy
