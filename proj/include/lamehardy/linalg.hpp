#pragma once

#include <cmath>
#include <vector>

#include "lamehardy/errors.hpp"

namespace lamehardy::detail {

// Row-major dense solve with partial pivoting; a is overwritten.  Sized for
// the small systems here (at most 64 unknowns).
inline void solve_gepp(std::vector<double>& a, std::vector<double>& rhs, int n) {
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int best = k;
        double mag = std::abs(a[piv[k] * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[piv[i] * n + k]);
            if (v > mag) {
                mag = v;
                best = i;
            }
        }
        if (mag < 1e-13) throw conditioning_error("solve_gepp: pivot collapsed");
        std::swap(piv[k], piv[best]);
        const double d = a[piv[k] * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = a[piv[i] * n + k] / d;
            if (f == 0.0) continue;
            a[piv[i] * n + k] = 0.0;
            for (int j = k + 1; j < n; ++j) a[piv[i] * n + j] -= f * a[piv[k] * n + j];
            rhs[piv[i]] -= f * rhs[piv[k]];
        }
    }
    std::vector<double> x(n);
    for (int k = n - 1; k >= 0; --k) {
        double s = rhs[piv[k]];
        for (int j = k + 1; j < n; ++j) s -= a[piv[k] * n + j] * x[j];
        x[k] = s / a[piv[k] * n + k];
    }
    rhs = std::move(x);
}

// Least squares via normal equations; design is rows x cols row-major with
// rows >= cols, rhs has one column per independent right-hand side.
// Returns cols x nrhs coefficients (column-major per rhs).
inline std::vector<double> solve_least_squares(const std::vector<double>& design,
                                               const std::vector<double>& rhs,
                                               int rows, int cols, int nrhs) {
    if (rows < cols) throw conditioning_error("solve_least_squares: underdetermined");
    std::vector<double> ata(cols * cols, 0.0), atb(cols * nrhs, 0.0);
    for (int r = 0; r < rows; ++r) {
        for (int i = 0; i < cols; ++i) {
            const double di = design[r * cols + i];
            if (di == 0.0) continue;
            for (int j = i; j < cols; ++j) ata[i * cols + j] += di * design[r * cols + j];
            for (int k = 0; k < nrhs; ++k) atb[i * nrhs + k] += di * rhs[r * nrhs + k];
        }
    }
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < i; ++j) ata[i * cols + j] = ata[j * cols + i];
    // Cholesky with a conditioning guard
    std::vector<double> l(cols * cols, 0.0);
    for (int i = 0; i < cols; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = ata[i * cols + j];
            for (int k = 0; k < j; ++k) s -= l[i * cols + k] * l[j * cols + k];
            if (i == j) {
                if (s <= 1e-14 * (1.0 + std::abs(ata[i * cols + i])))
                    throw conditioning_error("solve_least_squares: normal matrix not SPD");
                l[i * cols + i] = std::sqrt(s);
            } else {
                l[i * cols + j] = s / l[j * cols + j];
            }
        }
    }
    std::vector<double> out(cols * nrhs, 0.0);
    std::vector<double> y(cols);
    for (int k = 0; k < nrhs; ++k) {
        for (int i = 0; i < cols; ++i) {
            double s = atb[i * nrhs + k];
            for (int j = 0; j < i; ++j) s -= l[i * cols + j] * y[j];
            y[i] = s / l[i * cols + i];
        }
        for (int i = cols - 1; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < cols; ++j) s -= l[j * cols + i] * out[j * nrhs + k];
            out[i * nrhs + k] = s / l[i * cols + i];
        }
    }
    return out;
}

} // namespace lamehardy::detail
