#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lamehardy {

// Exact rational scalar for the symbolic polynomial oracle.  int64 storage
// with __int128 intermediates; any overflow throws instead of wrapping, so
// an "exact" identity check can never pass by accident.
class Rational {
  public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    bool is_zero() const { return num_ == 0; }
    double to_double() const { return (double)num_ / (double)den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    long long num_ = 0;
    long long den_ = 1;

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        const __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Best small-denominator approximation by continued fractions.  Refuses
// values that have no short decimal-style representation, because feeding a
// 52-bit dyadic into the exact pipeline would only move the failure into an
// overflow deep inside a polynomial product.
inline Rational approximate_rational(double v, long long max_den = 1000000) {
    if (!std::isfinite(v)) throw std::invalid_argument("approximate_rational: non-finite input");
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        if (std::abs(fl) > 9e17) break;
        const long long a = (long long)fl;
        const __int128 p2 = (__int128)a * p1 + p0;
        const __int128 q2 = (__int128)a * q1 + q0;
        if (q2 > max_den || p2 > INT64_MAX || p2 < INT64_MIN) break;
        p0 = p1;
        q0 = q1;
        p1 = (long long)p2;
        q1 = (long long)q2;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (q1 <= 0) throw std::invalid_argument("approximate_rational: no usable convergent");
    const Rational r(p1, q1);
    if (std::abs(r.to_double() - v) > 1e-9 * std::max(1.0, std::abs(v)))
        throw std::invalid_argument(
            "approximate_rational: value needs a denominator beyond the exact range");
    return r;
}

} // namespace lamehardy
