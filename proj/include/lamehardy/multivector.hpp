#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lamehardy/errors.hpp"
#include "lamehardy/rational.hpp"

namespace lamehardy {

// Dense element of the real Clifford algebra R_{0,m}, m <= 6.
//
// Blade encoding: bit i-1 of the basis index set generator e_i, so index 0
// is the scalar unit, index (1<<(i-1)) is e_i, and a general index is the
// canonically ordered product of its set bits.  Signature: e_i e_j + e_j e_i
// = -2 delta_ij, i.e. e_i^2 = -1.
//
// Storage is a fixed 64-slot array of which only the first 2^m entries are
// live; copy/compare/arithmetic never touch the dead tail, which keeps the
// value type allocation-free in quadrature loops.

inline constexpr int kMaxM = 6;
inline constexpr unsigned kMaxBlades = 1u << kMaxM;

namespace detail {

// Swaps needed to merge the generator lists of two canonical blades.
constexpr int reorder_swaps(unsigned a, unsigned b) {
    int swaps = 0;
    a >>= 1;
    while (a != 0) {
        swaps += std::popcount(a & b);
        a >>= 1;
    }
    return swaps;
}

// sign(a, b) such that e_a e_b = sign * e_{a XOR b}; each shared generator
// contributes e_i^2 = -1 on top of the reordering parity.
constexpr int blade_sign(unsigned a, unsigned b) {
    int s = (reorder_swaps(a, b) % 2 == 0) ? 1 : -1;
    if (std::popcount(a & b) % 2 != 0) s = -s;
    return s;
}

inline constexpr auto kBladeSign = [] {
    std::array<std::array<std::int8_t, kMaxBlades>, kMaxBlades> t{};
    for (unsigned a = 0; a < kMaxBlades; ++a)
        for (unsigned b = 0; b < kMaxBlades; ++b)
            t[a][b] = static_cast<std::int8_t>(blade_sign(a, b));
    return t;
}();

// Conjugation is the anti-involution with conj(e_i) = -e_i; on a grade-k
// blade it acts as (-1)^{k(k+1)/2}.
constexpr int conjugation_sign(unsigned mask) {
    int k = std::popcount(mask);
    return (k * (k + 1) / 2) % 2 == 0 ? 1 : -1;
}

inline void check_m(int m) {
    if (m < 1 || m > kMaxM)
        throw std::invalid_argument("multivector: m must be in [1, 6]");
}

} // namespace detail

struct BladeProduct {
    int sign;
    unsigned mask;
};

inline BladeProduct blade_product(unsigned a, unsigned b, int m) {
    detail::check_m(m);
    const unsigned n = 1u << m;
    if (a >= n || b >= n)
        throw std::invalid_argument("blade_product: blade index out of range for m");
    return {detail::kBladeSign[a][b], a ^ b};
}

template <typename Scalar>
class BasicMultivector {
  public:
    BasicMultivector() : m_(0), n_(0) {}

    explicit BasicMultivector(int m) : m_(m) {
        detail::check_m(m);
        n_ = 1u << m;
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = Scalar{};
    }

    BasicMultivector(const BasicMultivector& o) : m_(o.m_), n_(o.n_) {
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = o.c_[i];
    }
    BasicMultivector& operator=(const BasicMultivector& o) {
        m_ = o.m_;
        n_ = o.n_;
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = o.c_[i];
        return *this;
    }

    int m() const { return m_; }
    unsigned size() const { return n_ <= kMaxBlades ? n_ : kMaxBlades; }

    Scalar& operator[](unsigned mask) {
        if (mask >= size()) throw std::out_of_range("multivector: blade index out of range");
        return c_[mask];
    }
    const Scalar& operator[](unsigned mask) const {
        if (mask >= size()) throw std::out_of_range("multivector: blade index out of range");
        return c_[mask];
    }
    // Unchecked access for inner loops.
    Scalar& coeff(unsigned mask) { return c_[mask]; }
    const Scalar& coeff(unsigned mask) const { return c_[mask]; }

    Scalar scalar_part() const { return c_[0]; }

    static BasicMultivector scalar(int m, const Scalar& s) {
        BasicMultivector r(m);
        r.c_[0] = s;
        return r;
    }
    static BasicMultivector basis(int m, int i) {
        detail::check_m(m);
        if (i < 1 || i > m) throw std::invalid_argument("multivector: generator index out of range");
        BasicMultivector r(m);
        r.c_[1u << (i - 1)] = Scalar{1};
        return r;
    }

    friend BasicMultivector operator+(const BasicMultivector& a, const BasicMultivector& b) {
        a.check_same(b);
        BasicMultivector r(a.m_);
        for (unsigned i = 0, n = a.size(); i < n; ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend BasicMultivector operator-(const BasicMultivector& a, const BasicMultivector& b) {
        a.check_same(b);
        BasicMultivector r(a.m_);
        for (unsigned i = 0, n = a.size(); i < n; ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    BasicMultivector operator-() const {
        BasicMultivector r(m_);
        for (unsigned i = 0, n = size(); i < n; ++i) r.c_[i] = -c_[i];
        return r;
    }
    BasicMultivector& operator+=(const BasicMultivector& b) {
        check_same(b);
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = c_[i] + b.c_[i];
        return *this;
    }
    BasicMultivector& operator-=(const BasicMultivector& b) {
        check_same(b);
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = c_[i] - b.c_[i];
        return *this;
    }

    friend BasicMultivector operator*(const Scalar& s, const BasicMultivector& a) {
        BasicMultivector r(a.m_);
        for (unsigned i = 0, n = a.size(); i < n; ++i) r.c_[i] = s * a.c_[i];
        return r;
    }
    friend BasicMultivector operator*(const BasicMultivector& a, const Scalar& s) { return s * a; }
    BasicMultivector& operator*=(const Scalar& s) {
        for (unsigned i = 0, n = size(); i < n; ++i) c_[i] = c_[i] * s;
        return *this;
    }

    // Geometric product.  Result coefficient on e_{i^j} picks up the table
    // sign; zero factors are skipped so sparse operands stay cheap.
    friend BasicMultivector operator*(const BasicMultivector& a, const BasicMultivector& b) {
        a.check_same(b);
        BasicMultivector r(a.m_);
        for (unsigned i = 0, n = a.size(); i < n; ++i) {
            if (a.c_[i] == Scalar{}) continue;
            for (unsigned j = 0, nb = b.size(); j < nb; ++j) {
                if (b.c_[j] == Scalar{}) continue;
                const Scalar p = a.c_[i] * b.c_[j];
                if (detail::kBladeSign[i][j] > 0)
                    r.c_[i ^ j] = r.c_[i ^ j] + p;
                else
                    r.c_[i ^ j] = r.c_[i ^ j] - p;
            }
        }
        return r;
    }

    BasicMultivector conjugate() const {
        BasicMultivector r(m_);
        for (unsigned i = 0, n = size(); i < n; ++i)
            r.c_[i] = detail::conjugation_sign(i) > 0 ? c_[i] : -c_[i];
        return r;
    }

    BasicMultivector grade_part(int k) const {
        BasicMultivector r(m_);
        for (unsigned i = 0, n = size(); i < n; ++i)
            if (std::popcount(i) == k) r.c_[i] = c_[i];
        return r;
    }

    bool is_grade1() const {
        for (unsigned i = 0, n = size(); i < n; ++i)
            if (std::popcount(i) != 1 && !(c_[i] == Scalar{})) return false;
        return true;
    }

    friend bool operator==(const BasicMultivector& a, const BasicMultivector& b) {
        if (a.m_ != b.m_) return false;
        for (unsigned i = 0, n = a.size(); i < n; ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const BasicMultivector& a, const BasicMultivector& b) { return !(a == b); }

    bool is_zero() const {
        for (unsigned i = 0, n = size(); i < n; ++i)
            if (!(c_[i] == Scalar{})) return false;
        return true;
    }

  private:
    int m_;
    unsigned n_;
    std::array<Scalar, kMaxBlades> c_;

    void check_same(const BasicMultivector& b) const {
        if (m_ != b.m_) throw std::invalid_argument("multivector: mixed dimensions m");
    }
};

using Multivector = BasicMultivector<double>;
using ExactMultivector = BasicMultivector<Rational>;

// Sc[a conj(a)] collapses to the Euclidean coefficient norm in this
// signature; the property suite verifies the two routes agree.
inline double clifford_norm(const Multivector& a) {
    double s = 0.0;
    for (unsigned i = 0; i < a.size(); ++i) s += a.coeff(i) * a.coeff(i);
    return std::sqrt(s);
}

inline double max_abs_coeff(const Multivector& a) {
    double s = 0.0;
    for (unsigned i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a.coeff(i)));
    return s;
}

// Embed an m-tuple as the grade-1 element sum_i x_i e_i.
template <typename Scalar>
BasicMultivector<Scalar> embed_vector(std::span<const Scalar> x, int m) {
    detail::check_m(m);
    if ((int)x.size() < m) throw std::invalid_argument("embed_vector: tuple shorter than m");
    BasicMultivector<Scalar> r(m);
    for (int i = 0; i < m; ++i) r.coeff(1u << i) = x[i];
    return r;
}

inline Multivector embed_vector(std::span<const double> x, int m) {
    return embed_vector<double>(x, m);
}

// u^{-1} = -u / |u|^2 for nonzero grade-1 u (since u u = -|u|^2).
template <typename Scalar>
BasicMultivector<Scalar> invert_vector(const BasicMultivector<Scalar>& u) {
    if (!u.is_grade1()) throw std::invalid_argument("invert_vector: not grade-1");
    Scalar norm2{};
    for (int i = 0; i < u.m(); ++i) {
        const Scalar& c = u.coeff(1u << i);
        norm2 = norm2 + c * c;
    }
    if (norm2 == Scalar{}) throw singularity_error("invert_vector: zero vector");
    BasicMultivector<Scalar> r(u.m());
    for (int i = 0; i < u.m(); ++i) r.coeff(1u << i) = -u.coeff(1u << i) / norm2;
    return r;
}

// sum_i e_i X e_i.  Diagonal in the blade basis: each blade is scaled by an
// integer depending only on its grade pattern, precomputed per call.
template <typename Scalar>
BasicMultivector<Scalar> basis_sandwich(const BasicMultivector<Scalar>& x) {
    const int m = x.m();
    BasicMultivector<Scalar> r(m);
    for (unsigned mask = 0; mask < x.size(); ++mask) {
        if (x.coeff(mask) == Scalar{}) continue;
        int total = 0;
        for (int i = 0; i < m; ++i) {
            const unsigned ei = 1u << i;
            // e_i e_mask e_i = s1*s2 * e_mask with the two table lookups below.
            const int s1 = detail::kBladeSign[ei][mask];
            const int s2 = detail::kBladeSign[ei ^ mask][ei];
            total += s1 * s2;
        }
        if (total != 0) r.coeff(mask) = x.coeff(mask) * Scalar(total);
        else r.coeff(mask) = Scalar{};
    }
    return r;
}

} // namespace lamehardy
