#pragma once

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>

#include "lamehardy/lame_params.hpp"
#include "lamehardy/multivector.hpp"
#include "lamehardy/rng.hpp"

namespace lamehardy {

// Multivector-valued polynomial field over exact rationals: a map from
// monomial exponents to coefficients in R_{0,m}.  Everything in this file is
// exact; rounding happens only in evaluate(), at the very end.

using Exponent = std::array<int, kMaxM>;

class PolyField {
  public:
    explicit PolyField(int m) : m_(m) { detail::check_m(m); }

    int m() const { return m_; }
    const std::map<Exponent, ExactMultivector>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int j = 0; j < m_; ++j) s += e[j];
            d = std::max(d, s);
        }
        return d;
    }

    void add_term(const Exponent& exp, const ExactMultivector& coeff) {
        if (coeff.m() != m_) throw std::invalid_argument("PolyField: coefficient dimension mismatch");
        for (int j = 0; j < kMaxM; ++j)
            if (exp[j] < 0 || (j >= m_ && exp[j] != 0))
                throw std::invalid_argument("PolyField: bad monomial exponent");
        if (coeff.is_zero()) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend PolyField operator+(const PolyField& a, const PolyField& b) {
        a.check_same(b);
        PolyField r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend PolyField operator-(const PolyField& a, const PolyField& b) {
        a.check_same(b);
        PolyField r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    PolyField operator-() const {
        PolyField r(m_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend PolyField operator*(const Rational& s, const PolyField& a) {
        PolyField r(a.m_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    // Left/right multiplication by a constant multivector; order matters.
    PolyField mul_left(const ExactMultivector& k) const {
        PolyField r(m_);
        for (const auto& [e, c] : terms_) r.add_term(e, k * c);
        return r;
    }
    PolyField mul_right(const ExactMultivector& k) const {
        PolyField r(m_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * k);
        return r;
    }

    friend PolyField operator*(const PolyField& a, const PolyField& b) {
        a.check_same(b);
        PolyField r(a.m_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e{};
                for (int j = 0; j < kMaxM; ++j) e[j] = ea[j] + eb[j];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    // d/dx_j, 1-based axis.
    PolyField partial(int j) const {
        if (j < 1 || j > m_) throw std::invalid_argument("PolyField: axis out of range");
        PolyField r(m_);
        for (const auto& [e, c] : terms_) {
            if (e[j - 1] == 0) continue;
            Exponent d = e;
            d[j - 1] -= 1;
            r.add_term(d, Rational(e[j - 1]) * c);
        }
        return r;
    }

    // Numeric evaluation: exact rational coefficients, double powers of the
    // point, summed in deterministic map order.
    Multivector evaluate(std::span<const double> x) const {
        if ((int)x.size() < m_) throw std::invalid_argument("PolyField: point shorter than m");
        Multivector r(m_);
        for (const auto& [e, c] : terms_) {
            double mono = 1.0;
            for (int j = 0; j < m_; ++j)
                for (int k = 0; k < e[j]; ++k) mono *= x[j];
            for (unsigned i = 0; i < r.size(); ++i)
                r.coeff(i) += c.coeff(i).to_double() * mono;
        }
        return r;
    }

    // Fully exact evaluation at a rational point (oracle-side checks).
    ExactMultivector evaluate_exact(std::span<const Rational> x) const {
        if ((int)x.size() < m_) throw std::invalid_argument("PolyField: point shorter than m");
        ExactMultivector r(m_);
        for (const auto& [e, c] : terms_) {
            Rational mono(1);
            for (int j = 0; j < m_; ++j)
                for (int k = 0; k < e[j]; ++k) mono *= x[j];
            r += c * mono;
        }
        return r;
    }

    static PolyField monomial(int m, const Exponent& exp, const ExactMultivector& coeff) {
        PolyField r(m);
        r.add_term(exp, coeff);
        return r;
    }
    static PolyField coordinate(int m, int j) {
        Exponent e{};
        e[j - 1] = 1;
        return monomial(m, e, ExactMultivector::scalar(m, Rational(1)));
    }

  private:
    int m_;
    std::map<Exponent, ExactMultivector> terms_;

    void check_same(const PolyField& b) const {
        if (m_ != b.m_) throw std::invalid_argument("PolyField: mixed dimensions m");
    }
};

// Left and right Dirac derivatives: D f = sum_j e_j d_j f, f D = sum_j (d_j f) e_j.
inline PolyField dirac_left(const PolyField& f) {
    PolyField r(f.m());
    for (int j = 1; j <= f.m(); ++j)
        r = r + f.partial(j).mul_left(ExactMultivector::basis(f.m(), j));
    return r;
}
inline PolyField dirac_right(const PolyField& f) {
    PolyField r(f.m());
    for (int j = 1; j <= f.m(); ++j)
        r = r + f.partial(j).mul_right(ExactMultivector::basis(f.m(), j));
    return r;
}

enum class FieldOperator { D, M, Mbar, L, DD };

// M f = a (f D) + b (D f);  Mbar f = a (D f) + b (f D);
// L f = a D f D + b D D f;  and L factors through M / Mbar exactly.
inline PolyField apply_operator(const PolyField& f, FieldOperator which, const ExactLameParams& p) {
    switch (which) {
        case FieldOperator::D: return dirac_left(f);
        case FieldOperator::M: return p.a() * dirac_right(f) + p.b() * dirac_left(f);
        case FieldOperator::Mbar: return p.a() * dirac_left(f) + p.b() * dirac_right(f);
        case FieldOperator::L:
            return p.a() * dirac_left(dirac_right(f)) + p.b() * dirac_left(dirac_left(f));
        case FieldOperator::DD: return dirac_left(dirac_left(f));
    }
    throw std::invalid_argument("apply_operator: unknown operator");
}

namespace detail {

// Componentwise Laplacian.
inline PolyField laplacian(const PolyField& f) {
    PolyField r(f.m());
    for (int j = 1; j <= f.m(); ++j) r = r + f.partial(j).partial(j);
    return r;
}

// For grade-1 u: div u as a scalar field, then its gradient as a grade-1 field.
inline PolyField grad_div(const PolyField& u) {
    const int m = u.m();
    PolyField div(m);
    for (int j = 1; j <= m; ++j) {
        PolyField dj = u.partial(j);
        for (const auto& [e, c] : dj.terms()) {
            ExactMultivector s(m);
            s.coeff(0) = c.coeff(1u << (j - 1));
            PolyField term = PolyField::monomial(m, e, s);
            div = div + term;
        }
    }
    PolyField r(m);
    for (int k = 1; k <= m; ++k)
        r = r + div.partial(k).mul_left(ExactMultivector::basis(m, k));
    return r;
}

} // namespace detail

// Sign sigma relating the two forms of the displacement equation:
// a D u D + b D D u + sigma (mu Lap u + (mu+lambda) grad div u) = 0 for every
// grade-1 u.  Derived once from u = x1^2 e1 rather than hard-coded.
inline int lame_form_sign() {
    static const int sign = [] {
        const int m = 3;
        ExactLameParams p(Rational(1), Rational(1));
        Exponent e{};
        e[0] = 2;
        PolyField u = PolyField::monomial(m, e, ExactMultivector::basis(m, 1));
        PolyField clifford = apply_operator(u, FieldOperator::L, p);
        PolyField classical =
            p.mu * detail::laplacian(u) + (p.mu + p.lambda) * detail::grad_div(u);
        if ((clifford + classical).is_zero()) return 1;
        if ((clifford - classical).is_zero()) return -1;
        throw std::logic_error("lame_form_sign: neither sign closes the identity");
    }();
    return sign;
}

// Residual between the Clifford form and the classical displacement form;
// identically zero for every grade-1 polynomial field.
inline PolyField classical_lame_residual(const PolyField& u, const ExactLameParams& p) {
    for (const auto& [e, c] : u.terms())
        if (!c.is_grade1())
            throw std::invalid_argument("classical_lame_residual: field is not grade-1 valued");
    PolyField clifford = apply_operator(u, FieldOperator::L, p);
    PolyField classical =
        p.mu * detail::laplacian(u) + (p.mu + p.lambda) * detail::grad_div(u);
    if (lame_form_sign() > 0) return clifford + classical;
    return clifford - classical;
}

enum class TestSolutionKind {
    constant,          // mixed-grade constant; universal
    linear_scalar,     // x1, with D x1 = e1 constant and both forms zero
    monogenic_linear,  // x1 e2 + x2 e1, two-sided monogenic
    universal_quadratic // (x1^2 - x2^2) * 1, harmonic and inframonogenic
};

inline PolyField make_test_solution(TestSolutionKind kind, int m) {
    detail::check_m(m);
    if (m < 3) throw std::invalid_argument("make_test_solution: m >= 3");
    PolyField f(m);
    Exponent zero{};
    switch (kind) {
        case TestSolutionKind::constant: {
            ExactMultivector c(m);
            c.coeff(0) = Rational(1);
            c.coeff(1) = Rational(2);          // e1
            c.coeff((1u << 1) | (1u << 2)) = Rational(-1); // e23
            f.add_term(zero, c);
            return f;
        }
        case TestSolutionKind::linear_scalar:
            return PolyField::coordinate(m, 1);
        case TestSolutionKind::monogenic_linear: {
            Exponent e1{}, e2{};
            e1[0] = 1;
            e2[1] = 1;
            f.add_term(e1, ExactMultivector::basis(m, 2));
            f.add_term(e2, ExactMultivector::basis(m, 1));
            return f;
        }
        case TestSolutionKind::universal_quadratic: {
            Exponent q1{}, q2{};
            q1[0] = 2;
            q2[1] = 2;
            f.add_term(q1, ExactMultivector::scalar(m, Rational(1)));
            f.add_term(q2, ExactMultivector::scalar(m, Rational(-1)));
            return f;
        }
    }
    throw std::invalid_argument("make_test_solution: unknown kind");
}

// Seeded random polynomial field, small integer coefficients over random
// blades and monomials.  grade1_only restricts coefficients to vectors (for
// the classical comparison); the caller screens degenerate draws.
inline PolyField random_poly(int m, int degree, std::uint64_t seed, bool grade1_only = false) {
    detail::check_m(m);
    SplitMix64 rng(seed);
    PolyField f(m);
    const int nterms = 4 + (int)rng.uniform_int(0, 3);
    for (int t = 0; t < nterms; ++t) {
        Exponent e{};
        int budget = (int)rng.uniform_int(0, degree);
        for (int k = 0; k < budget; ++k) e[rng.uniform_int(0, m - 1)] += 1;
        ExactMultivector c(m);
        if (grade1_only) {
            c.coeff(1u << rng.uniform_int(0, m - 1)) = Rational(rng.uniform_int(-3, 3));
        } else {
            c.coeff((unsigned)rng.uniform_int(0, (1 << m) - 1)) = Rational(rng.uniform_int(-3, 3));
        }
        f.add_term(e, c);
    }
    return f;
}

} // namespace lamehardy
