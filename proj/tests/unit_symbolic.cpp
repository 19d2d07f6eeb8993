#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "lamehardy/poly_field.hpp"

using namespace lamehardy;

namespace {

ExactLameParams unit_params() { return ExactLameParams(Rational(1), Rational(1)); }

// Seeded admissible rational material pairs: mu in (0, 3], lambda built as
// -(2/3) mu + positive offset so the admissibility strip is sampled, not
// just its comfortable interior.
ExactLameParams random_params(SplitMix64& rng) {
    Rational mu(rng.uniform_int(1, 12), rng.uniform_int(1, 4));
    Rational off(rng.uniform_int(1, 9), rng.uniform_int(1, 3));
    Rational lambda = Rational(-2, 3) * mu + off;
    return ExactLameParams(mu, lambda);
}

} // namespace

TEST_CASE("material parameter admissibility and derived coefficients") {
    ExactLameParams p = unit_params();
    REQUIRE(p.a() == Rational(1));
    REQUIRE(p.b() == Rational(2));
    REQUIRE(p.cI() == Rational(1, 3));
    REQUIRE(p.cH() == Rational(2, 3));
    REQUIRE_THROWS_AS(ExactLameParams(Rational(0), Rational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(ExactLameParams(Rational(1), Rational(-1)), std::invalid_argument);
    // b - a = mu > 0 and a + b = 2 mu + lambda > 0 across the strip.
    SplitMix64 rng(3);
    for (int t = 0; t < 40; ++t) {
        ExactLameParams q = random_params(rng);
        REQUIRE(q.b() - q.a() == q.mu);
        REQUIRE(q.a() + q.b() == q.two_mu_lambda());
        REQUIRE(q.two_mu_lambda() > Rational(0));
        REQUIRE(q.a() > Rational(0));
    }
}

TEST_CASE("coordinate calculus basics") {
    const int m = 3;
    // D applied to x (the grade-1 coordinate field) gives -m.
    PolyField x(m);
    for (int j = 1; j <= m; ++j) {
        Exponent e{};
        e[j - 1] = 1;
        x.add_term(e, ExactMultivector::basis(m, j));
    }
    PolyField dx = dirac_left(x);
    PolyField want(m);
    want.add_term(Exponent{}, ExactMultivector::scalar(m, Rational(-m)));
    REQUIRE((dx - want).is_zero());

    // d/dx1 x1^2 = 2 x1, and partial out of range throws.
    PolyField sq = PolyField::coordinate(m, 1) * PolyField::coordinate(m, 1);
    PolyField dsq = sq.partial(1);
    PolyField two_x1 = Rational(2) * PolyField::coordinate(m, 1);
    REQUIRE((dsq - two_x1).is_zero());
    REQUIRE_THROWS_AS(sq.partial(4), std::invalid_argument);
}

TEST_CASE("operator factorizations hold exactly") {
    SplitMix64 rng(101);
    for (int m = 3; m <= 4; ++m) {
        for (int t = 0; t < 25; ++t) {
            ExactLameParams p = random_params(rng);
            PolyField f = random_poly(m, 4, 1000 * m + t);
            PolyField L = apply_operator(f, FieldOperator::L, p);
            PolyField Mf = apply_operator(f, FieldOperator::M, p);
            PolyField Mbarf = apply_operator(f, FieldOperator::Mbar, p);
            // L = D(Mf) = (Mbar f)D, and DD f = f DD (the scalar Laplacian).
            REQUIRE((L - dirac_left(Mf)).is_zero());
            REQUIRE((L - dirac_right(Mbarf)).is_zero());
            PolyField ddf = apply_operator(f, FieldOperator::DD, p);
            REQUIRE((ddf - dirac_right(dirac_right(f))).is_zero());
        }
    }
}

TEST_CASE("classical displacement form agrees with the Clifford form") {
    REQUIRE(lame_form_sign() == 1);
    SplitMix64 rng(202);
    for (int m = 3; m <= 4; ++m) {
        for (int t = 0; t < 25; ++t) {
            ExactLameParams p = random_params(rng);
            PolyField u = random_poly(m, 4, 5000 * m + t, /*grade1_only=*/true);
            REQUIRE(classical_lame_residual(u, p).is_zero());
        }
    }
    // Non-grade-1 fields are rejected.
    PolyField bad(3);
    bad.add_term(Exponent{}, ExactMultivector::scalar(3, Rational(1)));
    REQUIRE_THROWS_AS(classical_lame_residual(bad, unit_params()), std::invalid_argument);
}

TEST_CASE("pinned operator values") {
    const int m = 3;
    ExactLameParams p = unit_params();
    // L(x1^2 * 1) = -2(2 mu + lambda) = -6 at mu = lambda = 1.
    PolyField f = PolyField::coordinate(m, 1) * PolyField::coordinate(m, 1);
    PolyField Lf = apply_operator(f, FieldOperator::L, p);
    PolyField want(m);
    want.add_term(Exponent{}, ExactMultivector::scalar(m, Rational(-6)));
    REQUIRE((Lf - want).is_zero());
    // M(x1^2) = (a+b) * 2 x1 e1 at mu = lambda = 1 -> 6 x1 e1.
    PolyField Mf = apply_operator(f, FieldOperator::M, p);
    Exponent e1{};
    e1[0] = 1;
    PolyField wantM = PolyField::monomial(m, e1, Rational(6) * ExactMultivector::basis(m, 1));
    REQUIRE((Mf - wantM).is_zero());
}

TEST_CASE("catalogued solutions are annihilated by the right operators") {
    SplitMix64 rng(303);
    for (int m = 3; m <= 4; ++m) {
        for (int t = 0; t < 8; ++t) {
            ExactLameParams p = random_params(rng);
            PolyField c = make_test_solution(TestSolutionKind::constant, m);
            PolyField lin = make_test_solution(TestSolutionKind::linear_scalar, m);
            PolyField mono = make_test_solution(TestSolutionKind::monogenic_linear, m);
            PolyField quad = make_test_solution(TestSolutionKind::universal_quadratic, m);
            for (const PolyField* f : {&c, &lin, &mono, &quad})
                REQUIRE(apply_operator(*f, FieldOperator::L, p).is_zero());
            // The monogenic solution is two-sided monogenic; the quadratic is
            // harmonic and inframonogenic (universal).
            REQUIRE(dirac_left(mono).is_zero());
            REQUIRE(dirac_right(mono).is_zero());
            REQUIRE(apply_operator(quad, FieldOperator::DD, p).is_zero());
            REQUIRE(dirac_left(dirac_right(quad)).is_zero());
        }
    }
}

TEST_CASE("evaluation: exact rational path and numeric path") {
    const int m = 3;
    PolyField quad = make_test_solution(TestSolutionKind::universal_quadratic, m);
    // (x1^2 - x2^2) at (1,1,0) is 0 and at (2,3,0) is -5.
    std::array<double, 3> p1 = {1.0, 1.0, 0.0}, p2 = {2.0, 3.0, 0.0};
    REQUIRE(quad.evaluate(p1).scalar_part() == 0.0);
    REQUIRE(quad.evaluate(p2).scalar_part() == -5.0);
    std::array<Rational, 3> q2 = {Rational(2), Rational(3), Rational(0)};
    REQUIRE(quad.evaluate_exact(q2).scalar_part() == Rational(-5));
    // Numeric equals rounded exact at a rational point.
    std::array<Rational, 3> q3 = {Rational(1, 2), Rational(-3, 4), Rational(1)};
    std::array<double, 3> p3 = {0.5, -0.75, 1.0};
    REQUIRE(std::abs(quad.evaluate(p3).scalar_part() -
                     quad.evaluate_exact(q3).scalar_part().to_double()) < 1e-15);
}

TEST_CASE("random fields are reproducibly seeded and typically non-solutions") {
    PolyField f1 = random_poly(3, 3, 42);
    PolyField f2 = random_poly(3, 3, 42);
    REQUIRE((f1 - f2).is_zero());
    int nonzero = 0;
    for (int t = 0; t < 10; ++t) {
        PolyField f = random_poly(3, 3, 7000 + t);
        if (!apply_operator(f, FieldOperator::L, unit_params()).is_zero()) ++nonzero;
    }
    REQUIRE(nonzero >= 8);
}
