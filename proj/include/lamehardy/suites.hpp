#pragma once

#include <bit>
#include <numbers>
#include <string>
#include <vector>

#include "lamehardy/boundary_ops.hpp"
#include "lamehardy/report.hpp"
#include "lamehardy/volume_ops.hpp"

namespace lamehardy {

namespace detail {

inline Multivector random_multivector(SplitMix64& rng, int m) {
    Multivector v(m);
    for (std::size_t b = 0; b < v.size(); ++b) v.coeff(b) = rng.uniform(-1.0, 1.0);
    return v;
}

inline Vec random_direction(SplitMix64& rng, int m) {
    Vec x{};
    double n = 0.0;
    while (n < 1e-3) {
        n = 0.0;
        for (int i = 0; i < m; ++i) {
            x[i] = rng.uniform(-1.0, 1.0);
            n += x[i] * x[i];
        }
        n = std::sqrt(n);
    }
    for (int i = 0; i < m; ++i) x[i] /= n;
    return x;
}

// Canonical probe points for the unit sphere; the fourth coordinate and up
// stay zero so the same points serve every dimension.
inline std::vector<Vec> interior_probe_points() {
    return {Vec{0.5, 0.0, 0.0}, Vec{-0.3, 0.3, 0.2}, Vec{0.0, -0.5, 0.3}};
}

inline Vec exterior_probe_point() { return Vec{1.7, 0.4, 0.0}; }

inline PolyField scalar_square_field(int m) {
    PolyField f(m);
    Exponent e{};
    e[0] = 2;
    f.add_term(e, ExactMultivector::scalar(m, Rational(1)));
    return f;
}

inline double value_slot_norm(const LipschitzJet& jet) {
    double s = 0.0;
    for (std::size_t q = 0; q < jet.size(); ++q) {
        const double r = clifford_norm(jet.value(q));
        s += jet.surface().weights[q] * r * r;
    }
    return std::sqrt(s);
}

inline double gradient_slot_norm(const LipschitzJet& jet) {
    double s = 0.0;
    for (std::size_t q = 0; q < jet.size(); ++q)
        for (int j = 1; j <= jet.m(); ++j) {
            const double r = clifford_norm(jet.deriv(q, j));
            s += jet.surface().weights[q] * r * r;
        }
    return std::sqrt(s);
}

// Size of first-order Taylor remainders of a jet against node separation,
// reduced to geometric bin means and fitted as a power law.
inline ExponentFit whitney_power_fit(const LipschitzJet& jet) {
    const SurfaceMesh& mesh = jet.surface();
    const int m = jet.m();
    const double lo = 1.2 * mesh.h, hi = 1.6;
    constexpr int kBins = 24;
    std::array<double, kBins> logsum{};
    std::array<int, kBins> count{};
    const double lc = std::log(lo), span = std::log(hi) - lc;
    const std::size_t n = jet.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 1500);
    for (std::size_t p = 0; p < n; p += stride)
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const double r = vnorm(vsub(mesh.nodes[q], mesh.nodes[p], m), m);
            if (r < lo || r >= hi) continue;
            int b = (int)((std::log(r) - lc) / span * kBins);
            b = std::clamp(b, 0, kBins - 1);
            const double w = clifford_norm(whitney_remainder(jet, p, q));
            if (w > 0.0) {
                logsum[b] += std::log(w);
                count[b] += 1;
            }
        }
    std::vector<std::pair<double, double>> pairs;
    for (int b = 0; b < kBins; ++b) {
        if (count[b] == 0) continue;
        pairs.emplace_back(std::exp(lc + span * (b + 0.5) / kBins),
                           std::exp(logsum[b] / count[b]));
    }
    return fit_exponent(pairs);
}

inline std::vector<std::size_t> spread_nodes(std::size_t n) {
    return {0, n / 3, 2 * n / 3};
}

inline void require(bool ok, const char* message) {
    if (!ok) throw config_error(message);
}

} // namespace detail

// ---- algebra ----

inline SuiteReport run_algebra_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "algebra";
    rep.params = cfg.echo();
    const int m = cfg.m;
    SplitMix64 rng(cfg.seed * 977 + 11);

    {
        double worst = 0.0;
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= m; ++j) {
                const Multivector ei = Multivector::basis(m, i);
                const Multivector ej = Multivector::basis(m, j);
                Multivector anti = ei * ej + ej * ei;
                if (i == j) anti += Multivector::scalar(m, 2.0);
                worst = std::max(worst, clifford_norm(anti));
            }
        rep.checks.push_back(make_check("generator_relations", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Multivector a = detail::random_multivector(rng, m);
            const Multivector b = detail::random_multivector(rng, m);
            const Multivector c = detail::random_multivector(rng, m);
            const double scale = 1.0 + clifford_norm(a) * clifford_norm(b) * clifford_norm(c);
            worst = std::max(worst, clifford_norm((a * b) * c - a * (b * c)) / scale);
        }
        rep.checks.push_back(make_check("associativity", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Multivector a = detail::random_multivector(rng, m);
            const Multivector b = detail::random_multivector(rng, m);
            const double scale = 1.0 + clifford_norm(a) * clifford_norm(b);
            worst = std::max(
                worst, clifford_norm((a * b).conjugate() - b.conjugate() * a.conjugate()) / scale);
        }
        rep.checks.push_back(make_check("conjugation_reversal", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Vec u = detail::random_direction(rng, m);
            const Vec v = detail::random_direction(rng, m);
            const Multivector a = to_clifford(u, m);
            const Multivector b = to_clifford(v, m);
            worst = std::max(worst, std::abs(clifford_norm(a * b) - 1.0));
        }
        rep.checks.push_back(make_check("vector_norm_product", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const Multivector v =
                rng.uniform(0.2, 3.0) * to_clifford(detail::random_direction(rng, m), m);
            worst = std::max(
                worst, clifford_norm(v * invert_vector(v) - Multivector::scalar(m, 1.0)));
        }
        rep.checks.push_back(make_check("vector_inverse", worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Multivector a = detail::random_multivector(rng, m);
            Multivector s(m);
            for (int k = 0; k <= m; ++k) s += a.grade_part(k);
            worst = std::max(worst, clifford_norm(s - a));
        }
        rep.checks.push_back(make_check("grade_sum", worst, 1e-14));
    }
    {
        // sum_i e_i x e_i acts blade by blade as (-1)^|A| (2|A| - m).
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Multivector a = detail::random_multivector(rng, m);
            const Multivector got = basis_sandwich(a);
            Multivector want(m);
            for (std::size_t blade = 0; blade < a.size(); ++blade) {
                const int k = std::popcount((unsigned)blade);
                const double lam = ((k % 2 == 0) ? 1.0 : -1.0) * (2 * k - m);
                want.coeff(blade) = lam * a.coeff(blade);
            }
            worst = std::max(worst, clifford_norm(got - want) / (1.0 + clifford_norm(a)));
        }
        rep.checks.push_back(make_check("sandwich_diagonal", worst, 1e-12));
    }
    {
        const LameParams p = cfg.material();
        double worst = std::abs(p.a() + p.b() - p.two_mu_lambda());
        worst = std::max(worst, std::abs(p.b() - p.a() - p.mu));
        worst = std::max(worst,
                         std::abs(p.cI() * 2.0 * p.mu * p.two_mu_lambda() - (p.mu + p.lambda)));
        worst = std::max(
            worst, std::abs(p.cH() * 2.0 * p.mu * p.two_mu_lambda() - (3.0 * p.mu + p.lambda)));
        rep.checks.push_back(make_check("material_coefficients", worst, 1e-12));
    }
    return rep;
}

// ---- kernels ----

inline SuiteReport run_kernels_suite(const RunConfig& cfg) {
    SuiteReport rep;
    rep.suite = "kernels";
    rep.params = cfg.echo();
    const int m = cfg.m;
    SplitMix64 rng(cfg.seed * 977 + 23);

    auto random_point = [&](double rlo, double rhi) {
        Vec x = detail::random_direction(rng, m);
        const double r = rng.uniform(rlo, rhi);
        for (int i = 0; i < m; ++i) x[i] *= r;
        return x;
    };

    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(0.5, 2.0);
            const auto xs = detail::as_span(x, m);
            Multivector sum(m);
            for (int j = 1; j <= m; ++j)
                sum += (-eval_E1_grad(xs, m, j)) * Multivector::basis(m, j);
            worst = std::max(worst, clifford_norm(sum - eval_E0(xs, m)));
        }
        rep.checks.push_back(make_check("gradient_sum_analytic", worst, 1e-10));
    }
    {
        double worst = 0.0;
        const double step = 1e-6;
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(0.95, 1.05);
            Multivector sum(m);
            for (int j = 1; j <= m; ++j) {
                Vec xp = x, xm = x;
                xp[j - 1] += step;
                xm[j - 1] -= step;
                const double dd = (eval_E1(detail::as_span(xp, m), m) -
                                   eval_E1(detail::as_span(xm, m), m)) /
                                  (2.0 * step);
                sum += dd * Multivector::basis(m, j);
            }
            worst = std::max(worst, clifford_norm(sum - eval_E0(detail::as_span(x, m), m)));
        }
        rep.checks.push_back(make_check("gradient_sum_finite_difference", worst, 1e-6));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(0.5, 2.0);
            const auto xs = detail::as_span(x, m);
            Multivector left(m), right(m);
            double scale = 0.0;
            for (int j = 1; j <= m; ++j) {
                const Multivector g = eval_E0_grad(xs, m, j);
                left += Multivector::basis(m, j) * g;
                right += g * Multivector::basis(m, j);
                scale += clifford_norm(g);
            }
            worst = std::max(worst, (clifford_norm(left) + clifford_norm(right)) / scale);
        }
        rep.checks.push_back(make_check("vector_kernel_two_sided", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(0.5, 2.0);
            for (double s : {0.5, 2.0}) {
                Vec y = x;
                for (int i = 0; i < m; ++i) y[i] *= s;
                const auto xs = detail::as_span(x, m), ys = detail::as_span(y, m);
                const Multivector e0 = eval_E0(ys, m);
                const Multivector e0want = std::pow(s, 1 - m) * eval_E0(xs, m);
                worst = std::max(worst,
                                 clifford_norm(e0 - e0want) / std::max(1e-12, clifford_norm(e0want)));
                const double e1 = eval_E1(ys, m);
                const double e1want = std::pow(s, 2 - m) * eval_E1(xs, m);
                worst = std::max(worst, std::abs(e1 - e1want) / std::max(1e-12, std::abs(e1want)));
            }
        }
        rep.checks.push_back(make_check("homogeneity", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Vec x = random_point(0.5, 2.0);
            Vec y{};
            for (int i = 0; i < m; ++i) y[i] = -x[i];
            const auto xs = detail::as_span(x, m), ys = detail::as_span(y, m);
            worst = std::max(worst, clifford_norm(eval_E0(ys, m) + eval_E0(xs, m)));
            worst = std::max(worst, std::abs(eval_E1(ys, m) - eval_E1(xs, m)));
        }
        rep.checks.push_back(make_check("parity", worst, 1e-13));
    }
    {
        static const double closed[4] = {4.0 * std::numbers::pi,
                                         2.0 * std::numbers::pi * std::numbers::pi,
                                         8.0 * std::numbers::pi * std::numbers::pi / 3.0,
                                         std::numbers::pi * std::numbers::pi * std::numbers::pi};
        const double want = closed[m - 3];
        rep.checks.push_back(
            make_check("unit_sphere_measure", std::abs(sigma_m(m) - want) / want, 1e-12));
    }
    return rep;
}

// ---- cauchy ----

inline SuiteReport run_cauchy_suite(const RunConfig& cfg) {
    detail::require(cfg.m <= 4, "cauchy suite: surfaces exist for m in {3, 4}");
    SuiteReport rep;
    rep.suite = "cauchy";
    rep.params = cfg.echo();
    const int m = cfg.m;
    const LameParams p = cfg.material();
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, cfg.level));
    const auto pts = detail::interior_probe_points();
    const Vec xout = detail::exterior_probe_point();

    {
        std::vector<Multivector> one(mesh->size(), Multivector::scalar(m, 1.0));
        double worst = 0.0;
        for (const Vec& x : pts)
            worst = std::max(
                worst, clifford_norm(cauchy_left(*mesh, one, x) - Multivector::scalar(m, 1.0)));
        rep.checks.push_back(make_check("constant_interior", worst, 1e-3));
        rep.checks.push_back(
            make_check("constant_exterior", clifford_norm(cauchy_left(*mesh, one, xout)), 1e-3));
    }
    {
        const PolyField f = make_test_solution(TestSolutionKind::monogenic_linear, m);
        std::vector<Multivector> fs;
        fs.reserve(mesh->size());
        for (std::size_t q = 0; q < mesh->size(); ++q)
            fs.push_back(f.evaluate(detail::as_span(mesh->nodes[q], m)));
        double worst = 0.0;
        for (const Vec& x : pts) {
            const Multivector fx = f.evaluate(detail::as_span(x, m));
            worst = std::max(worst, clifford_norm(cauchy_left(*mesh, fs, x) - fx) /
                                        std::max(0.25, clifford_norm(fx)));
        }
        rep.checks.push_back(make_check("monogenic_reproduction", worst, 1e-3));
    }
    {
        const PolyField f = make_test_solution(TestSolutionKind::universal_quadratic, m);
        const PolyField df = dirac_left(f);
        std::vector<Multivector> fs, dfs;
        fs.reserve(mesh->size());
        dfs.reserve(mesh->size());
        for (std::size_t q = 0; q < mesh->size(); ++q) {
            const auto xs = detail::as_span(mesh->nodes[q], m);
            fs.push_back(f.evaluate(xs));
            dfs.push_back(df.evaluate(xs));
        }
        double wh = 0.0, wi = 0.0;
        for (const Vec& x : pts) {
            const Multivector fx = f.evaluate(detail::as_span(x, m));
            const double scale = std::max(0.1, clifford_norm(fx));
            wh = std::max(wh, clifford_norm(cauchy_left(*mesh, fs, x) +
                                            harmonic_layer_left(*mesh, dfs, x) - fx) /
                                  scale);
            wi = std::max(wi, clifford_norm(cauchy_left(*mesh, fs, x) +
                                            infra_layer_right(*mesh, dfs, x) - fx) /
                                  scale);
        }
        rep.checks.push_back(make_check("harmonic_split", wh, 1e-2));
        rep.checks.push_back(make_check("infra_split", wi, 1e-2));
    }
    {
        const LipschitzJet jet =
            jet_from_field(mesh, make_test_solution(TestSolutionKind::linear_scalar, m));
        const BoundaryTraces tr = compute_traces(jet, p);
        double worst = 0.0;
        for (const Vec& x : pts) {
            const Multivector want = Multivector::scalar(m, x[0]);
            worst = std::max(worst, clifford_norm(lame_cauchy_integral(jet, tr, p, x) - want));
        }
        rep.checks.push_back(make_check("lame_reproduction_interior", worst, 1e-2));
        rep.checks.push_back(make_check(
            "lame_reproduction_exterior",
            clifford_norm(lame_cauchy_integral(jet, tr, p, xout)), 1e-2));
    }
    {
        SplitMix64 rng(cfg.seed * 977 + 31);
        std::vector<Multivector> f, g, fg;
        const double al = 0.7, be = -1.3;
        for (std::size_t q = 0; q < mesh->size(); ++q) {
            f.push_back(detail::random_multivector(rng, m));
            g.push_back(detail::random_multivector(rng, m));
            fg.push_back(al * f.back() + be * g.back());
        }
        const Vec& x = pts[1];
        const Multivector combo =
            al * lame_layer_left(*mesh, f, x, p) + be * lame_layer_left(*mesh, g, x, p);
        const Multivector direct = lame_layer_left(*mesh, fg, x, p);
        rep.checks.push_back(make_check(
            "lame_linearity", clifford_norm(direct - combo) / (1.0 + clifford_norm(direct)),
            1e-12));
    }
    {
        // numeric first-order operator applied to the volume extension versus
        // the plain Cauchy transform of the traced operator data
        const LipschitzJet jet = random_smooth_jet(mesh, cfg.seed + 1, cfg.alpha);
        const BoundaryTraces tr = compute_traces(jet, p);
        const Vec x = pts[1];
        const double step = 1e-4;
        Multivector num(m);
        for (int j = 1; j <= m; ++j) {
            Vec xp = x, xm = x;
            xp[j - 1] += step;
            xm[j - 1] -= step;
            const Multivector dj =
                (1.0 / (2.0 * step)) *
                (lame_cauchy_integral(jet, tr, p, xp) - lame_cauchy_integral(jet, tr, p, xm));
            const Multivector ej = Multivector::basis(m, j);
            num += p.a() * (dj * ej) + p.b() * (ej * dj);
        }
        const Multivector want = cauchy_left(*mesh, tr.m_trace, x);
        rep.checks.push_back(make_check(
            "intertwining_fd",
            clifford_norm(num - want) / std::max(1e-12, clifford_norm(want)), 1e-2));
    }
    return rep;
}

// ---- borel_pompeiu ----

inline SuiteReport run_borel_pompeiu_suite(const RunConfig& cfg) {
    detail::require(cfg.m <= 4, "borel_pompeiu suite: surfaces exist for m in {3, 4}");
    SuiteReport rep;
    rep.suite = "borel_pompeiu";
    rep.params = cfg.echo();
    const int m = cfg.m;
    const LameParams p = cfg.material();
    // the symbolic operator wants exact material constants
    const ExactLameParams ep(approximate_rational(cfg.mu), approximate_rational(cfg.lambda));
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, cfg.level));
    const VolumeGrid grid = build_ball_volume(m, cfg.grid_resolution());
    const auto pts = detail::interior_probe_points();

    {
        std::vector<Multivector> one(grid.size(), Multivector::scalar(m, 1.0));
        Vec far{};
        far[0] = 10.0;
        const Multivector th = teodorescu_harmonic(grid, one, far);
        const double vol = std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
        Vec d = vsub(Vec{}, far, m);
        const Multivector want = Multivector::scalar(m, vol * eval_E1(detail::as_span(d, m), m));
        rep.checks.push_back(make_check("teodorescu_farfield_monopole",
                                        clifford_norm(th - want) / clifford_norm(want), 2e-2));
    }
    {
        const PolyField f = detail::scalar_square_field(m);
        double worst = 0.0;
        for (const Vec& x : pts)
            worst = std::max(worst, clifford_norm(borel_pompeiu_residual(f, ep, mesh, grid, x)));
        const double tol = (cfg.level <= 2) ? 1.5e-1 : (cfg.level == 3 ? 2e-2 : 5e-3);
        rep.checks.push_back(make_check("quadratic_volume_identity", worst, tol));
        rep.checks.push_back(make_check(
            "exterior_vanishing",
            clifford_norm(
                borel_pompeiu_residual(f, ep, mesh, grid, detail::exterior_probe_point())),
            5e-3));
    }
    if (m == 3) {
        SplitMix64 rng(cfg.seed * 1000 + 99);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const PolyField f = random_poly(m, 3, cfg.seed * 1000 + 101 + (std::uint64_t)k);
            for (int j = 0; j < 5; ++j) {
                Vec x{};
                double r2 = 2.0;
                while (r2 > 0.36) {
                    r2 = 0.0;
                    for (int i = 0; i < m; ++i) {
                        x[i] = rng.uniform(-0.6, 0.6);
                        r2 += x[i] * x[i];
                    }
                }
                const Multivector r = borel_pompeiu_residual(f, ep, mesh, grid, x);
                const Multivector fx = f.evaluate(detail::as_span(x, m));
                worst = std::max(worst,
                                 clifford_norm(r) / std::max(1.0, clifford_norm(fx)));
            }
        }
        const double tol = (cfg.level <= 2) ? 2.5e-1 : 5e-2;
        rep.checks.push_back(make_check("random_load_identity", worst, tol));
    }
    {
        Multivector kappa(m);
        kappa.coeff(0) = 1.0;
        kappa.coeff(1) = 2.0;
        kappa.coeff(6) = -1.0;
        Vec x{};
        x[0] = 2.0;
        rep.checks.push_back(make_check(
            "exterior_constant_representation",
            clifford_norm(exterior_representation_residual(kappa, p, mesh, x)), 1e-2));
    }
    {
        Vec pole{};
        pole[2] = 0.3;
        auto rel_at = [&](double radius) {
            Vec x{0.6 * radius, 0.8 * radius, 0.0};
            const Multivector r = exterior_representation_residual(pole, p, mesh, x);
            const Vec d = vsub(x, pole, m);
            return clifford_norm(r) / clifford_norm(eval_E0(detail::as_span(d, m), m));
        };
        double worst = 0.0;
        for (double radius : {1.5, 2.0, 3.0}) worst = std::max(worst, rel_at(radius));
        rep.checks.push_back(make_check("exterior_marker_representation", worst, 5e-2));
        rep.checks.push_back(
            make_check("far_improvement", rel_at(10.0) / std::max(1e-15, rel_at(1.5)), 1.0));
    }
    return rep;
}

// ---- involution ----

inline SuiteReport run_involution_suite(const RunConfig& cfg) {
    detail::require(cfg.m == 3 && cfg.level <= 4,
                    "involution suite: node-pair sweeps stay desk-scale only for m = 3, level <= 4");
    SuiteReport rep;
    rep.suite = "involution";
    rep.params = cfg.echo();
    const int m = cfg.m;
    const LameParams p = cfg.material();
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, cfg.level));

    {
        const LipschitzJet jet =
            jet_from_field(mesh, make_test_solution(TestSolutionKind::linear_scalar, m));
        LipschitzJet diff = singular_boundary_operator(jet, p);
        diff -= jet;
        rep.checks.push_back(
            make_check("affine_passthrough", jet_norm(diff) / jet_norm(jet), 1e-10));
    }

    const double smooth_tol = (cfg.level <= 2) ? 1.5e-1 : (cfg.level == 3 ? 8e-2 : 5e-2);
    LipschitzJet jet1 = random_smooth_jet(mesh, cfg.seed + 1, cfg.alpha);
    LipschitzJet sjet1 = singular_boundary_operator(jet1, p);
    {
        double worst = 0.0, worst_val = 0.0, worst_grad = 0.0;
        for (std::uint64_t k = 1; k <= 2; ++k) {
            const LipschitzJet jet =
                (k == 1) ? jet1 : random_smooth_jet(mesh, cfg.seed + k, cfg.alpha);
            const LipschitzJet sjet =
                (k == 1) ? sjet1 : singular_boundary_operator(jet, p);
            LipschitzJet diff = singular_boundary_operator(sjet, p);
            diff -= jet;
            const double scale = jet_norm(jet);
            worst = std::max(worst, jet_norm(diff) / scale);
            worst_val = std::max(worst_val, detail::value_slot_norm(diff) / scale);
            worst_grad = std::max(worst_grad, detail::gradient_slot_norm(diff) / scale);
        }
        rep.checks.push_back(make_check("smooth_involution", worst, smooth_tol));
        rep.checks.push_back(make_check("involution_value_slot", worst_val, smooth_tol));
        rep.checks.push_back(make_check("involution_gradient_slots", worst_grad, smooth_tol));
    }
    {
        const BoundaryTraces tr = compute_traces(jet1, p);
        double num = 0.0, den = 0.0, numsw = 0.0, densw = 0.0;
        for (std::size_t q = 0; q < jet1.size(); ++q) {
            const double w = mesh->weights[q];
            const auto r1 = primary_trace_identity_residual(jet1, sjet1, tr, p, q);
            const auto r2 = swapped_trace_identity_residual(jet1, sjet1, tr, p, q);
            num += w * r1.mismatch * r1.mismatch;
            den += w * r1.reference * r1.reference;
            numsw += w * r2.mismatch * r2.mismatch;
            densw += w * r2.reference * r2.reference;
        }
        const double prim_tol = (cfg.level <= 2) ? 5e-2 : (cfg.level == 3 ? 2.5e-2 : 1.5e-2);
        rep.checks.push_back(
            make_check("primary_trace_identity", std::sqrt(num / den), prim_tol));
        rep.checks.push_back(
            make_check("swapped_trace_identity", std::sqrt(numsw / densw), 2.0 * prim_tol));
    }
    {
        // Raw punctured quadrature of the boundary kernel. The scalar slot
        // carries the half value and converges at first order (the deficit is
        // the omitted weakly singular self patch); the non-scalar slots hold a
        // principal-value cancellation artifact of the node lattice that does
        // not decay, so only the full norm is gated loosely while the scalar
        // deficit gets the level-tightened bound.
        double worst = 0.0, worst_scalar = 0.0;
        for (std::size_t q = 0; q < mesh->size(); ++q) {
            const Multivector v = half_value_sum(*mesh, q);
            worst_scalar = std::max(worst_scalar, std::abs(v.coeff(0) - 0.5));
            worst = std::max(worst, clifford_norm(v - Multivector::scalar(m, 0.5)));
        }
        const double sc_tol = (cfg.level <= 2) ? 5e-2 : (cfg.level == 3 ? 2.5e-2 : 1.3e-2);
        rep.checks.push_back(make_check("half_value", worst, 1e-1));
        rep.checks.push_back(make_check("half_value_scalar", worst_scalar, sc_tol));
    }
    if (cfg.level >= 3) {
        const TestSolutionKind kinds[4] = {
            TestSolutionKind::constant, TestSolutionKind::linear_scalar,
            TestSolutionKind::monogenic_linear, TestSolutionKind::universal_quadratic};
        const double delta = 4.0 * mesh->h;
        double worst = 0.0;
        for (const TestSolutionKind kind : kinds) {
            const LipschitzJet jet = jet_from_field(mesh, make_test_solution(kind, m));
            const BoundaryTraces tr = compute_traces(jet, p);
            double sup = 0.0;
            for (std::size_t q = 0; q < jet.size(); ++q)
                sup = std::max(sup, clifford_norm(jet.value(q)));
            for (std::size_t q : detail::spread_nodes(jet.size())) {
                const Multivector d = lame_jump_extrapolated(jet, tr, p, q, delta);
                worst = std::max(worst, clifford_norm(d - jet.value(q)) / sup);
            }
        }
        rep.checks.push_back(
            make_check("plemelj_jump", worst, (cfg.level == 3) ? 4e-1 : 1e-1));
    }
    return rep;
}

// ---- hardy ----

inline SuiteReport run_hardy_suite(const RunConfig& cfg) {
    detail::require(cfg.m == 3 && cfg.level <= 4,
                    "hardy suite: node-pair sweeps stay desk-scale only for m = 3, level <= 4");
    SuiteReport rep;
    rep.suite = "hardy";
    rep.params = cfg.echo();
    const int m = cfg.m;
    const LameParams p = cfg.material();
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, cfg.level));
    const double energy_tol = (cfg.level <= 2) ? 1e-1 : 5e-2;
    const double invo_tol = (cfg.level <= 2) ? 1.5e-1 : (cfg.level == 3 ? 8e-2 : 5e-2);

    {
        const LipschitzJet jet = random_smooth_jet(mesh, cfg.seed + 1, cfg.alpha);
        const double scale = jet_norm(jet);
        const LipschitzJet sjet = singular_boundary_operator(jet, p);
        auto [plus, minus] = hardy_projections(jet, p);
        LipschitzJet rec = plus;
        rec += minus;
        rec -= jet;
        rep.checks.push_back(make_check("reconstruction", jet_norm(rec) / scale, 1e-12));

        // one extra application gives every projector product by linearity
        const LipschitzJet splus = singular_boundary_operator(plus, p);
        LipschitzJet idem = plus;
        idem += splus;
        idem.scale(0.5);
        idem -= plus;
        rep.checks.push_back(make_check("projection_idempotency", jet_norm(idem) / scale, invo_tol));

        LipschitzJet sminus = sjet;
        sminus -= splus;
        LipschitzJet comp = minus;
        comp += sminus;
        comp.scale(0.5);
        rep.checks.push_back(
            make_check("projection_complementarity", jet_norm(comp) / scale, invo_tol));
    }
    {
        const LipschitzJet jet =
            jet_from_field(mesh, make_test_solution(TestSolutionKind::linear_scalar, m));
        auto [plus, minus] = hardy_projections(jet, p);
        rep.checks.push_back(
            make_check("interior_affine_minus_energy", jet_norm(minus) / jet_norm(jet), 1e-10));
    }
    {
        const LipschitzJet jet =
            jet_from_field(mesh, make_test_solution(TestSolutionKind::universal_quadratic, m));
        auto [plus, minus] = hardy_projections(jet, p);
        rep.checks.push_back(make_check("interior_quadratic_minus_energy",
                                        jet_norm(minus) / jet_norm(jet), energy_tol));
    }
    {
        const LipschitzJet jet = jet_from_kernel_marker(mesh, Vec{}, cfg.alpha);
        auto [plus, minus] = hardy_projections(jet, p);
        rep.checks.push_back(make_check("exterior_marker_plus_energy",
                                        jet_norm(plus) / jet_norm(jet), energy_tol));
    }
    return rep;
}

// ---- recovery ----

inline SuiteReport run_recovery_suite(const RunConfig& cfg) {
    detail::require(cfg.m == 3 && cfg.level <= 5,
                    "recovery suite: isotropic neighborhoods need m = 3 with level <= 5");
    SuiteReport rep;
    rep.suite = "recovery";
    rep.params = cfg.echo();
    const int m = cfg.m;
    const LameParams p = cfg.material();
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(m, cfg.level));

    auto roundtrip_worst = [&](const PolyField& f) {
        const LipschitzJet jet = jet_from_field(mesh, f);
        std::vector<Multivector> f0, trc;
        f0.reserve(jet.size());
        trc.reserve(jet.size());
        for (std::size_t q = 0; q < jet.size(); ++q) {
            f0.push_back(jet.value(q));
            trc.push_back(jet_m_trace(jet, q, p));
        }
        const LipschitzJet rec = recover_jet(mesh, f0, trc, p, cfg.alpha);
        double worst = 0.0;
        for (std::size_t q = 0; q < jet.size(); ++q)
            for (int j = 1; j <= m; ++j)
                worst = std::max(worst, clifford_norm(rec.deriv(q, j) - jet.deriv(q, j)));
        return worst;
    };

    {
        std::vector<Multivector> zero(mesh->size(), Multivector(m));
        const LipschitzJet rec = recover_jet(mesh, zero, zero, p, cfg.alpha);
        double worst = 0.0;
        for (std::size_t q = 0; q < rec.size(); ++q)
            for (int j = 1; j <= m; ++j)
                worst = std::max(worst, clifford_norm(rec.deriv(q, j)));
        rep.checks.push_back(make_check("zero_data", worst, 1e-12));
    }
    rep.checks.push_back(make_check(
        "linear_roundtrip",
        roundtrip_worst(make_test_solution(TestSolutionKind::linear_scalar, m)), 5e-2));
    {
        const double tol = (cfg.level <= 2) ? 4e-1 : (cfg.level == 3 ? 1e-1 : 3e-2);
        rep.checks.push_back(make_check(
            "quadratic_roundtrip",
            roundtrip_worst(make_test_solution(TestSolutionKind::universal_quadratic, m)), tol));
    }
    {
        std::vector<Multivector> zero(mesh->size(), Multivector(m));
        bool caught_plus = false, caught_minus = false;
        try {
            recover_jet(mesh, zero, zero, 1.0, 1.0, cfg.alpha);
        } catch (const degeneracy_error&) {
            caught_plus = true;
        }
        try {
            recover_jet(mesh, zero, zero, 1.0, -1.0, cfg.alpha);
        } catch (const degeneracy_error&) {
            caught_minus = true;
        }
        rep.checks.push_back(make_check("degenerate_plus", caught_plus ? 0.0 : 1.0, 0.5));
        rep.checks.push_back(make_check("degenerate_minus", caught_minus ? 0.0 : 1.0, 0.5));
    }
    return rep;
}

// ---- holder ----

inline SuiteReport run_holder_suite(const RunConfig& cfg) {
    detail::require(cfg.m == 3 && cfg.level >= 3 && cfg.level <= 4,
                    "holder suite: separation decade needs m = 3 with level in {3, 4}");
    SuiteReport rep;
    rep.suite = "holder";
    rep.params = cfg.echo();
    const LameParams p = cfg.material();
    auto mesh = std::make_shared<const SurfaceMesh>(build_sphere_surface(cfg.m, cfg.level));
    const LipschitzJet jet = random_smooth_jet(mesh, cfg.seed + 1, cfg.alpha);
    const LipschitzJet sjet = singular_boundary_operator(jet, p);

    const ExponentFit fit = detail::whitney_power_fit(sjet);
    rep.exponents.push_back({"whitney_exponent", fit});
    const double required = 1.0 + cfg.alpha - 0.2;
    rep.checks.push_back(
        make_check("exponent_shortfall", std::max(0.0, required - fit.slope), 0.0));
    rep.checks.push_back(make_check("fit_quality_shortfall", std::max(0.0, 0.9 - fit.r2), 0.0));
    rep.checks.push_back(make_check(
        "lip_seminorm_ratio", whitney_constant(sjet) / whitney_constant(jet), 100.0));
    return rep;
}

// ---- dispatch ----

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "algebra", "kernels", "cauchy", "borel_pompeiu",
        "involution", "hardy", "recovery", "holder"};
    return names;
}

inline std::string headline_check(const std::string& suite) {
    if (suite == "algebra") return "associativity";
    if (suite == "kernels") return "gradient_sum_analytic";
    if (suite == "cauchy") return "monogenic_reproduction";
    if (suite == "borel_pompeiu") return "quadratic_volume_identity";
    if (suite == "involution") return "smooth_involution";
    if (suite == "hardy") return "exterior_marker_plus_energy";
    if (suite == "recovery") return "linear_roundtrip";
    if (suite == "holder") return "exponent_shortfall";
    throw config_error("unknown suite '" + suite + "'");
}

inline SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    if (suite == "algebra") return run_algebra_suite(cfg);
    if (suite == "kernels") return run_kernels_suite(cfg);
    if (suite == "cauchy") return run_cauchy_suite(cfg);
    if (suite == "borel_pompeiu") return run_borel_pompeiu_suite(cfg);
    if (suite == "involution") return run_involution_suite(cfg);
    if (suite == "hardy") return run_hardy_suite(cfg);
    if (suite == "recovery") return run_recovery_suite(cfg);
    if (suite == "holder") return run_holder_suite(cfg);
    throw config_error("unknown suite '" + suite + "'");
}

} // namespace lamehardy
