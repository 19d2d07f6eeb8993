#pragma once

#include <utility>
#include <vector>

#include "lamehardy/jet.hpp"
#include "lamehardy/kernels.hpp"
#include "lamehardy/linalg.hpp"
#include "lamehardy/parallel.hpp"

namespace lamehardy {

// Boundary layer potentials for the elastostatic system, their singular
// boundary values on first-order jets, and the induced Hardy projections.
//
// Conventions, fixed once here and relied on everywhere:
//   * targets of the layer potentials stay at least half a cell off the
//     surface (near_boundary_error otherwise);
//   * the singular operator acts node-to-node with the diagonal excluded
//     and the Whitney remainder absorbing the principal value;
//   * products are written left-to-right exactly as accumulated.

namespace detail {

inline void check_off_surface(const SurfaceMesh& mesh, const Vec& x) {
    if (mesh.desc.distance_to_surface(x) < 0.5 * mesh.h)
        throw near_boundary_error("layer potential target within half a cell of the surface");
}

inline std::span<const double> as_span(const Vec& v, int m) {
    return std::span<const double>(v.data(), (std::size_t)m);
}

} // namespace detail

struct BoundaryTraces {
    std::vector<Multivector> m_trace;
    std::vector<Multivector> mbar_trace;
};

inline BoundaryTraces compute_traces(const LipschitzJet& jet, const LameParams& p) {
    BoundaryTraces tr;
    tr.m_trace.reserve(jet.size());
    tr.mbar_trace.reserve(jet.size());
    for (std::size_t q = 0; q < jet.size(); ++q) {
        tr.m_trace.push_back(jet_m_trace(jet, q, p));
        tr.mbar_trace.push_back(jet_mbar_trace(jet, q, p));
    }
    return tr;
}

// ---- layer potentials, kernel acting from the left or the right ----

inline Multivector cauchy_left(const SurfaceMesh& mesh, const std::vector<Multivector>& g,
                               const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector acc(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const Multivector e0 = eval_E0(detail::as_span(d, m), m);
        acc.add_scaled(mesh.weights[q], (e0 * to_clifford(mesh.normals[q], m)) * g[q]);
    }
    return acc.value();
}

inline Multivector cauchy_right(const SurfaceMesh& mesh, const std::vector<Multivector>& g,
                                const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector acc(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const Multivector e0 = eval_E0(detail::as_span(d, m), m);
        acc.add_scaled(mesh.weights[q], (g[q] * to_clifford(mesh.normals[q], m)) * e0);
    }
    return acc.value();
}

inline Multivector harmonic_layer_left(const SurfaceMesh& mesh,
                                       const std::vector<Multivector>& g, const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector acc(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const double e1 = eval_E1(detail::as_span(d, m), m);
        acc.add_scaled(-mesh.weights[q] * e1, to_clifford(mesh.normals[q], m) * g[q]);
    }
    return acc.value();
}

inline Multivector harmonic_layer_right(const SurfaceMesh& mesh,
                                        const std::vector<Multivector>& g, const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector acc(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const double e1 = eval_E1(detail::as_span(d, m), m);
        acc.add_scaled(-mesh.weights[q] * e1, g[q] * to_clifford(mesh.normals[q], m));
    }
    return acc.value();
}

inline Multivector infra_layer_left(const SurfaceMesh& mesh,
                                    const std::vector<Multivector>& g, const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector first(m), second(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const auto ds = detail::as_span(d, m);
        const Multivector ng = to_clifford(mesh.normals[q], m) * g[q];
        first.add_scaled(mesh.weights[q], (eval_E0(ds, m) * ng) * to_clifford(d, m));
        second.add_scaled(mesh.weights[q] * eval_E1(ds, m), ng);
    }
    return 0.5 * (first.value() + basis_sandwich(second.value()));
}

inline Multivector infra_layer_right(const SurfaceMesh& mesh,
                                     const std::vector<Multivector>& g, const Vec& x) {
    detail::check_off_surface(mesh, x);
    const int m = mesh.m;
    KahanMultivector first(m), second(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const auto ds = detail::as_span(d, m);
        const Multivector gn = g[q] * to_clifford(mesh.normals[q], m);
        first.add_scaled(mesh.weights[q], (eval_E0(ds, m) * gn) * to_clifford(d, m));
        second.add_scaled(mesh.weights[q] * eval_E1(ds, m), gn);
    }
    return 0.5 * (first.value() + basis_sandwich(second.value()));
}

inline Multivector lame_layer_left(const SurfaceMesh& mesh, const std::vector<Multivector>& g,
                                   const Vec& x, const LameParams& p) {
    return -p.cI() * infra_layer_left(mesh, g, x) + p.cH() * harmonic_layer_left(mesh, g, x);
}

inline Multivector lame_layer_right(const SurfaceMesh& mesh, const std::vector<Multivector>& g,
                                    const Vec& x, const LameParams& p) {
    return -p.cI() * infra_layer_right(mesh, g, x) + p.cH() * harmonic_layer_right(mesh, g, x);
}

// ---- the elastostatic Cauchy integral of a jet ----
//
// Fused single pass: the monogenic layer of f0, the weakly singular
// correction fed by the primary trace, and the right-handed correction fed
// by the swapped trace.  Reproduces interior solutions and vanishes outside.
inline Multivector lame_cauchy_integral(const LipschitzJet& jet, const BoundaryTraces& tr,
                                        const LameParams& p, const Vec& x) {
    const SurfaceMesh& mesh = jet.surface();
    detail::check_off_surface(mesh, x);
    const int m = jet.m();
    KahanMultivector main(m), weak(m), right(m), right_sw(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        const Vec d = vsub(mesh.nodes[q], x, m);
        const auto ds = detail::as_span(d, m);
        const Multivector e0 = eval_E0(ds, m);
        const double e1 = eval_E1(ds, m);
        const Multivector ncl = to_clifford(mesh.normals[q], m);
        const double w = mesh.weights[q];
        main.add_scaled(w, (e0 * ncl) * jet.value(q));
        weak.add_scaled(w * e1, ncl * tr.m_trace[q]);
        const Multivector gn = tr.mbar_trace[q] * ncl;
        right.add_scaled(w, (e0 * gn) * to_clifford(d, m));
        right_sw.add_scaled(w * e1, gn);
    }
    return main.value() - p.cH() * weak.value() -
           0.5 * p.cI() * (right.value() + basis_sandwich(right_sw.value()));
}

inline Multivector lame_cauchy_integral(const LipschitzJet& jet, const LameParams& p,
                                        const Vec& x) {
    return lame_cauchy_integral(jet, compute_traces(jet, p), p, x);
}

// ---- singular boundary operator on jets ----
//
// Value slot: the density value plus twice the principal-value integrals,
// regularized through the first-order Whitney remainder so that affine
// collections pass through unchanged.  Derivative slots: the same layout
// under the kernel gradients plus the commutator tail from the moving
// right-hand factor.
inline LipschitzJet singular_boundary_operator(const LipschitzJet& jet, const LameParams& p) {
    const SurfaceMesh& mesh = jet.surface();
    const int m = jet.m();
    const double cI = p.cI(), cH = p.cH();
    const BoundaryTraces tr = compute_traces(jet, p);
    std::vector<Multivector> ncl;
    ncl.reserve(mesh.size());
    for (std::size_t q = 0; q < mesh.size(); ++q)
        ncl.push_back(to_clifford(mesh.normals[q], m));

    LipschitzJet out(jet.surface_ptr(), jet.alpha());
    parallel_for(mesh.size(), [&](std::size_t pi) {
        const Vec& x = mesh.nodes[pi];
        KahanMultivector a0(m), b0(m), c0(m), d0(m), tail(m);
        std::vector<KahanMultivector> aj(m, KahanMultivector(m));
        std::vector<KahanMultivector> bj(m, KahanMultivector(m));
        std::vector<KahanMultivector> cj(m, KahanMultivector(m));
        std::vector<KahanMultivector> dj(m, KahanMultivector(m));
        for (std::size_t q = 0; q < mesh.size(); ++q) {
            if (q == pi) continue;
            const Vec d = vsub(mesh.nodes[q], x, m);
            const auto ds = detail::as_span(d, m);
            const Multivector e0 = eval_E0(ds, m);
            const double e1 = eval_E1(ds, m);
            const double w = mesh.weights[q];

            Multivector rem = jet.value(q) - jet.value(pi);
            for (int j = 1; j <= m; ++j) rem -= d[j - 1] * jet.deriv(pi, j);
            const Multivector dm = tr.m_trace[q] - tr.m_trace[pi];
            const Multivector dmb = tr.mbar_trace[q] - tr.mbar_trace[pi];

            const Multivector n_rem = ncl[q] * rem;
            const Multivector n_dm = ncl[q] * dm;
            const Multivector qn = dmb * ncl[q];
            const Multivector qnd = qn * to_clifford(d, m);

            a0.add_scaled(w, e0 * n_rem);
            b0.add_scaled(w * e1, n_dm);
            c0.add_scaled(w, e0 * qnd);
            d0.add_scaled(w * e1, qn);
            tail.add_scaled(w, e0 * qn);
            for (int j = 1; j <= m; ++j) {
                const Multivector e0j = eval_E0_grad(ds, m, j);
                const double e1j = eval_E1_grad(ds, m, j);
                aj[j - 1].add_scaled(w, e0j * n_rem);
                bj[j - 1].add_scaled(w * e1j, n_dm);
                cj[j - 1].add_scaled(w, e0j * qnd);
                dj[j - 1].add_scaled(w * e1j, qn);
            }
        }
        out.value(pi) = jet.value(pi) + 2.0 * a0.value() - 2.0 * cH * b0.value() -
                        cI * (c0.value() + basis_sandwich(d0.value()));
        for (int j = 1; j <= m; ++j) {
            out.deriv(pi, j) = jet.deriv(pi, j) + 2.0 * aj[j - 1].value() -
                               2.0 * cH * bj[j - 1].value() -
                               cI * (cj[j - 1].value() + basis_sandwich(dj[j - 1].value())) +
                               cI * (tail.value() * Multivector::basis(m, j));
        }
    });
    return out;
}

inline std::pair<LipschitzJet, LipschitzJet> hardy_projections(const LipschitzJet& jet,
                                                               const LameParams& p) {
    LipschitzJet s = singular_boundary_operator(jet, p);
    LipschitzJet plus = jet;
    plus += s;
    plus.scale(0.5);
    LipschitzJet minus = jet;
    minus -= s;
    minus.scale(0.5);
    return {std::move(plus), std::move(minus)};
}

// ---- pointwise diagnostics ----

// sum' w E0(y - x) n over the mesh; half the identity in the limit.
inline Multivector half_value_sum(const SurfaceMesh& mesh, std::size_t pi) {
    const int m = mesh.m;
    KahanMultivector acc(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        if (q == pi) continue;
        const Vec d = vsub(mesh.nodes[q], mesh.nodes[pi], m);
        const Multivector e0 = eval_E0(detail::as_span(d, m), m);
        acc.add_scaled(mesh.weights[q], e0 * to_clifford(mesh.normals[q], m));
    }
    return acc.value();
}

// Composing the singular operator with the primary trace collapses to a
// plain convolution of trace differences; these return the node mismatch
// together with the size of the reference value it was compared against.
struct TraceIdentityResidual {
    double mismatch = 0.0;
    double reference = 0.0;
};

inline TraceIdentityResidual primary_trace_identity_residual(const LipschitzJet& jet,
                                                             const LipschitzJet& sjet,
                                                             const BoundaryTraces& tr,
                                                             const LameParams& p, std::size_t pi) {
    const SurfaceMesh& mesh = jet.surface();
    const int m = jet.m();
    KahanMultivector conv(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        if (q == pi) continue;
        const Vec d = vsub(mesh.nodes[q], mesh.nodes[pi], m);
        const Multivector e0 = eval_E0(detail::as_span(d, m), m);
        conv.add_scaled(mesh.weights[q],
                        (e0 * to_clifford(mesh.normals[q], m)) * (tr.m_trace[q] - tr.m_trace[pi]));
    }
    const Multivector want = tr.m_trace[pi] + 2.0 * conv.value();
    Multivector got(m);
    for (int j = 1; j <= m; ++j) {
        const Multivector ej = Multivector::basis(m, j);
        got += p.a() * (sjet.deriv(pi, j) * ej) + p.b() * (ej * sjet.deriv(pi, j));
    }
    return {clifford_norm(got - want), clifford_norm(want)};
}

inline TraceIdentityResidual swapped_trace_identity_residual(const LipschitzJet& jet,
                                                             const LipschitzJet& sjet,
                                                             const BoundaryTraces& tr,
                                                             const LameParams& p, std::size_t pi) {
    const SurfaceMesh& mesh = jet.surface();
    const int m = jet.m();
    KahanMultivector conv(m);
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        if (q == pi) continue;
        const Vec d = vsub(mesh.nodes[q], mesh.nodes[pi], m);
        const Multivector e0 = eval_E0(detail::as_span(d, m), m);
        conv.add_scaled(mesh.weights[q],
                        ((tr.mbar_trace[q] - tr.mbar_trace[pi]) * to_clifford(mesh.normals[q], m)) * e0);
    }
    const Multivector want = tr.mbar_trace[pi] + 2.0 * conv.value();
    Multivector got(m);
    for (int j = 1; j <= m; ++j) {
        const Multivector ej = Multivector::basis(m, j);
        got += p.b() * (sjet.deriv(pi, j) * ej) + p.a() * (ej * sjet.deriv(pi, j));
    }
    return {clifford_norm(got - want), clifford_norm(want)};
}

// ---- straddling jump probes ----

// D(delta) = C(x - delta n) - C(x + delta n); the raw difference carries an
// O(delta) bias from the one-sided derivative, the two-step extrapolation
// cancels it.
inline Multivector lame_jump_difference(const LipschitzJet& jet, const BoundaryTraces& tr,
                                        const LameParams& p, std::size_t q, double delta) {
    auto [xin, xout] = probe_pair(jet.surface(), q, delta);
    return lame_cauchy_integral(jet, tr, p, xin) - lame_cauchy_integral(jet, tr, p, xout);
}

inline Multivector lame_jump_extrapolated(const LipschitzJet& jet, const BoundaryTraces& tr,
                                          const LameParams& p, std::size_t q, double delta) {
    const Multivector d1 = lame_jump_difference(jet, tr, p, q, delta);
    const Multivector d2 = lame_jump_difference(jet, tr, p, q, 2.0 * delta);
    return 2.0 * d1 - d2;
}

// ---- gradient recovery from value and trace data ----
//
// Tangential slopes come from a quadratic least-squares model of the value
// slot over nearest neighbors; the normal load s is then pinned by the
// algebraic system c1 s n + c2 n s = residual trace.  Degenerate exactly
// when c1 = +-c2.
inline LipschitzJet recover_jet(std::shared_ptr<const SurfaceMesh> surface,
                                const std::vector<Multivector>& f0,
                                const std::vector<Multivector>& trace, double c1, double c2,
                                double alpha = 1.0) {
    const SurfaceMesh& mesh = *surface;
    const int m = mesh.m;
    const unsigned nb = 1u << m;
    if (f0.size() != mesh.size() || trace.size() != mesh.size())
        throw std::invalid_argument("recover_jet: data length does not match the mesh");
    const double scale = std::max({std::abs(c1), std::abs(c2), 1.0});
    if (std::abs(c1 - c2) < 1e-9 * scale || std::abs(c1 + c2) < 1e-9 * scale)
        throw degeneracy_error("recover_jet: coefficient pair collapses the normal system");

    const int k = (m == 3) ? 12 : 18;
    const int lin = m - 1;
    const int cols = lin + lin * (lin + 1) / 2;
    const auto nn = nearest_neighbors(mesh, k);

    LipschitzJet out(surface, alpha);
    parallel_for(mesh.size(), [&](std::size_t pi) {
        // quadratic tangential model of the value slot
        std::vector<double> design((std::size_t)k * cols);
        std::vector<double> rhs((std::size_t)k * nb);
        for (int r = 0; r < k; ++r) {
            const int q = nn[pi][r];
            const Vec d = vsub(mesh.nodes[q], mesh.nodes[pi], m);
            std::array<double, kMaxM - 1> xi{};
            for (int t = 0; t < lin; ++t) xi[t] = vdot(mesh.frames[pi][t], d, m);
            int col = 0;
            for (int t = 0; t < lin; ++t) design[r * cols + col++] = xi[t];
            for (int t = 0; t < lin; ++t)
                for (int u = t; u < lin; ++u) design[r * cols + col++] = xi[t] * xi[u];
            const Multivector diff = f0[q] - f0[pi];
            for (unsigned b = 0; b < nb; ++b) rhs[r * nb + b] = diff.coeff(b);
        }
        const std::vector<double> sol = detail::solve_least_squares(design, rhs, k, cols, (int)nb);

        // tangential gradient per coordinate
        std::vector<Multivector> tang((std::size_t)m, Multivector(m));
        for (int t = 0; t < lin; ++t) {
            Multivector g(m);
            for (unsigned b = 0; b < nb; ++b) g.coeff(b) = sol[(std::size_t)t * nb + b];
            for (int j = 0; j < m; ++j) tang[j] += mesh.frames[pi][t][j] * g;
        }

        // residual trace after removing the tangential part
        Multivector tprime = trace[pi];
        for (int j = 1; j <= m; ++j) {
            const Multivector ej = Multivector::basis(m, j);
            tprime -= c1 * (tang[j - 1] * ej) + c2 * (ej * tang[j - 1]);
        }

        // c1 s n + c2 n s = tprime, solved densely over the blade basis
        const Vec& n = mesh.normals[pi];
        std::vector<double> mat((std::size_t)nb * nb, 0.0);
        for (unsigned b = 0; b < nb; ++b) {
            for (int i = 0; i < m; ++i) {
                if (n[i] == 0.0) continue;
                const auto pr = blade_product(b, 1u << i, m);
                mat[(std::size_t)pr.mask * nb + b] += c1 * n[i] * pr.sign;
                const auto pl = blade_product(1u << i, b, m);
                mat[(std::size_t)pl.mask * nb + b] += c2 * n[i] * pl.sign;
            }
        }
        std::vector<double> b(nb);
        for (unsigned i = 0; i < nb; ++i) b[i] = tprime.coeff(i);
        detail::solve_gepp(mat, b, (int)nb);
        Multivector s(m);
        for (unsigned i = 0; i < nb; ++i) s.coeff(i) = b[i];

        out.value(pi) = f0[pi];
        for (int j = 1; j <= m; ++j) out.deriv(pi, j) = tang[j - 1] + n[j - 1] * s;
    });
    return out;
}

inline LipschitzJet recover_jet(std::shared_ptr<const SurfaceMesh> surface,
                                const std::vector<Multivector>& f0,
                                const std::vector<Multivector>& trace, const LameParams& p,
                                double alpha = 1.0) {
    return recover_jet(std::move(surface), f0, trace, p.a(), p.b(), alpha);
}

} // namespace lamehardy
