#pragma once

#include <vector>

#include "lamehardy/boundary_ops.hpp"

namespace lamehardy {

// Solid-domain transforms over a ball grid.  Cells closer to the target
// than their own guard radius are dropped; the lost mass is o(cell) because
// every kernel here is integrable.

inline std::vector<Multivector> sample_on_grid(const VolumeGrid& grid, const PolyField& f) {
    if (f.m() != grid.m) throw std::invalid_argument("sample_on_grid: dimension mismatch");
    std::vector<Multivector> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.push_back(f.evaluate(std::span<const double>(grid.points[i].data(), (std::size_t)grid.m)));
    return out;
}

inline Multivector teodorescu_harmonic(const VolumeGrid& grid,
                                       const std::vector<Multivector>& g, const Vec& x) {
    if (g.size() != grid.size())
        throw std::invalid_argument("teodorescu: density length does not match the grid");
    const int m = grid.m;
    KahanMultivector acc(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec d = vsub(grid.points[i], x, m);
        if (vnorm(d, m) < grid.guard_radius[i]) continue;
        acc.add_scaled(grid.weights[i] * eval_E1(detail::as_span(d, m), m), g[i]);
    }
    return acc.value();
}

inline Multivector teodorescu_infra(const VolumeGrid& grid, const std::vector<Multivector>& g,
                                    const Vec& x) {
    if (g.size() != grid.size())
        throw std::invalid_argument("teodorescu: density length does not match the grid");
    const int m = grid.m;
    KahanMultivector first(m), second(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec d = vsub(grid.points[i], x, m);
        if (vnorm(d, m) < grid.guard_radius[i]) continue;
        const auto ds = detail::as_span(d, m);
        first.add_scaled(grid.weights[i], (eval_E0(ds, m) * g[i]) * to_clifford(d, m));
        second.add_scaled(grid.weights[i] * eval_E1(ds, m), g[i]);
    }
    return -0.5 * (first.value() + basis_sandwich(second.value()));
}

inline Multivector teodorescu_lame(const VolumeGrid& grid, const std::vector<Multivector>& g,
                                   const Vec& x, const LameParams& p) {
    if (g.size() != grid.size())
        throw std::invalid_argument("teodorescu: density length does not match the grid");
    const int m = grid.m;
    KahanMultivector harm(m), first(m), second(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec d = vsub(grid.points[i], x, m);
        if (vnorm(d, m) < grid.guard_radius[i]) continue;
        const auto ds = detail::as_span(d, m);
        const double e1 = eval_E1(ds, m);
        harm.add_scaled(grid.weights[i] * e1, g[i]);
        first.add_scaled(grid.weights[i], (eval_E0(ds, m) * g[i]) * to_clifford(d, m));
        second.add_scaled(grid.weights[i] * e1, g[i]);
    }
    return p.cH() * harm.value() +
           0.5 * p.cI() * (first.value() + basis_sandwich(second.value()));
}

enum class TeodorescuKind { harmonic, infra, lame };

inline Multivector teodorescu(const VolumeGrid& grid, const std::vector<Multivector>& g,
                              const Vec& x, TeodorescuKind kind, const LameParams& p) {
    switch (kind) {
    case TeodorescuKind::harmonic: return teodorescu_harmonic(grid, g, x);
    case TeodorescuKind::infra: return teodorescu_infra(grid, g, x);
    case TeodorescuKind::lame: return teodorescu_lame(grid, g, x, p);
    }
    throw std::invalid_argument("teodorescu: unknown kind");
}

// Full two-sided reconstruction: boundary Cauchy integral plus the volume
// transform of the interior load.  Equals f inside, zero outside.
inline Multivector lame_borel_pompeiu(const LipschitzJet& jet, const BoundaryTraces& tr,
                                      const LameParams& p, const VolumeGrid& grid,
                                      const std::vector<Multivector>& load, const Vec& x) {
    return lame_cauchy_integral(jet, tr, p, x) + teodorescu_lame(grid, load, x, p);
}

// Residual of the reconstruction identity for a polynomial field: boundary
// blocks plus the volume transform of its second-order image, minus the field
// itself when x lies inside.  Exact derivatives feed both the boundary jet and
// the volume load, so the only error left is quadrature.
inline Multivector borel_pompeiu_residual(const PolyField& f, const ExactLameParams& ep,
                                          const std::shared_ptr<const SurfaceMesh>& surface,
                                          const VolumeGrid& grid, const Vec& x) {
    const LameParams p = to_numeric(ep);
    const LipschitzJet jet = jet_from_field(surface, f);
    const BoundaryTraces tr = compute_traces(jet, p);
    const std::vector<Multivector> load =
        sample_on_grid(grid, apply_operator(f, FieldOperator::L, ep));
    Multivector r = lame_borel_pompeiu(jet, tr, p, grid, load, x);
    if (surface->desc.contains(x))
        r -= f.evaluate(std::span<const double>(x.data(), (std::size_t)surface->m));
    return r;
}

// Representation residual for fields defined outside the surface and settling
// to a constant at infinity:  f(x) + [boundary blocks](x) - f(inf).  Two
// stock choices below; both should come back near zero for exterior x.

// f identically equal to kappa; f(inf) = kappa.
inline Multivector exterior_representation_residual(const Multivector& kappa,
                                                    const LameParams& p,
                                                    const std::shared_ptr<const SurfaceMesh>& surface,
                                                    const Vec& x) {
    LipschitzJet jet(surface, 1.0);
    for (std::size_t q = 0; q < jet.size(); ++q) jet.value(q) = kappa;
    const BoundaryTraces tr = compute_traces(jet, p);
    return kappa + lame_cauchy_integral(jet, tr, p, x) - kappa;
}

// f = fundamental vector kernel centred at an interior pole; f(inf) = 0.
inline Multivector exterior_representation_residual(const Vec& pole, const LameParams& p,
                                                    const std::shared_ptr<const SurfaceMesh>& surface,
                                                    const Vec& x) {
    const int m = surface->m;
    if (!surface->desc.contains(pole))
        throw std::invalid_argument("exterior_representation_residual: pole must be interior");
    const LipschitzJet jet = jet_from_kernel_marker(surface, pole);
    const BoundaryTraces tr = compute_traces(jet, p);
    const Vec d = vsub(x, pole, m);
    return eval_E0(detail::as_span(d, m), m) + lame_cauchy_integral(jet, tr, p, x);
}

} // namespace lamehardy
