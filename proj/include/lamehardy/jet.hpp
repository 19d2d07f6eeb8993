#pragma once

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "lamehardy/geometry.hpp"
#include "lamehardy/kernels.hpp"
#include "lamehardy/lame_params.hpp"
#include "lamehardy/poly_field.hpp"
#include "lamehardy/rng.hpp"

namespace lamehardy {

// First-order boundary data: a function value f0 and a full gradient
// (f^1..f^m) sampled at every mesh node, with a Holder exponent alpha for
// the first-order remainder.  The mesh is shared, never copied per jet.
class LipschitzJet {
public:
    LipschitzJet(std::shared_ptr<const SurfaceMesh> surface, double alpha)
        : surface_(std::move(surface)), alpha_(alpha) {
        if (!surface_) throw std::invalid_argument("LipschitzJet: null surface");
        if (!(alpha_ > 0.0 && alpha_ <= 1.0))
            throw std::invalid_argument("LipschitzJet: alpha must lie in (0, 1]");
        const int m = surface_->m;
        f0_.assign(surface_->size(), Multivector(m));
        grad_.assign(surface_->size() * (std::size_t)m, Multivector(m));
    }

    int m() const { return surface_->m; }
    double alpha() const { return alpha_; }
    std::size_t size() const { return f0_.size(); }
    const SurfaceMesh& surface() const { return *surface_; }
    std::shared_ptr<const SurfaceMesh> surface_ptr() const { return surface_; }

    Multivector& value(std::size_t q) { return f0_.at(q); }
    const Multivector& value(std::size_t q) const { return f0_.at(q); }

    // j is 1-based, matching the coordinate it differentiates.
    Multivector& deriv(std::size_t q, int j) { return grad_[index(q, j)]; }
    const Multivector& deriv(std::size_t q, int j) const { return grad_[index(q, j)]; }

    LipschitzJet& operator+=(const LipschitzJet& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < f0_.size(); ++i) f0_[i] += o.f0_[i];
        for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] += o.grad_[i];
        return *this;
    }
    LipschitzJet& operator-=(const LipschitzJet& o) {
        check_compatible(o);
        for (std::size_t i = 0; i < f0_.size(); ++i) f0_[i] -= o.f0_[i];
        for (std::size_t i = 0; i < grad_.size(); ++i) grad_[i] -= o.grad_[i];
        return *this;
    }
    LipschitzJet& scale(double s) {
        for (auto& v : f0_) v = s * v;
        for (auto& v : grad_) v = s * v;
        return *this;
    }

    friend LipschitzJet operator+(LipschitzJet a, const LipschitzJet& b) { return a += b; }
    friend LipschitzJet operator-(LipschitzJet a, const LipschitzJet& b) { return a -= b; }

private:
    std::size_t index(std::size_t q, int j) const {
        if (q >= f0_.size()) throw std::out_of_range("LipschitzJet: node out of range");
        if (j < 1 || j > m()) throw std::out_of_range("LipschitzJet: derivative index out of range");
        return q * (std::size_t)m() + (std::size_t)(j - 1);
    }
    void check_compatible(const LipschitzJet& o) const {
        if (surface_.get() != o.surface_.get() || f0_.size() != o.f0_.size())
            throw std::invalid_argument("LipschitzJet: meshes differ");
    }

    std::shared_ptr<const SurfaceMesh> surface_;
    double alpha_;
    std::vector<Multivector> f0_;
    std::vector<Multivector> grad_; // node-major, m entries per node
};

// a sum_j f^j e_j + b sum_j e_j f^j at node q; the swapped variant exchanges
// the roles of a and b.
inline Multivector jet_m_trace(const LipschitzJet& jet, std::size_t q, const LameParams& p) {
    const int m = jet.m();
    Multivector out(m);
    for (int j = 1; j <= m; ++j) {
        const Multivector ej = Multivector::basis(m, j);
        out += p.a() * (jet.deriv(q, j) * ej) + p.b() * (ej * jet.deriv(q, j));
    }
    return out;
}

inline Multivector jet_mbar_trace(const LipschitzJet& jet, std::size_t q, const LameParams& p) {
    const int m = jet.m();
    Multivector out(m);
    for (int j = 1; j <= m; ++j) {
        const Multivector ej = Multivector::basis(m, j);
        out += p.b() * (jet.deriv(q, j) * ej) + p.a() * (ej * jet.deriv(q, j));
    }
    return out;
}

// Sample a polynomial field and its exact partials on the mesh.
inline LipschitzJet jet_from_field(std::shared_ptr<const SurfaceMesh> surface,
                                   const PolyField& f, double alpha = 1.0) {
    LipschitzJet jet(std::move(surface), alpha);
    const int m = jet.m();
    if (f.m() != m) throw std::invalid_argument("jet_from_field: dimension mismatch");
    std::vector<PolyField> partials;
    partials.reserve(m);
    for (int j = 1; j <= m; ++j) partials.push_back(f.partial(j));
    for (std::size_t q = 0; q < jet.size(); ++q) {
        std::span<const double> x(jet.surface().nodes[q].data(), (std::size_t)m);
        jet.value(q) = f.evaluate(x);
        for (int j = 1; j <= m; ++j) jet.deriv(q, j) = partials[j - 1].evaluate(x);
    }
    return jet;
}

// Trace of the monogenic kernel with pole at c (which must sit off the
// surface); the smooth non-polynomial exerciser.
inline LipschitzJet jet_from_kernel_marker(std::shared_ptr<const SurfaceMesh> surface,
                                           const Vec& pole, double alpha = 1.0) {
    LipschitzJet jet(std::move(surface), alpha);
    const int m = jet.m();
    for (std::size_t q = 0; q < jet.size(); ++q) {
        const Vec d = vsub(jet.surface().nodes[q], pole, m);
        std::span<const double> ds(d.data(), (std::size_t)m);
        jet.value(q) = eval_E0(ds, m);
        for (int j = 1; j <= m; ++j) jet.deriv(q, j) = -1.0 * eval_E0_grad(ds, m, j);
    }
    return jet;
}

// Weighted L2 size of the whole jet (value plus all derivative slots).
inline double jet_norm(const LipschitzJet& jet) {
    double s = 0.0;
    const int m = jet.m();
    for (std::size_t q = 0; q < jet.size(); ++q) {
        const double w = jet.surface().weights[q];
        double local = clifford_norm(jet.value(q));
        s += w * local * local;
        for (int j = 1; j <= m; ++j) {
            local = clifford_norm(jet.deriv(q, j));
            s += w * local * local;
        }
    }
    return std::sqrt(s);
}

// First-order remainder between two nodes; the building block of every
// Whitney-type estimate here.
inline Multivector whitney_remainder(const LipschitzJet& jet, std::size_t from,
                                     std::size_t to) {
    const int m = jet.m();
    Multivector r = jet.value(to) - jet.value(from);
    const Vec d = vsub(jet.surface().nodes[to], jet.surface().nodes[from], m);
    for (int j = 1; j <= m; ++j) r -= d[j - 1] * jet.deriv(from, j);
    return r;
}

// max |R(p,q)| / |y_q - y_p|^{1 + alpha} over a node subsample.
inline double whitney_constant(const LipschitzJet& jet, std::size_t stride = 7) {
    const int m = jet.m();
    double worst = 0.0;
    for (std::size_t p = 0; p < jet.size(); p += stride) {
        for (std::size_t q = 0; q < jet.size(); q += stride) {
            if (p == q) continue;
            const double d = vnorm(vsub(jet.surface().nodes[q], jet.surface().nodes[p], m), m);
            const double r = clifford_norm(whitney_remainder(jet, p, q));
            worst = std::max(worst, r / std::pow(d, 1.0 + jet.alpha()));
        }
    }
    return worst;
}

// Seeded smooth jets: a normalized mixture of an affine field, a pure
// quadratic, and a kernel trace pulled from a pole safely outside the
// surface.  Each part is scaled to unit jet norm before mixing so that every
// seed carries the same smoothness profile; the quadratic weight is kept
// deliberately modest because curvature content is what drives the
// first-order quadrature error of the singular operator at desk
// resolutions.  Raw per-node noise would not be a Lipschitz collection, so
// everything here comes from smooth fields.
inline LipschitzJet random_smooth_jet(std::shared_ptr<const SurfaceMesh> surface,
                                      std::uint64_t seed, double alpha = 1.0) {
    SplitMix64 rng(seed);
    const int m = surface->m;

    LipschitzJet jet = jet_from_field(surface, random_poly(m, 1, rng.next_u64()), alpha);
    const double na = jet_norm(jet);
    if (na > 1e-12) jet.scale(rng.uniform(0.8, 1.2) / na);

    PolyField quad(m);
    {
        SplitMix64 qrng(rng.next_u64());
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                Exponent e{};
                e[i] += 1;
                e[j] += 1;
                ExactMultivector c(m);
                for (unsigned b = 0; b < c.size(); ++b)
                    c.coeff(b) = Rational(qrng.uniform_int(-8, 8), 8);
                quad.add_term(e, c);
            }
        }
    }
    LipschitzJet qjet = jet_from_field(surface, quad, alpha);
    const double nq = jet_norm(qjet);
    if (nq > 1e-12) {
        qjet.scale(rng.uniform(0.1, 0.25) / nq);
        jet += qjet;
    }

    Vec pole = surface->desc.center;
    const double rmax = surface->desc.radii[0];
    Vec dir{};
    double nn = 0.0;
    while (nn < 1e-3) {
        for (int i = 0; i < m; ++i) dir[i] = rng.uniform(-1.0, 1.0);
        nn = vnorm(dir, m);
    }
    // Pole at least one radius off the surface: closer poles inflate the
    // higher derivatives that control quadrature error at desk resolutions.
    const double rho = rmax * rng.uniform(2.0, 3.0);
    for (int i = 0; i < m; ++i) pole[i] += rho * dir[i] / nn;
    LipschitzJet marker = jet_from_kernel_marker(std::move(surface), pole, alpha);
    const double nm = jet_norm(marker);
    if (nm > 1e-12) {
        marker.scale(rng.uniform(0.8, 1.2) / nm);
        jet += marker;
    }
    return jet;
}

} // namespace lamehardy
