#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lamehardy/errors.hpp"
#include "lamehardy/multivector.hpp"

namespace lamehardy {

// Desk-scale quadrature geometry: closed surfaces (spheres, ellipsoids) in
// R^3 and R^4 and solid-ball volume grids.  Nodes sit exactly on the
// surface; normals and tangent frames are analytic.

using Vec = std::array<double, kMaxM>;

inline double vdot(const Vec& a, const Vec& b, int m) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += a[i] * b[i];
    return s;
}
inline double vnorm(const Vec& a, int m) { return std::sqrt(vdot(a, a, m)); }
inline Vec vsub(const Vec& a, const Vec& b, int m) {
    Vec r{};
    for (int i = 0; i < m; ++i) r[i] = a[i] - b[i];
    return r;
}
inline Vec vadd(const Vec& a, const Vec& b, int m) {
    Vec r{};
    for (int i = 0; i < m; ++i) r[i] = a[i] + b[i];
    return r;
}
inline Vec vscale(double s, const Vec& a, int m) {
    Vec r{};
    for (int i = 0; i < m; ++i) r[i] = s * a[i];
    return r;
}
inline Multivector to_clifford(const Vec& a, int m) {
    Multivector v(m);
    for (int i = 0; i < m; ++i) v.coeff(1u << i) = a[i];
    return v;
}

enum class SurfaceShape { sphere, ellipsoid };

struct ShapeDescriptor {
    SurfaceShape shape = SurfaceShape::sphere;
    int m = 3;
    int level = 0;
    Vec center{};
    Vec radii{}; // all equal for spheres

    bool contains(const Vec& x) const {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
            const double t = (x[i] - center[i]) / radii[i];
            s += t * t;
        }
        return s < 1.0;
    }

    // Exact for spheres; for ellipsoids a first-order estimate from the
    // normalized radial coordinate, good enough for near-surface guards.
    double distance_to_surface(const Vec& x) const {
        if (shape == SurfaceShape::sphere)
            return std::abs(vnorm(vsub(x, center, m), m) - radii[0]);
        double s = 0.0;
        double rmin = radii[0];
        for (int i = 0; i < m; ++i) {
            const double t = (x[i] - center[i]) / radii[i];
            s += t * t;
            rmin = std::min(rmin, radii[i]);
        }
        return std::abs(std::sqrt(s) - 1.0) * rmin;
    }
};

struct SurfaceMesh {
    ShapeDescriptor desc;
    int m = 3;
    double h = 0.0; // characteristic spacing: mean of sqrt(weight)
    std::vector<Vec> nodes;
    std::vector<Vec> normals;
    std::vector<double> weights;
    std::vector<std::array<Vec, kMaxM - 1>> frames; // m-1 orthonormal tangents

    std::size_t size() const { return nodes.size(); }
    double area() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = -p0 / pp;
            t += dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
    }
}

// Solid angle of a spherical triangle on the unit sphere (Van Oosterom-
// Strackee); exact patch areas make the weights sum to 4 pi identically.
inline double spherical_triangle_area(const Vec& a, const Vec& b, const Vec& c) {
    const double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
                       a[1] * (b[0] * c[2] - b[2] * c[0]) +
                       a[2] * (b[0] * c[1] - b[1] * c[0]);
    const double d = 1.0 + vdot(a, b, 3) + vdot(b, c, 3) + vdot(a, c, 3);
    return std::abs(2.0 * std::atan2(std::abs(det), d));
}

struct IcoMesh {
    std::vector<Vec> verts;              // unit vectors
    std::vector<std::array<int, 3>> faces;
};

inline IcoMesh icosphere(int level) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    IcoMesh mesh;
    const double raw[12][3] = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                               {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                               {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : raw) {
        Vec u{};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        u[0] = v[0] / n;
        u[1] = v[1] / n;
        u[2] = v[2] / n;
        mesh.verts.push_back(u);
    }
    mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                  {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                  {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            auto key = std::minmax(i, j);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec v = vadd(mesh.verts[i], mesh.verts[j], 3);
            const double n = vnorm(v, 3);
            v = vscale(1.0 / n, v, 3);
            mesh.verts.push_back(v);
            const int idx = (int)mesh.verts.size() - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(mesh.faces.size() * 4);
        for (const auto& f : mesh.faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        mesh.faces = std::move(next);
    }
    return mesh;
}

// Orthonormal tangent frame at unit normal n: Gram-Schmidt over the
// coordinate axes least aligned with n; deterministic.
inline std::array<Vec, kMaxM - 1> tangent_frame(const Vec& n, int m) {
    std::array<int, kMaxM> order{};
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.begin() + m,
              [&](int a, int b) { return std::abs(n[a]) < std::abs(n[b]) ||
                                         (std::abs(n[a]) == std::abs(n[b]) && a < b); });
    std::array<Vec, kMaxM - 1> frame{};
    int have = 0;
    for (int idx = 0; idx < m && have < m - 1; ++idx) {
        Vec v{};
        v[order[idx]] = 1.0;
        const double pn = vdot(v, n, m);
        for (int i = 0; i < m; ++i) v[i] -= pn * n[i];
        Vec u = v;
        for (int k = 0; k < have; ++k) {
            const double p = vdot(u, frame[k], m);
            for (int i = 0; i < m; ++i) u[i] -= p * frame[k][i];
        }
        const double nn = vnorm(u, m);
        if (nn < 1e-8) continue;
        frame[have] = vscale(1.0 / nn, u, m);
        ++have;
    }
    if (have != m - 1) throw std::logic_error("tangent_frame: frame construction failed");
    return frame;
}

inline void finish_mesh(SurfaceMesh& mesh) {
    double hsum = 0.0;
    for (double w : mesh.weights) hsum += std::sqrt(w);
    mesh.h = hsum / (double)mesh.weights.size();
    mesh.frames.resize(mesh.size());
    for (std::size_t q = 0; q < mesh.size(); ++q)
        mesh.frames[q] = tangent_frame(mesh.normals[q], mesh.m);
}

} // namespace detail

// Icosphere (m = 3) or Gauss-Legendre x uniform product grid on S^3 (m = 4).
// Node count grows 4x per level for m = 3; h shrinks by at least 0.6x per
// level for both.
inline SurfaceMesh build_sphere_surface(int m, int level, double radius = 1.0,
                                        const Vec& center = Vec{}) {
    if (m != 3 && m != 4) throw std::invalid_argument("build_sphere_surface: m must be 3 or 4");
    const int cap = (m == 3) ? 6 : 3;
    if (level < 0 || level > cap)
        throw std::invalid_argument("build_sphere_surface: level beyond desk-scale cap");
    if (!(radius > 0.0)) throw std::invalid_argument("build_sphere_surface: radius must be > 0");

    SurfaceMesh mesh;
    mesh.m = m;
    mesh.desc = {SurfaceShape::sphere, m, level, center, Vec{}};
    for (int i = 0; i < m; ++i) mesh.desc.radii[i] = radius;

    if (m == 3) {
        detail::IcoMesh ico = detail::icosphere(level);
        mesh.nodes.reserve(ico.faces.size());
        for (const auto& f : ico.faces) {
            const Vec &a = ico.verts[f[0]], &b = ico.verts[f[1]], &c = ico.verts[f[2]];
            Vec u = vadd(vadd(a, b, 3), c, 3);
            u = vscale(1.0 / vnorm(u, 3), u, 3);
            mesh.nodes.push_back(vadd(center, vscale(radius, u, 3), 3));
            mesh.normals.push_back(u);
            mesh.weights.push_back(detail::spherical_triangle_area(a, b, c) * radius * radius);
        }
    } else {
        const int n1 = 4 << level, n2 = 4 << level, nphi = 8 << level;
        std::vector<double> g1, w1, g2, w2;
        detail::gauss_legendre(n1, g1, w1);
        detail::gauss_legendre(n2, g2, w2);
        const double half_pi = 0.5 * std::numbers::pi;
        for (int i = 0; i < n1; ++i) {
            const double th1 = half_pi * (g1[i] + 1.0), jw1 = half_pi * w1[i];
            const double s1 = std::sin(th1), c1 = std::cos(th1);
            for (int j = 0; j < n2; ++j) {
                const double th2 = half_pi * (g2[j] + 1.0), jw2 = half_pi * w2[j];
                const double s2 = std::sin(th2), c2 = std::cos(th2);
                for (int k = 0; k < nphi; ++k) {
                    const double phi = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
                    Vec u{};
                    u[0] = c1;
                    u[1] = s1 * c2;
                    u[2] = s1 * s2 * std::cos(phi);
                    u[3] = s1 * s2 * std::sin(phi);
                    mesh.nodes.push_back(vadd(center, vscale(radius, u, 4), 4));
                    mesh.normals.push_back(u);
                    mesh.weights.push_back(jw1 * jw2 * (2.0 * std::numbers::pi / nphi) *
                                           s1 * s1 * s2 * radius * radius * radius);
                }
            }
        }
    }
    detail::finish_mesh(mesh);
    return mesh;
}

// Ellipsoid surface in R^3: icosphere mapped by diag(radii); flat facet
// areas as weights, outward normals from the gradient of the level function.
inline SurfaceMesh build_ellipsoid_surface(int level, const Vec& radii,
                                           const Vec& center = Vec{}) {
    if (level < 0 || level > 6)
        throw std::invalid_argument("build_ellipsoid_surface: level beyond desk-scale cap");
    for (int i = 0; i < 3; ++i)
        if (!(radii[i] > 0.0)) throw std::invalid_argument("build_ellipsoid_surface: radii must be > 0");
    SurfaceMesh mesh;
    mesh.m = 3;
    mesh.desc = {SurfaceShape::ellipsoid, 3, level, center, radii};
    detail::IcoMesh ico = detail::icosphere(level);
    auto map = [&](const Vec& v) {
        Vec p{};
        for (int i = 0; i < 3; ++i) p[i] = center[i] + radii[i] * v[i];
        return p;
    };
    for (const auto& f : ico.faces) {
        Vec u = vadd(vadd(ico.verts[f[0]], ico.verts[f[1]], 3), ico.verts[f[2]], 3);
        u = vscale(1.0 / vnorm(u, 3), u, 3);
        const Vec node = map(u);
        const Vec pa = map(ico.verts[f[0]]), pb = map(ico.verts[f[1]]), pc = map(ico.verts[f[2]]);
        const Vec ab = vsub(pb, pa, 3), ac = vsub(pc, pa, 3);
        Vec cross{};
        cross[0] = ab[1] * ac[2] - ab[2] * ac[1];
        cross[1] = ab[2] * ac[0] - ab[0] * ac[2];
        cross[2] = ab[0] * ac[1] - ab[1] * ac[0];
        mesh.weights.push_back(0.5 * vnorm(cross, 3));
        mesh.nodes.push_back(node);
        Vec n{};
        for (int i = 0; i < 3; ++i) n[i] = (node[i] - center[i]) / (radii[i] * radii[i]);
        mesh.normals.push_back(vscale(1.0 / vnorm(n, 3), n, 3));
    }
    detail::finish_mesh(mesh);
    return mesh;
}

struct VolumeGrid {
    int m = 3;
    int resolution = 2;
    Vec center{};
    double radius = 1.0;
    std::vector<Vec> points;
    std::vector<double> weights;
    std::vector<double> guard_radius; // exclusion radius per cell, 0.6 w^{1/m}

    std::size_t size() const { return points.size(); }
    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

// Solid ball: Gauss-Legendre radial shells (Jacobian r^{m-1}) crossed with a
// sphere surface mesh as the angular rule.  All points strictly interior.
inline VolumeGrid build_ball_volume(int m, int resolution, double radius = 1.0,
                                    const Vec& center = Vec{}) {
    if (m != 3 && m != 4) throw std::invalid_argument("build_ball_volume: m must be 3 or 4");
    if (resolution < 0 || resolution > 6)
        throw std::invalid_argument("build_ball_volume: resolution out of range");
    if (!(radius > 0.0)) throw std::invalid_argument("build_ball_volume: radius must be > 0");
    const int nr = 4 + 4 * resolution;
    const int angular_level = std::min(resolution + 1, m == 3 ? 5 : 2);
    SurfaceMesh ang = build_sphere_surface(m, angular_level);
    std::vector<double> gr, wr;
    detail::gauss_legendre(nr, gr, wr);
    VolumeGrid grid;
    grid.m = m;
    grid.resolution = resolution;
    grid.center = center;
    grid.radius = radius;
    grid.points.reserve(nr * ang.size());
    for (int k = 0; k < nr; ++k) {
        const double r = 0.5 * radius * (gr[k] + 1.0);
        const double jw = 0.5 * radius * wr[k] * std::pow(r, m - 1);
        for (std::size_t q = 0; q < ang.size(); ++q) {
            grid.points.push_back(vadd(center, vscale(r, ang.normals[q], m), m));
            const double w = jw * ang.weights[q];
            grid.weights.push_back(w);
            grid.guard_radius.push_back(0.6 * std::pow(w, 1.0 / m));
        }
    }
    return grid;
}

// Inward/outward probe pair off node q: (y - delta n, y + delta n).
inline std::pair<Vec, Vec> probe_pair(const SurfaceMesh& mesh, std::size_t q, double delta) {
    if (q >= mesh.size()) throw std::out_of_range("probe_pair: node index out of range");
    if (!(delta > 0.0)) throw std::invalid_argument("probe_pair: delta must be positive");
    const Vec inside = vsub(mesh.nodes[q], vscale(delta, mesh.normals[q], mesh.m), mesh.m);
    const Vec outside = vadd(mesh.nodes[q], vscale(delta, mesh.normals[q], mesh.m), mesh.m);
    if (!mesh.desc.contains(inside))
        throw std::invalid_argument("probe_pair: inner probe exits the domain");
    return {inside, outside};
}

// k nearest mesh neighbors of every node (excluding the node itself), by
// brute force; deterministic ordering with index tiebreak.
inline std::vector<std::vector<int>> nearest_neighbors(const SurfaceMesh& mesh, int k) {
    const int n = (int)mesh.size();
    if (k < 1 || k >= n) throw std::invalid_argument("nearest_neighbors: bad neighbor count");
    std::vector<std::vector<int>> out(n);
    std::vector<std::pair<double, int>> d(n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q)
            d[q] = {vdot(vsub(mesh.nodes[q], mesh.nodes[p], mesh.m),
                         vsub(mesh.nodes[q], mesh.nodes[p], mesh.m), mesh.m),
                    q};
        d[p].first = std::numeric_limits<double>::infinity();
        std::partial_sort(d.begin(), d.begin() + k, d.end());
        out[p].reserve(k);
        for (int i = 0; i < k; ++i) out[p].push_back(d[i].second);
    }
    return out;
}

} // namespace lamehardy
