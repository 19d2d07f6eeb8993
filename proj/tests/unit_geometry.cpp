#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>

#include "lamehardy/geometry.hpp"

using namespace lamehardy;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

} // namespace

TEST_CASE("gauss-legendre rule integrates high-degree monomials") {
    std::vector<double> x, w;
    detail::gauss_legendre(5, x, w);
    REQUIRE(x.size() == 5);
    double s8 = 0.0, s0 = 0.0;
    for (int i = 0; i < 5; ++i) {
        s0 += w[i];
        s8 += w[i] * std::pow(x[i], 8);
    }
    CHECK(std::abs(s0 - 2.0) < 1e-14);          // degree 0
    CHECK(std::abs(s8 - 2.0 / 9.0) < 1e-14);    // degree 8 <= 2n-1
    // symmetry of nodes
    for (int i = 0; i < 5; ++i) CHECK(std::abs(x[i] + x[4 - i]) < 1e-14);
}

TEST_CASE("icosphere face counts and node placement") {
    for (int level = 0; level <= 3; ++level) {
        auto mesh = build_sphere_surface(3, level);
        const std::size_t expect = 20u << (2 * level);
        REQUIRE(mesh.size() == expect);
        REQUIRE(mesh.normals.size() == expect);
        REQUIRE(mesh.weights.size() == expect);
        REQUIRE(mesh.frames.size() == expect);
        for (std::size_t q = 0; q < mesh.size(); ++q) {
            CHECK(std::abs(vnorm(mesh.nodes[q], 3) - 1.0) < 1e-12);
            CHECK(std::abs(vnorm(mesh.normals[q], 3) - 1.0) < 1e-12);
            // radial normal, star-shaped about the center
            CHECK(vdot(mesh.normals[q], mesh.nodes[q], 3) > 0.9);
        }
    }
}

TEST_CASE("sphere areas are exact and the first moment closes") {
    for (int level = 2; level <= 4; ++level) {
        auto mesh = build_sphere_surface(3, level);
        const double area = mesh.area();
        CHECK(rel_err(area, 4.0 * std::numbers::pi) < 1e-10);
        Vec moment{};
        for (std::size_t q = 0; q < mesh.size(); ++q)
            for (int i = 0; i < 3; ++i) moment[i] += mesh.weights[q] * mesh.normals[q][i];
        CHECK(vnorm(moment, 3) < 1e-8 * area);
    }
}

TEST_CASE("scaled and shifted sphere keeps exact area and radial normals") {
    Vec c{};
    c[0] = 0.3; c[1] = -1.0; c[2] = 0.25;
    auto mesh = build_sphere_surface(3, 3, 2.5, c);
    CHECK(rel_err(mesh.area(), 4.0 * std::numbers::pi * 2.5 * 2.5) < 1e-10);
    for (std::size_t q = 0; q < mesh.size(); q += 17) {
        const Vec r = vsub(mesh.nodes[q], c, 3);
        CHECK(std::abs(vnorm(r, 3) - 2.5) < 1e-12);
        CHECK(std::abs(vdot(mesh.normals[q], r, 3) - 2.5) < 1e-12);
    }
}

TEST_CASE("tangent frames are orthonormal and orthogonal to the normal") {
    for (int m : {3, 4}) {
        auto mesh = build_sphere_surface(m, m == 3 ? 2 : 0);
        for (std::size_t q = 0; q < mesh.size(); q += 7) {
            const auto& fr = mesh.frames[q];
            for (int i = 0; i < m - 1; ++i) {
                CHECK(std::abs(vnorm(fr[i], m) - 1.0) < 1e-10);
                CHECK(std::abs(vdot(fr[i], mesh.normals[q], m)) < 1e-10);
                for (int j = i + 1; j < m - 1; ++j)
                    CHECK(std::abs(vdot(fr[i], fr[j], m)) < 1e-10);
            }
        }
    }
}

TEST_CASE("characteristic spacing shrinks under refinement") {
    double prev = 0.0;
    for (int level = 1; level <= 4; ++level) {
        auto mesh = build_sphere_surface(3, level);
        REQUIRE(mesh.h > 0.0);
        if (level > 1) CHECK(mesh.h < 0.6 * prev);
        prev = mesh.h;
    }
    prev = 0.0;
    for (int level = 0; level <= 2; ++level) {
        auto mesh = build_sphere_surface(4, level);
        REQUIRE(mesh.h > 0.0);
        if (level > 0) CHECK(mesh.h < 0.6 * prev);
        prev = mesh.h;
    }
}

TEST_CASE("three-sphere product grid: counts, area, moment") {
    for (int level = 0; level <= 1; ++level) {
        auto mesh = build_sphere_surface(4, level);
        const std::size_t n1 = 4u << level, nphi = 8u << level;
        REQUIRE(mesh.size() == n1 * n1 * nphi);
        const double want = 2.0 * std::numbers::pi * std::numbers::pi;
        CHECK(rel_err(mesh.area(), want) < (level == 0 ? 1e-2 : 1e-8));
        for (std::size_t q = 0; q < mesh.size(); q += 23) {
            CHECK(std::abs(vnorm(mesh.nodes[q], 4) - 1.0) < 1e-12);
            CHECK(std::abs(vdot(mesh.normals[q], mesh.nodes[q], 4) - 1.0) < 1e-12);
        }
        Vec moment{};
        for (std::size_t q = 0; q < mesh.size(); ++q)
            for (int i = 0; i < 4; ++i) moment[i] += mesh.weights[q] * mesh.normals[q][i];
        CHECK(vnorm(moment, 4) < 1e-8 * mesh.area());
    }
}

TEST_CASE("ellipsoid mesh satisfies the divergence identity") {
    Vec radii{};
    radii[0] = 1.0; radii[1] = 0.8; radii[2] = 1.3;
    Vec c{};
    c[0] = 0.1;
    auto mesh = build_ellipsoid_surface(4, radii, c);
    REQUIRE(mesh.size() == 20u << 8);
    // div y = 3 over the solid: sum w n.(y-c) ~ 3 |Omega|
    double flux = 0.0;
    for (std::size_t q = 0; q < mesh.size(); ++q)
        flux += mesh.weights[q] * vdot(mesh.normals[q], vsub(mesh.nodes[q], c, 3), 3);
    const double vol = 4.0 / 3.0 * std::numbers::pi * radii[0] * radii[1] * radii[2];
    CHECK(rel_err(flux, 3.0 * vol) < 5e-3);
    for (std::size_t q = 0; q < mesh.size(); q += 29) {
        CHECK(std::abs(vnorm(mesh.normals[q], 3) - 1.0) < 1e-12);
        CHECK(vdot(mesh.normals[q], vsub(mesh.nodes[q], c, 3), 3) > 0.0);
        CHECK(mesh.weights[q] > 0.0);
    }
}

TEST_CASE("shape descriptor classifies interior points and surface distance") {
    auto mesh = build_sphere_surface(3, 1, 2.0);
    Vec in{}, out{};
    in[0] = 1.0;
    out[0] = 2.5;
    CHECK(mesh.desc.contains(in));
    CHECK(!mesh.desc.contains(out));
    CHECK(std::abs(mesh.desc.distance_to_surface(in) - 1.0) < 1e-12);
    CHECK(std::abs(mesh.desc.distance_to_surface(out) - 0.5) < 1e-12);
}

TEST_CASE("ball volume grid integrates constants and odd moments") {
    for (int m : {3, 4}) {
        auto grid = build_ball_volume(m, 2);
        const double vol = std::pow(std::numbers::pi, 0.5 * m) /
                           std::tgamma(0.5 * m + 1.0);
        CHECK(rel_err(grid.total_weight(), vol) < 1e-8);
        double x1 = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            x1 += grid.weights[i] * grid.points[i][0];
        CHECK(std::abs(x1) < 1e-10 * vol);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(vnorm(grid.points[i], m) < 1.0);
            CHECK(grid.guard_radius[i] > 0.0);
        }
    }
}

TEST_CASE("ball volume grid integrates a radial polynomial") {
    auto grid = build_ball_volume(3, 1, 1.5);
    // integral of |x|^2 over ball radius R: 4 pi R^5 / 5
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += grid.weights[i] * vdot(grid.points[i], grid.points[i], 3);
    const double want = 4.0 * std::numbers::pi * std::pow(1.5, 5) / 5.0;
    CHECK(rel_err(s, want) < 1e-10);
}

TEST_CASE("probe pairs straddle the surface") {
    auto mesh = build_sphere_surface(3, 2);
    auto [in, out] = probe_pair(mesh, 5, 0.1);
    CHECK(std::abs(vnorm(in, 3) - 0.9) < 1e-12);
    CHECK(std::abs(vnorm(out, 3) - 1.1) < 1e-12);
    CHECK(mesh.desc.contains(in));
    CHECK(!mesh.desc.contains(out));
    CHECK_THROWS_AS(probe_pair(mesh, mesh.size(), 0.1), std::out_of_range);
    CHECK_THROWS_AS(probe_pair(mesh, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(probe_pair(mesh, 0, 2.5), std::invalid_argument);
}

TEST_CASE("nearest neighbor lists are sane") {
    auto mesh = build_sphere_surface(3, 1);
    auto nn = nearest_neighbors(mesh, 6);
    REQUIRE(nn.size() == mesh.size());
    for (std::size_t p = 0; p < mesh.size(); ++p) {
        REQUIRE(nn[p].size() == 6);
        std::set<int> uniq(nn[p].begin(), nn[p].end());
        CHECK(uniq.size() == 6);
        CHECK(uniq.find((int)p) == uniq.end());
        double prev = 0.0;
        for (int q : nn[p]) {
            const double d = vnorm(vsub(mesh.nodes[q], mesh.nodes[p], 3), 3);
            CHECK(d >= prev - 1e-15);
            prev = d;
        }
        // nearest node is within a couple of cell widths
        const double d0 = vnorm(vsub(mesh.nodes[nn[p][0]], mesh.nodes[p], 3), 3);
        CHECK(d0 < 2.0 * mesh.h);
    }
    CHECK_THROWS_AS(nearest_neighbors(mesh, 0), std::invalid_argument);
}

TEST_CASE("mesh construction is deterministic") {
    auto a = build_sphere_surface(3, 2);
    auto b = build_sphere_surface(3, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
        CHECK(a.nodes[q] == b.nodes[q]);
        CHECK(a.weights[q] == b.weights[q]);
        for (int i = 0; i < 2; ++i) CHECK(a.frames[q][i] == b.frames[q][i]);
    }
}

TEST_CASE("constructor guards") {
    CHECK_THROWS_AS(build_sphere_surface(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_sphere_surface(3, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_sphere_surface(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_sphere_surface(3, 1, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_ball_volume(5, 1), std::invalid_argument);
    Vec bad{};
    bad[0] = 1.0; bad[1] = -1.0; bad[2] = 1.0;
    CHECK_THROWS_AS(build_ellipsoid_surface(2, bad), std::invalid_argument);
}
