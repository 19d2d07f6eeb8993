#pragma once

#include <fstream>
#include <memory>
#include <string>

#include "json.hpp"

#include "lamehardy/errors.hpp"
#include "lamehardy/jet.hpp"

namespace lamehardy {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Multivector& v) {
    ordered_json j;
    j["m"] = v.m();
    ordered_json coeffs = ordered_json::array();
    for (std::size_t b = 0; b < v.size(); ++b) coeffs.push_back(v.coeff(b));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline Multivector multivector_from_json(const ordered_json& j) {
    const int m = j.at("m").get<int>();
    Multivector v(m);
    const auto& coeffs = j.at("coeffs");
    if (coeffs.size() != v.size())
        throw config_error("multivector: expected " + std::to_string(v.size()) + " coefficients");
    for (std::size_t b = 0; b < v.size(); ++b) v.coeff(b) = coeffs.at(b).get<double>();
    return v;
}

inline ordered_json to_json(const ShapeDescriptor& d) {
    ordered_json j;
    j["shape"] = (d.shape == SurfaceShape::sphere) ? "sphere" : "ellipsoid";
    j["m"] = d.m;
    j["level"] = d.level;
    ordered_json center = ordered_json::array(), radii = ordered_json::array();
    for (int i = 0; i < d.m; ++i) {
        center.push_back(d.center[i]);
        radii.push_back(d.radii[i]);
    }
    j["center"] = std::move(center);
    j["radii"] = std::move(radii);
    return j;
}

inline ShapeDescriptor descriptor_from_json(const ordered_json& j) {
    ShapeDescriptor d;
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "sphere")
        d.shape = SurfaceShape::sphere;
    else if (shape == "ellipsoid")
        d.shape = SurfaceShape::ellipsoid;
    else
        throw config_error("descriptor: unknown shape '" + shape + "'");
    d.m = j.at("m").get<int>();
    if (d.m < 3 || d.m > kMaxM) throw config_error("descriptor: m out of range");
    d.level = j.at("level").get<int>();
    const auto& center = j.at("center");
    const auto& radii = j.at("radii");
    if ((int)center.size() != d.m || (int)radii.size() != d.m)
        throw config_error("descriptor: center/radii must have m entries");
    for (int i = 0; i < d.m; ++i) {
        d.center[i] = center.at(i).get<double>();
        d.radii[i] = radii.at(i).get<double>();
        if (!(d.radii[i] > 0.0)) throw config_error("descriptor: radii must be positive");
    }
    return d;
}

// Meshes are never serialized node-by-node; the descriptor plus the
// deterministic builder reproduces them bit for bit.
inline std::shared_ptr<const SurfaceMesh> build_from_descriptor(const ShapeDescriptor& d) {
    if (d.shape == SurfaceShape::sphere)
        return std::make_shared<const SurfaceMesh>(
            build_sphere_surface(d.m, d.level, d.radii[0], d.center));
    if (d.m != 3) throw config_error("descriptor: ellipsoid surfaces require m = 3");
    return std::make_shared<const SurfaceMesh>(build_ellipsoid_surface(d.level, d.radii, d.center));
}

inline ordered_json to_json(const LipschitzJet& jet) {
    ordered_json j;
    j["m"] = jet.m();
    j["alpha"] = jet.alpha();
    j["mesh"] = to_json(jet.surface().desc);
    ordered_json f0 = ordered_json::array();
    ordered_json grad = ordered_json::array();
    for (std::size_t q = 0; q < jet.size(); ++q) {
        f0.push_back(to_json(jet.value(q)));
        ordered_json row = ordered_json::array();
        for (int k = 1; k <= jet.m(); ++k) row.push_back(to_json(jet.deriv(q, k)));
        grad.push_back(std::move(row));
    }
    j["f0"] = std::move(f0);
    j["grad"] = std::move(grad);
    return j;
}

inline LipschitzJet jet_from_json(const ordered_json& j) {
    const int m = j.at("m").get<int>();
    const double alpha = j.at("alpha").get<double>();
    const ShapeDescriptor desc = descriptor_from_json(j.at("mesh"));
    if (desc.m != m) throw config_error("jet: mesh dimension disagrees with jet dimension");
    auto surface = build_from_descriptor(desc);
    LipschitzJet jet(surface, alpha);
    const auto& f0 = j.at("f0");
    const auto& grad = j.at("grad");
    if (f0.size() != surface->size() || grad.size() != surface->size())
        throw config_error("jet: node count disagrees with the mesh descriptor");
    for (std::size_t q = 0; q < surface->size(); ++q) {
        jet.value(q) = multivector_from_json(f0.at(q));
        const auto& row = grad.at(q);
        if ((int)row.size() != m) throw config_error("jet: gradient rows must have m entries");
        for (int k = 1; k <= m; ++k) jet.deriv(q, k) = multivector_from_json(row.at(k - 1));
    }
    for (std::size_t q = 0; q < surface->size(); ++q) {
        if (jet.value(q).m() != m) throw config_error("jet: mixed dimensions in f0");
        for (int k = 1; k <= m; ++k)
            if (jet.deriv(q, k).m() != m) throw config_error("jet: mixed dimensions in grad");
    }
    return jet;
}

// Plain node dump for plotting or external consumers; not used for round trips.
inline ordered_json mesh_to_json(const SurfaceMesh& mesh) {
    ordered_json j;
    j["descriptor"] = to_json(mesh.desc);
    ordered_json nodes = ordered_json::array(), normals = ordered_json::array(),
                 weights = ordered_json::array();
    for (std::size_t q = 0; q < mesh.size(); ++q) {
        ordered_json node = ordered_json::array(), normal = ordered_json::array();
        for (int i = 0; i < mesh.m; ++i) {
            node.push_back(mesh.nodes[q][i]);
            normal.push_back(mesh.normals[q][i]);
        }
        nodes.push_back(std::move(node));
        normals.push_back(std::move(normal));
        weights.push_back(mesh.weights[q]);
    }
    j["nodes"] = std::move(nodes);
    j["normals"] = std::move(normals);
    j["weights"] = std::move(weights);
    return j;
}

inline void write_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open '" + path + "' for reading");
    ordered_json j;
    in >> j;
    return j;
}

} // namespace lamehardy
