// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/mesh.hpp"

#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace nudf {

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[std::size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

Box3 TriangleMesh::bounding_box() const {
    Box3 box;
    for (const auto& v : vertices) box.extend(v);
    return box;
}

double TriangleMesh::triangle_area(int tri) const {
    const Vec3 a = triangle_vertex(tri, 0);
    const Vec3 b = triangle_vertex(tri, 1);
    const Vec3 c = triangle_vertex(tri, 2);
    return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 TriangleMesh::face_normal(int tri) const {
    const Vec3 a = triangle_vertex(tri, 0);
    const Vec3 n = (triangle_vertex(tri, 1) - a).cross(triangle_vertex(tri, 2) - a);
    const double len = n.norm();
    return len > 0 ? Vec3(n / len) : Vec3::Zero();
}

double TriangleMesh::total_area() const {
    double area = 0;
    for (int t = 0; t < int(triangles.size()); ++t) area += triangle_area(t);
    return area;
}

TriangleMesh TriangleMesh::transformed(const NormalizeTransform& t) const {
    TriangleMesh out = *this;
    for (auto& v : out.vertices) v = t.apply(v);
    return out;
}

std::uint64_t TriangleMesh::content_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& v : vertices) {
        const float f[3] = {float(v.x()), float(v.y()), float(v.z())};
        h = fnv1a64(f, sizeof(f), h);
    }
    for (const auto& t : triangles) {
        const std::int32_t idx[3] = {t[0], t[1], t[2]};
        h = fnv1a64(idx, sizeof(idx), h);
    }
    return h;
}

CleanupStats cleanup_mesh(TriangleMesh& mesh) {
    CleanupStats stats;

    // Area threshold relative to the bbox scale; exact duplicates collapse to 0.
    const double diag = mesh.vertices.empty() ? 0.0 : mesh.bbox_diagonal();
    const double area_eps = 1e-14 * std::max(1.0, diag * diag);

    std::vector<Vec3i> kept;
    kept.reserve(mesh.triangles.size());
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        const Vec3i& tri = mesh.triangles[std::size_t(t)];
        const bool repeated = tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2];
        if (repeated || mesh.triangle_area(t) <= area_eps) {
            ++stats.dropped_degenerate_triangles;
            continue;
        }
        kept.push_back(tri);
    }
    mesh.triangles = std::move(kept);

    // Remap preserving original vertex order, so cleanup on an already-clean
    // mesh is the identity.
    std::vector<bool> used(mesh.vertices.size(), false);
    for (const auto& tri : mesh.triangles)
        for (int c = 0; c < 3; ++c) used[std::size_t(tri[c])] = true;

    std::vector<int> remap(mesh.vertices.size(), -1);
    std::vector<Vec3> new_vertices;
    new_vertices.reserve(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!used[v]) continue;
        remap[v] = int(new_vertices.size());
        new_vertices.push_back(mesh.vertices[v]);
    }
    for (auto& tri : mesh.triangles)
        for (int c = 0; c < 3; ++c) tri[c] = remap[std::size_t(tri[c])];
    stats.dropped_unreferenced_vertices = mesh.vertices.size() - new_vertices.size();
    mesh.vertices = std::move(new_vertices);
    return stats;
}

std::vector<Vec3> vertex_normals(const TriangleMesh& mesh) {
    std::vector<Vec3> normals(mesh.vertices.size(), Vec3::Zero());
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        const Vec3i& tri = mesh.triangles[std::size_t(t)];
        const Vec3 fn = mesh.face_normal(t);
        for (int c = 0; c < 3; ++c) {
            const Vec3 e0 = (mesh.triangle_vertex(t, (c + 1) % 3) - mesh.triangle_vertex(t, c)).normalized();
            const Vec3 e1 = (mesh.triangle_vertex(t, (c + 2) % 3) - mesh.triangle_vertex(t, c)).normalized();
            const double angle = std::acos(std::clamp(e0.dot(e1), -1.0, 1.0));
            normals[std::size_t(tri[c])] += angle * fn;
        }
    }
    for (auto& n : normals) {
        const double len = n.norm();
        if (len > 0) n /= len;
    }
    return normals;
}

SurfaceSamples area_weighted_sample(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
    if (mesh.empty()) throw InputError("area_weighted_sample: empty mesh");

    std::vector<double> cdf(mesh.triangles.size());
    double acc = 0;
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        acc += mesh.triangle_area(t);
        cdf[std::size_t(t)] = acc;
    }
    if (acc <= 0) throw InputError("area_weighted_sample: mesh has zero total area");

    const std::vector<Vec3> vnormals = vertex_normals(mesh);

    SurfaceSamples out;
    out.points.resize(n);
    out.normals.resize(n);
    out.triangle_ids.resize(n);

    parallel_for(n, [&](std::size_t i) {
        Rng rng(seed, i);
        const double u = rng.uniform() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const int t = int(std::min<std::size_t>(std::size_t(it - cdf.begin()), cdf.size() - 1));

        // Uniform barycentric coordinates via the sqrt trick.
        const double su = std::sqrt(rng.uniform());
        const double v = rng.uniform();
        const double b0 = 1.0 - su;
        const double b1 = su * (1.0 - v);
        const double b2 = su * v;

        const Vec3i& tri = mesh.triangles[std::size_t(t)];
        out.points[i] = b0 * mesh.vertices[std::size_t(tri[0])] + b1 * mesh.vertices[std::size_t(tri[1])] +
                        b2 * mesh.vertices[std::size_t(tri[2])];
        Vec3 normal = b0 * vnormals[std::size_t(tri[0])] + b1 * vnormals[std::size_t(tri[1])] +
                      b2 * vnormals[std::size_t(tri[2])];
        const double len = normal.norm();
        normal = len > 1e-12 ? Vec3(normal / len) : mesh.face_normal(t);
        out.normals[i] = normal;
        out.triangle_ids[i] = t;
    });
    return out;
}

NormalizeTransform normalization_to_unit_cube(const TriangleMesh& mesh) {
    if (mesh.vertices.empty()) throw InputError("normalization_to_unit_cube: empty mesh");
    const Box3 box = mesh.bounding_box();
    const Vec3 center = box.center();
    const double extent = box.diagonal().maxCoeff();
    NormalizeTransform t;
    t.scale = extent > 0 ? 2.0 / extent : 1.0;
    t.offset = -t.scale * center;
    return t;
}

}  // namespace nudf
