// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/fixtures.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace nudf::fixtures {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append_mesh(TriangleMesh& dst, const TriangleMesh& src) {
    const int base = int(dst.vertices.size());
    dst.vertices.insert(dst.vertices.end(), src.vertices.begin(), src.vertices.end());
    for (const Vec3i& t : src.triangles) dst.triangles.push_back(Vec3i(t[0] + base, t[1] + base, t[2] + base));
}

}  // namespace

TriangleMesh unit_square() {
    TriangleMesh m;
    m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
    m.triangles = {Vec3i(0, 1, 2), Vec3i(0, 2, 3)};
    return m;
}

TriangleMesh rectangle(const Vec3& center, double half_x, double half_y) {
    TriangleMesh m;
    const Vec3 c = center;
    m.vertices = {c + Vec3(-half_x, -half_y, 0), c + Vec3(half_x, -half_y, 0), c + Vec3(half_x, half_y, 0),
                  c + Vec3(-half_x, half_y, 0)};
    m.triangles = {Vec3i(0, 1, 2), Vec3i(0, 2, 3)};
    return m;
}

TriangleMesh box(const Vec3& center, const Vec3& half_extents) {
    TriangleMesh m;
    const Vec3& h = half_extents;
    for (int i = 0; i < 8; ++i)
        m.vertices.push_back(center + Vec3(i & 1 ? h.x() : -h.x(), i & 2 ? h.y() : -h.y(), i & 4 ? h.z() : -h.z()));
    // +z and -z faces first so callers can find the broad faces of thin slabs.
    m.triangles = {
        Vec3i(4, 5, 7), Vec3i(4, 7, 6),  // +z
        Vec3i(0, 2, 3), Vec3i(0, 3, 1),  // -z
        Vec3i(1, 3, 7), Vec3i(1, 7, 5),  // +x
        Vec3i(0, 4, 6), Vec3i(0, 6, 2),  // -x
        Vec3i(2, 6, 7), Vec3i(2, 7, 3),  // +y
        Vec3i(0, 1, 5), Vec3i(0, 5, 4),  // -y
    };
    return m;
}

TriangleMesh icosphere(double radius, int subdivisions, const Vec3& center) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                           {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (Vec3& p : v) p.normalize();
    std::vector<Vec3i> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
                               {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
                               {3, 8, 9},   {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            v.push_back(((v[std::size_t(a)] + v[std::size_t(b)]) * 0.5).normalized());
            const int id = int(v.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<Vec3i> next;
        next.reserve(tris.size() * 4);
        for (const Vec3i& t : tris) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }
    TriangleMesh m;
    m.vertices.reserve(v.size());
    for (const Vec3& p : v) m.vertices.push_back(center + radius * p);
    m.triangles = std::move(tris);
    return m;
}

TriangleMesh hemisphere(double radius, int rings, int segments, const Vec3& center) {
    TriangleMesh m;
    m.vertices.push_back(center + Vec3(0, 0, radius));
    for (int i = 1; i <= rings; ++i) {
        const double theta = (kPi / 2) * double(i) / double(rings);
        for (int j = 0; j < segments; ++j) {
            const double az = 2 * kPi * double(j) / double(segments);
            m.vertices.push_back(center + radius * Vec3(std::sin(theta) * std::cos(az),
                                                        std::sin(theta) * std::sin(az), std::cos(theta)));
        }
    }
    auto ring_vertex = [&](int ring, int j) { return 1 + (ring - 1) * segments + (j % segments); };
    for (int j = 0; j < segments; ++j) m.triangles.push_back(Vec3i(0, ring_vertex(1, j), ring_vertex(1, j + 1)));
    for (int i = 1; i < rings; ++i)
        for (int j = 0; j < segments; ++j) {
            const int a = ring_vertex(i, j), b = ring_vertex(i, j + 1);
            const int c = ring_vertex(i + 1, j), d = ring_vertex(i + 1, j + 1);
            m.triangles.push_back(Vec3i(a, c, d));
            m.triangles.push_back(Vec3i(a, d, b));
        }
    return m;
}

TriangleMesh torus(double major_radius, double minor_radius, int segments_major, int segments_minor,
                   const Vec3& center) {
    TriangleMesh m;
    for (int i = 0; i < segments_major; ++i) {
        const double u = 2 * kPi * double(i) / double(segments_major);
        for (int j = 0; j < segments_minor; ++j) {
            const double w = 2 * kPi * double(j) / double(segments_minor);
            const double ring = major_radius + minor_radius * std::cos(w);
            m.vertices.push_back(center +
                                 Vec3(ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(w)));
        }
    }
    auto at = [&](int i, int j) { return (i % segments_major) * segments_minor + (j % segments_minor); };
    for (int i = 0; i < segments_major; ++i)
        for (int j = 0; j < segments_minor; ++j) {
            const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
            m.triangles.push_back(Vec3i(a, b, c));
            m.triangles.push_back(Vec3i(a, c, d));
        }
    return m;
}

TriangleMesh capsule(const Vec3& a, const Vec3& b, double radius, int segments, int cap_rings) {
    // Build along +z from z=0 to z=len, then rotate z onto (b-a) and shift.
    const Vec3 axis = b - a;
    const double len = axis.norm();
    TriangleMesh m;
    m.vertices.push_back(Vec3(0, 0, -radius));  // bottom pole
    auto add_ring = [&](double ring_radius, double z) {
        for (int j = 0; j < segments; ++j) {
            const double az = 2 * kPi * double(j) / double(segments);
            m.vertices.push_back(Vec3(ring_radius * std::cos(az), ring_radius * std::sin(az), z));
        }
    };
    // Bottom cap up to its equator at z=0, then the mirrored top cap from its
    // equator at z=len up toward the top pole.
    for (int i = 1; i <= cap_rings; ++i) {
        const double theta = (kPi / 2) * double(i) / double(cap_rings);
        add_ring(radius * std::sin(theta), -radius * std::cos(theta));
    }
    for (int i = cap_rings; i >= 1; --i) {
        const double theta = (kPi / 2) * double(i) / double(cap_rings);
        add_ring(radius * std::sin(theta), len + radius * std::cos(theta));
    }
    m.vertices.push_back(Vec3(0, 0, len + radius));  // top pole
    const int rings_total = 2 * cap_rings;           // up to and including the top-most non-pole ring
    auto ring_vertex = [&](int ring, int j) { return 1 + ring * segments + (j % segments); };
    for (int j = 0; j < segments; ++j) m.triangles.push_back(Vec3i(0, ring_vertex(0, j + 1), ring_vertex(0, j)));
    for (int i = 0; i + 1 < rings_total; ++i)
        for (int j = 0; j < segments; ++j) {
            const int p = ring_vertex(i, j), q = ring_vertex(i, j + 1);
            const int r = ring_vertex(i + 1, j), s = ring_vertex(i + 1, j + 1);
            m.triangles.push_back(Vec3i(p, q, s));
            m.triangles.push_back(Vec3i(p, s, r));
        }
    const int top = int(m.vertices.size()) - 1;
    for (int j = 0; j < segments; ++j)
        m.triangles.push_back(Vec3i(top, ring_vertex(rings_total - 1, j), ring_vertex(rings_total - 1, j + 1)));

    // Orient the +z frame onto the requested axis.
    Vec3 z = len > 0 ? Vec3(axis / len) : Vec3(0, 0, 1);
    Vec3 helper = std::abs(z.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    const Vec3 x = helper.cross(z).normalized();
    const Vec3 y = z.cross(x);
    for (Vec3& p : m.vertices) p = a + x * p.x() + y * p.y() + z * p.z();
    return m;
}

TriangleMesh plate_pair(double half_width, double gap) {
    TriangleMesh m = rectangle(Vec3(0, 0, 0), half_width, half_width);
    append_mesh(m, rectangle(Vec3(0, 0, gap), half_width, half_width));
    return m;
}

DumbbellFixture dumbbell() {
    // Sphere radius tuned so the mean 45-degree-cone chord is about 40 mm:
    // mean chord = 2r * (1+cos45)/2.
    const double r = 40.0 / (2.0 * 0.85355339059327373);
    DumbbellFixture fx;
    fx.mesh = icosphere(r, 3, Vec3(-40, 0, 0));
    append_mesh(fx.mesh, icosphere(r, 3, Vec3(40, 0, 0)));
    const int sphere_tris = int(fx.mesh.triangles.size());
    double sphere_area = 0;
    for (int t = 0; t < sphere_tris; ++t) sphere_area += fx.mesh.triangle_area(t);

    // Thin plate: two parallel sheets 2 mm apart whose areas together match
    // the spheres, hung well below them so no cone ray crosses between the
    // groups at a thickness-like distance. Sheets rather than a closed box so
    // every plate normal is exactly +-z (box corners would tilt the
    // interpolated normals and leak long side-looking rays into the SD mean).
    const double half_side = std::sqrt(sphere_area / 2.0) / 2.0;
    TriangleMesh top = rectangle(Vec3(0, 0, -44), half_side, half_side);
    TriangleMesh bottom = rectangle(Vec3(0, 0, -46), half_side, half_side);
    for (Vec3i& t : bottom.triangles) std::swap(t[1], t[2]);  // outward is -z
    append_mesh(fx.mesh, top);
    append_mesh(fx.mesh, bottom);

    for (int t = 0; t < sphere_tris; ++t) fx.large_sd_triangles.push_back(t);
    for (int t = sphere_tris; t < int(fx.mesh.triangles.size()); ++t) fx.small_sd_triangles.push_back(t);
    return fx;
}

TriangleMesh appendage(int subdivisions) {
    TriangleMesh m = icosphere(1.0, subdivisions);
    const Vec3 lobe_dir[3] = {Vec3(1, 0, 0.3).normalized(), Vec3(-0.6, 0.8, 0.2).normalized(),
                              Vec3(0.2, -0.9, 0.4).normalized()};
    const double amp[3] = {0.35, 0.30, 0.25};
    const double width[3] = {0.18, 0.15, 0.12};
    for (Vec3& p : m.vertices) {
        const Vec3 u = p.normalized();
        double bump = 0;
        for (int k = 0; k < 3; ++k) bump += amp[k] * std::exp((u.dot(lobe_dir[k]) - 1.0) / width[k]);
        p = u * 12.0 * (1.0 + bump);
        p.z() *= 1.8;
    }
    return m;
}

}  // namespace nudf::fixtures
