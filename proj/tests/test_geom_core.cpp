// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "nudf/mesh.hpp"
#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

using namespace nudf;

namespace {

// Unit cube [0,1]^3, 8 vertices, 12 triangles, outward winding.
TriangleMesh make_unit_cube() {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    m.triangles = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                   {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
    return m;
}

TriangleMesh make_unit_square() {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("geom_core");

TEST_CASE("rng determinism and substreams") {
    Rng a(7, 0), b(7, 0), c(7, 1);
    bool identical = true, distinct = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        identical = identical && va == b.next_u64();
        distinct = distinct || va != c.next_u64();
    }
    CHECK(identical);
    CHECK(distinct);

    Rng d(7, 3, 5), e(7, 5, 3);
    CHECK(d.next_u64() != e.next_u64());
}

TEST_CASE("rng uniform moments and range") {
    Rng rng(123);
    const int n = 100000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("rng normal moments") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0, sum2 = 0, sum4 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
        sum4 += x * x * x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
    CHECK(sum4 / n == doctest::Approx(3.0).epsilon(0.1));  // gaussian kurtosis
}

TEST_CASE("rng uniform_index stays in range and is roughly flat") {
    Rng rng(5);
    const std::uint64_t buckets = 7;
    std::vector<int> hist(buckets, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        const auto k = rng.uniform_index(buckets);
        REQUIRE(k < buckets);
        ++hist[std::size_t(k)];
    }
    // 5 sigma around n/7 with sigma = sqrt(n * p * (1-p)) ~ 92.6
    for (int h : hist) CHECK(std::abs(h - n / 7) < 500);
}

TEST_CASE("rng uniform_in_box") {
    Box3 box(Vec3(-1, 2, 3), Vec3(0, 4, 3.5));
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 p = rng.uniform_in_box(box);
        CHECK(box.contains(p));
    }
}

TEST_CASE("normalize transform maps the bbox to [-1,1]^3") {
    TriangleMesh m;
    m.vertices = {{10, 0, 5}, {20, 40, 15}, {15, 20, 10}};
    m.triangles = {{0, 1, 2}};
    const NormalizeTransform t = normalization_to_unit_cube(m);
    CHECK(t.scale == doctest::Approx(0.05));
    CHECK(t.apply(Vec3(15, 20, 10)).norm() == doctest::Approx(0.0).epsilon(1e-12));
    const Vec3 corner = t.apply(Vec3(10, 0, 5));
    CHECK(corner.x() == doctest::Approx(-0.25));
    CHECK(corner.y() == doctest::Approx(-1.0));
    CHECK(corner.z() == doctest::Approx(-0.25));

    // Round trip and the row-major serialization agree with apply().
    const Vec3 p(12.3, 7.7, 9.1);
    CHECK((t.invert(t.apply(p)) - p).norm() < 1e-12);
    const auto rm = t.row_major_3x4();
    const Vec3 q(rm[0] * p.x() + rm[1] * p.y() + rm[2] * p.z() + rm[3],
                 rm[4] * p.x() + rm[5] * p.y() + rm[6] * p.z() + rm[7],
                 rm[8] * p.x() + rm[9] * p.y() + rm[10] * p.z() + rm[11]);
    CHECK((q - t.apply(p)).norm() < 1e-12);
}

TEST_CASE("triangle area and face normal") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    CHECK(m.triangle_area(0) == doctest::Approx(0.5));
    CHECK((m.face_normal(0) - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK(m.total_area() == doctest::Approx(0.5));
}

TEST_CASE("cube bbox, area, diagonal") {
    const TriangleMesh m = make_unit_cube();
    CHECK(m.total_area() == doctest::Approx(6.0));
    CHECK(m.bbox_diagonal() == doctest::Approx(std::sqrt(3.0)));
    const Box3 box = m.bounding_box();
    CHECK((box.min() - Vec3(0, 0, 0)).norm() < 1e-15);
    CHECK((box.max() - Vec3(1, 1, 1)).norm() < 1e-15);
}

TEST_CASE("cleanup drops degenerate triangles and unreferenced vertices") {
    TriangleMesh m = make_unit_square();
    m.vertices.push_back({5, 5, 5});                        // unreferenced after cleanup
    m.vertices.push_back({2, 0, 0});                        // on the x axis: collinear with v0, v1
    m.triangles.push_back({0, 1, 1});                       // repeated index
    m.triangles.push_back({0, 1, 5});                       // zero area (collinear)
    const CleanupStats stats = cleanup_mesh(m);
    CHECK(stats.dropped_degenerate_triangles == 2);
    CHECK(stats.dropped_unreferenced_vertices == 2);
    CHECK(m.vertices.size() == 4);
    CHECK(m.triangles.size() == 2);
    CHECK(m.total_area() == doctest::Approx(1.0));
}

TEST_CASE("vertex normals: flat square and cube corners") {
    const TriangleMesh square = make_unit_square();
    for (const Vec3& n : vertex_normals(square)) CHECK((n - Vec3(0, 0, 1)).norm() < 1e-12);

    // Angle-weighted normals at cube corners are (+-1,+-1,+-1)/sqrt(3) whatever
    // the face triangulation: each incident face contributes a pi/2 wedge.
    const TriangleMesh cube = make_unit_cube();
    const auto normals = vertex_normals(cube);
    for (std::size_t v = 0; v < cube.vertices.size(); ++v) {
        Vec3 expected;
        for (int c = 0; c < 3; ++c) expected[c] = cube.vertices[v][c] > 0.5 ? 1.0 : -1.0;
        expected /= std::sqrt(3.0);
        CHECK((normals[v] - expected).norm() < 1e-12);
    }
}

TEST_CASE("area weighted sampling: counts follow areas") {
    const TriangleMesh square = make_unit_square();
    const std::size_t n = 100000;
    const SurfaceSamples s = area_weighted_sample(square, n, 42);
    REQUIRE(s.size() == n);
    REQUIRE(s.normals.size() == n);
    REQUIRE(s.triangle_ids.size() == n);

    std::size_t first = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.triangle_ids[i] == 0) ++first;
        CHECK(std::abs(s.points[i].z()) < 1e-12);  // on the square plane
        CHECK(s.points[i].x() >= -1e-12);
        CHECK(s.points[i].x() <= 1 + 1e-12);
        CHECK(std::abs(s.normals[i].norm() - 1.0) < 1e-9);
    }
    // Binomial: mean 50k, sigma = sqrt(n/4) ~ 158; allow 4 sigma.
    CHECK(std::abs(double(first) - 50000.0) < 4 * 158.2);
}

TEST_CASE("area weighted sampling: barycentric membership on a single triangle") {
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 3, 0}};
    m.triangles = {{0, 1, 2}};
    const SurfaceSamples s = area_weighted_sample(m, 3, 1);
    REQUIRE(s.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec3& p = s.points[i];
        // Inside: x,y >= 0 and x/2 + y/3 <= 1.
        CHECK(p.x() >= -1e-12);
        CHECK(p.y() >= -1e-12);
        CHECK(p.x() / 2 + p.y() / 3 <= 1 + 1e-12);
        CHECK((s.normals[i] - Vec3(0, 0, 1)).norm() < 1e-12);
        CHECK(s.triangle_ids[i] == 0);
    }
}

TEST_CASE("area weighted sampling: chi-square fit against area weights") {
    // Four triangles with areas 0.5, 1, 2, 4 in one mesh.
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0},   // area 0.5
                  {3, 0, 0}, {5, 0, 0}, {3, 1, 0},   // area 1
                  {6, 0, 0}, {10, 0, 0}, {6, 1, 0},  // area 2
                  {12, 0, 0}, {20, 0, 0}, {12, 1, 0}};
    m.triangles = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}};
    const std::size_t n = 100000;
    const SurfaceSamples s = area_weighted_sample(m, n, 7);
    std::vector<double> counts(4, 0);
    for (int id : s.triangle_ids) counts[std::size_t(id)] += 1;
    const double total_area = 7.5;
    const std::vector<double> areas = {0.5, 1, 2, 4};
    double chi2 = 0;
    for (int k = 0; k < 4; ++k) {
        const double expected = double(n) * areas[std::size_t(k)] / total_area;
        chi2 += (counts[std::size_t(k)] - expected) * (counts[std::size_t(k)] - expected) / expected;
    }
    CHECK(chi2 < 16.27);  // chi-square df=3, p=0.001
}

TEST_CASE("area weighted sampling: determinism and seed sensitivity") {
    const TriangleMesh cube = make_unit_cube();
    const SurfaceSamples a = area_weighted_sample(cube, 500, 13);
    const SurfaceSamples b = area_weighted_sample(cube, 500, 13);
    const SurfaceSamples c = area_weighted_sample(cube, 500, 14);
    REQUIRE(a.size() == b.size());
    bool equal = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        equal = equal && a.points[i] == b.points[i] && a.triangle_ids[i] == b.triangle_ids[i];
    CHECK(equal);
    bool differs = false;
    for (std::size_t i = 0; i < c.size(); ++i) differs = differs || a.points[i] != c.points[i];
    CHECK(differs);
}

TEST_CASE("area weighted sampling: thread count does not change results") {
    const TriangleMesh cube = make_unit_cube();
    set_thread_count(1);
    const SurfaceSamples a = area_weighted_sample(cube, 4000, 3);
    set_thread_count(4);
    const SurfaceSamples b = area_weighted_sample(cube, 4000, 3);
    set_thread_count(0);
    bool equal = true;
    for (std::size_t i = 0; i < a.size(); ++i) equal = equal && a.points[i] == b.points[i];
    CHECK(equal);
}

TEST_CASE("area weighted sampling rejects empty input") {
    TriangleMesh empty;
    CHECK_THROWS_AS(area_weighted_sample(empty, 10, 0), InputError);
}

TEST_CASE("content hash is stable and order sensitive") {
    const TriangleMesh cube = make_unit_cube();
    TriangleMesh permuted = cube;
    std::swap(permuted.triangles[0], permuted.triangles[1]);
    CHECK(cube.content_hash() == make_unit_cube().content_hash());
    CHECK(cube.content_hash() != permuted.content_hash());
}

TEST_CASE("parallel_for covers every index exactly once") {
    const std::size_t n = 10007;
    std::vector<std::atomic<int>> hits(n);
    parallel_for(n, [&](std::size_t i) { hits[i].fetch_add(1); });
    bool all_once = true;
    for (auto& h : hits) all_once = all_once && h.load() == 1;
    CHECK(all_once);
}

TEST_CASE("parallel_chunks partitions into disjoint ranges") {
    const std::size_t n = 1000;
    std::vector<int> hits(n, 0);
    parallel_chunks(n, 64, [&](std::size_t b, std::size_t e) {
        REQUIRE(b < e);
        CHECK(e - b <= 64);
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == int(n));
}

TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
        if (i == 57) throw InputError("boom");
    }), InputError);
}

TEST_SUITE_END();
