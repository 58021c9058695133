// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nudf {

enum class CoordinateFrame { WorldMm, Normalized };

// Indexed triangle surface. Possibly open, possibly multi-component.
// Invariants after cleanup(): all indices valid, no zero-area triangle,
// no unreferenced vertex.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3i> triangles;
    CoordinateFrame frame = CoordinateFrame::WorldMm;

    bool empty() const { return triangles.empty(); }
    Box3 bounding_box() const;
    double bbox_diagonal() const { return bounding_box().diagonal().norm(); }

    Vec3 triangle_vertex(int tri, int corner) const { return vertices[std::size_t(triangles[std::size_t(tri)][corner])]; }
    double triangle_area(int tri) const;
    Vec3 face_normal(int tri) const;  // unit; zero vector for degenerate input
    double total_area() const;

    TriangleMesh transformed(const NormalizeTransform& t) const;

    // Content hash over float32 vertex bytes and int32 triangle indices.
    std::uint64_t content_hash() const;
};

struct CleanupStats {
    std::size_t dropped_degenerate_triangles = 0;
    std::size_t dropped_unreferenced_vertices = 0;
};

// Drops zero-area triangles and unreferenced vertices; preserves order otherwise.
CleanupStats cleanup_mesh(TriangleMesh& mesh);

// Angle-weighted average of incident face normals, renormalized.
std::vector<Vec3> vertex_normals(const TriangleMesh& mesh);

// Points sampled on a mesh surface with interpolated normals and provenance.
struct SurfaceSamples {
    std::vector<Vec3> points;
    std::vector<Vec3> normals;       // unit, barycentric interpolation of vertex normals
    std::vector<int> triangle_ids;   // source triangle per sample

    std::size_t size() const { return points.size(); }
};

// Generic point cloud with optional per-point normals and one optional scalar.
struct PointCloud {
    std::vector<Vec3> points;
    std::vector<Vec3> normals;       // empty or same size as points
    std::vector<double> scalars;     // empty or same size as points
    std::string scalar_name = "quality";

    bool has_normals() const { return !normals.empty(); }
    bool has_scalars() const { return !scalars.empty(); }
    std::size_t size() const { return points.size(); }
};

// Exactly n samples; triangle selection probability proportional to area;
// deterministic per seed and independent of thread count.
SurfaceSamples area_weighted_sample(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

// Map mesh into [-1,1]^3 (centered, isotropic scale by the longest bbox axis).
NormalizeTransform normalization_to_unit_cube(const TriangleMesh& mesh);

}  // namespace nudf
