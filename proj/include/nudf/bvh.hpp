// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/mesh.hpp"

#include <optional>
#include <vector>

namespace nudf {

struct DistanceResult {
    double distance = 0;   // unsigned, same units as the mesh
    Vec3 closest_point = Vec3::Zero();
    int triangle_id = -1;
};

struct RayHit {
    double t = 0;          // in units of |direction|
    int triangle_id = -1;
};

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Immutable AABB hierarchy over triangles (median split on the longest centroid
// axis, at most 4 triangles per leaf). Build is single threaded and
// deterministic; queries are safe to run concurrently.
class MeshIndex {
public:
    explicit MeshIndex(TriangleMesh mesh);

    const TriangleMesh& mesh() const { return mesh_; }
    std::size_t node_count() const { return nodes_.size(); }

    // Exact distance to the nearest triangle (vertex, edge and interior cases).
    DistanceResult unsigned_distance(const Vec3& p) const;

    // Elementwise unsigned_distance, parallel over points, order preserved.
    std::vector<double> batch_unsigned_distance(const std::vector<Vec3>& points) const;

    // Nearest intersection with t in (t_min, t_max], or none. Triangle edges
    // count as hits on both sides so axis rays through shared edges never slip
    // through. Ties on t resolve to the smallest triangle id.
    std::optional<RayHit> ray_first_hit(const Vec3& origin, const Vec3& direction, double t_min,
                                        double t_max) const;

private:
    struct Node {
        Box3 box;
        int left = -1;    // internal: child node ids
        int right = -1;
        int begin = 0;    // leaf: range into order_
        int count = 0;    // 0 for internal nodes
    };

    int build(int begin, int end, std::vector<Vec3>& centroids);

    TriangleMesh mesh_;
    std::vector<Node> nodes_;
    std::vector<int> order_;  // triangle ids, permuted so leaves are contiguous
};

inline MeshIndex build_index(const TriangleMesh& mesh) { return MeshIndex(mesh); }

}  // namespace nudf
