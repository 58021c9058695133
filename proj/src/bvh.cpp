// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/bvh.hpp"

#include "nudf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nudf {

namespace {

constexpr int kLeafSize = 4;
constexpr double kBaryEps = 1e-9;  // inclusive-edge tolerance, barycentric units

double squared_box_distance(const Box3& box, const Vec3& p) {
    double d2 = 0;
    for (int c = 0; c < 3; ++c) {
        const double lo = box.min()[c] - p[c];
        const double hi = p[c] - box.max()[c];
        const double d = std::max({lo, hi, 0.0});
        d2 += d * d;
    }
    return d2;
}

// Slab test against [t_lo, t_hi]; inv may hold infinities for axis-parallel rays.
bool ray_intersects_box(const Box3& box, const Vec3& origin, const Vec3& inv, double t_lo, double t_hi) {
    for (int c = 0; c < 3; ++c) {
        if (std::isinf(inv[c])) {
            if (origin[c] < box.min()[c] || origin[c] > box.max()[c]) return false;
            continue;
        }
        double t0 = (box.min()[c] - origin[c]) * inv[c];
        double t1 = (box.max()[c] - origin[c]) * inv[c];
        if (t0 > t1) std::swap(t0, t1);
        t_lo = std::max(t_lo, t0);
        t_hi = std::min(t_hi, t1);
        if (t_lo > t_hi) return false;
    }
    return true;
}

// Moller-Trumbore with inclusive edges; returns t in direction-length units.
std::optional<double> ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                                   const Vec3& c) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    const double scale = e1.cross(e2).norm() * dir.norm();
    if (std::abs(det) <= 1e-12 * scale) return std::nullopt;  // parallel or degenerate
    const double inv = 1.0 / det;
    const Vec3 tvec = origin - a;
    const double u = tvec.dot(pvec) * inv;
    if (u < -kBaryEps || u > 1 + kBaryEps) return std::nullopt;
    const Vec3 qvec = tvec.cross(e1);
    const double v = dir.dot(qvec) * inv;
    if (v < -kBaryEps || u + v > 1 + kBaryEps) return std::nullopt;
    return e2.dot(qvec) * inv;
}

}  // namespace

// Ericson's region walk: classify p against the triangle's Voronoi regions.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + (d1 / (d1 - d3)) * ab;

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + (d2 / (d2 - d6)) * ac;

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && d4 - d3 >= 0 && d5 - d6 >= 0) return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);

    const double denom = 1.0 / (va + vb + vc);
    return a + (vb * denom) * ab + (vc * denom) * ac;
}

MeshIndex::MeshIndex(TriangleMesh mesh) : mesh_(std::move(mesh)) {
    if (mesh_.empty()) throw InputError("build_index: empty mesh");

    const int n = int(mesh_.triangles.size());
    order_.resize(std::size_t(n));
    std::iota(order_.begin(), order_.end(), 0);

    std::vector<Vec3> centroids(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        centroids[std::size_t(t)] =
            (mesh_.triangle_vertex(t, 0) + mesh_.triangle_vertex(t, 1) + mesh_.triangle_vertex(t, 2)) / 3.0;

    nodes_.reserve(std::size_t(2 * n / kLeafSize + 2));
    build(0, n, centroids);
}

int MeshIndex::build(int begin, int end, std::vector<Vec3>& centroids) {
    const int id = int(nodes_.size());
    nodes_.emplace_back();

    Box3 box;
    Box3 centroid_box;
    for (int i = begin; i < end; ++i) {
        const int t = order_[std::size_t(i)];
        for (int c = 0; c < 3; ++c) box.extend(mesh_.triangle_vertex(t, c));
        centroid_box.extend(centroids[std::size_t(t)]);
    }
    nodes_[std::size_t(id)].box = box;

    if (end - begin <= kLeafSize) {
        nodes_[std::size_t(id)].begin = begin;
        nodes_[std::size_t(id)].count = end - begin;
        return id;
    }

    int axis;
    centroid_box.diagonal().maxCoeff(&axis);
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int lhs, int rhs) {
        const double cl = centroids[std::size_t(lhs)][axis];
        const double cr = centroids[std::size_t(rhs)][axis];
        return cl < cr || (cl == cr && lhs < rhs);
    });

    const int left = build(begin, mid, centroids);
    const int right = build(mid, end, centroids);
    nodes_[std::size_t(id)].left = left;
    nodes_[std::size_t(id)].right = right;
    return id;
}

DistanceResult MeshIndex::unsigned_distance(const Vec3& p) const {
    DistanceResult best;
    double best_sq = std::numeric_limits<double>::infinity();

    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[std::size_t(stack[--top])];
        if (squared_box_distance(node.box, p) > best_sq) continue;
        if (node.count > 0) {
            for (int i = node.begin; i < node.begin + node.count; ++i) {
                const int t = order_[std::size_t(i)];
                const Vec3 q = closest_point_on_triangle(p, mesh_.triangle_vertex(t, 0), mesh_.triangle_vertex(t, 1),
                                                         mesh_.triangle_vertex(t, 2));
                const double d2 = (p - q).squaredNorm();
                if (d2 < best_sq || (d2 == best_sq && t < best.triangle_id)) {
                    best_sq = d2;
                    best.closest_point = q;
                    best.triangle_id = t;
                }
            }
        } else {
            // Visit the nearer child first so pruning kicks in sooner.
            const double dl = squared_box_distance(nodes_[std::size_t(node.left)].box, p);
            const double dr = squared_box_distance(nodes_[std::size_t(node.right)].box, p);
            const int near = dl <= dr ? node.left : node.right;
            const int far = dl <= dr ? node.right : node.left;
            stack[top++] = far;
            stack[top++] = near;
        }
    }
    best.distance = std::sqrt(best_sq);
    return best;
}

std::vector<double> MeshIndex::batch_unsigned_distance(const std::vector<Vec3>& points) const {
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) { out[i] = unsigned_distance(points[i]).distance; });
    return out;
}

std::optional<RayHit> MeshIndex::ray_first_hit(const Vec3& origin, const Vec3& direction, double t_min,
                                               double t_max) const {
    const Vec3 inv = direction.cwiseInverse();
    std::optional<RayHit> best;

    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[std::size_t(stack[--top])];
        const double t_hi = best ? best->t : t_max;
        if (!ray_intersects_box(node.box, origin, inv, t_min, t_hi)) continue;
        if (node.count > 0) {
            for (int i = node.begin; i < node.begin + node.count; ++i) {
                const int t = order_[std::size_t(i)];
                const auto hit = ray_triangle(origin, direction, mesh_.triangle_vertex(t, 0),
                                              mesh_.triangle_vertex(t, 1), mesh_.triangle_vertex(t, 2));
                if (!hit || *hit <= t_min || *hit > t_max) continue;
                if (!best || *hit < best->t || (*hit == best->t && t < best->triangle_id)) best = RayHit{*hit, t};
            }
        } else {
            stack[top++] = node.right;
            stack[top++] = node.left;
        }
    }
    return best;
}

}  // namespace nudf
