// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/types.hpp"

#include <cstddef>
#include <vector>

namespace nudf {

// Static kd-tree over a fixed point set. Queries are exact; neighbours are
// ordered by distance with the point index as tie break, so results do not
// depend on build or traversal order.
class KdTree {
public:
    KdTree() = default;
    explicit KdTree(std::vector<Vec3> points);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<Vec3>& points() const { return points_; }
    const Vec3& point(int i) const { return points_[std::size_t(i)]; }

    // Indices of the k nearest points, ascending by distance (fewer than k
    // only when the set is smaller). The query point itself is returned if it
    // is part of the set.
    std::vector<int> knn(const Vec3& query, int k) const;

    // Indices of all points with |p - query| <= radius, ascending by index.
    std::vector<int> in_radius(const Vec3& query, double radius) const;

    // True as soon as any point satisfies |p - query| <= radius.
    bool any_in_radius(const Vec3& query, double radius) const;

    // Index of the nearest point, or -1 on an empty tree.
    int nearest(const Vec3& query) const;

private:
    struct Node {
        Box3 box;
        int begin = 0;
        int end = 0;     // leaf payload: order_[begin, end)
        int left = -1;   // internal nodes point at children instead
        int right = -1;
        bool leaf() const { return left < 0; }
    };

    int build(int begin, int end);
    void knn_recurse(int node, const Vec3& query, int k, std::vector<std::pair<double, int>>& heap) const;
    void radius_recurse(int node, const Vec3& query, double radius_sq, std::vector<int>& out) const;
    bool any_recurse(int node, const Vec3& query, double radius_sq) const;

    std::vector<Vec3> points_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace nudf
