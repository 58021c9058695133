// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace nudf {

namespace {

constexpr int kLeafSize = 16;

}  // namespace

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
    if (points_.empty()) return;
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    root_ = build(0, int(points_.size()));
}

int KdTree::build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    node.box.setEmpty();
    for (int i = begin; i < end; ++i) node.box.extend(points_[std::size_t(order_[std::size_t(i)])]);

    int id = int(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= kLeafSize) return id;

    Vec3 extent = node.box.sizes();
    int axis = 0;
    if (extent.y() > extent.x()) axis = 1;
    if (extent.z() > extent[axis]) axis = 2;

    int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int a, int b) {
        double ca = points_[std::size_t(a)][axis];
        double cb = points_[std::size_t(b)][axis];
        if (ca != cb) return ca < cb;
        return a < b;
    });

    int left = build(begin, mid);
    int right = build(mid, end);
    nodes_[std::size_t(id)].left = left;
    nodes_[std::size_t(id)].right = right;
    return id;
}

void KdTree::knn_recurse(int node_id, const Vec3& query, int k,
                         std::vector<std::pair<double, int>>& heap) const {
    const Node& node = nodes_[std::size_t(node_id)];
    if (int(heap.size()) == k && node.box.squaredExteriorDistance(query) > heap.front().first) return;

    if (node.leaf()) {
        for (int i = node.begin; i < node.end; ++i) {
            int idx = order_[std::size_t(i)];
            double d = (points_[std::size_t(idx)] - query).squaredNorm();
            std::pair<double, int> entry(d, idx);
            if (int(heap.size()) < k) {
                heap.push_back(entry);
                std::push_heap(heap.begin(), heap.end());
            } else if (entry < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = entry;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }

    double dl = nodes_[std::size_t(node.left)].box.squaredExteriorDistance(query);
    double dr = nodes_[std::size_t(node.right)].box.squaredExteriorDistance(query);
    int first = node.left;
    int second = node.right;
    if (dr < dl) {
        std::swap(first, second);
    }
    knn_recurse(first, query, k, heap);
    knn_recurse(second, query, k, heap);
}

std::vector<int> KdTree::knn(const Vec3& query, int k) const {
    std::vector<int> result;
    if (root_ < 0 || k <= 0) return result;
    std::vector<std::pair<double, int>> heap;
    heap.reserve(std::size_t(k));
    knn_recurse(root_, query, k, heap);
    std::sort_heap(heap.begin(), heap.end());
    result.reserve(heap.size());
    for (const auto& [d, idx] : heap) result.push_back(idx);
    return result;
}

void KdTree::radius_recurse(int node_id, const Vec3& query, double radius_sq, std::vector<int>& out) const {
    const Node& node = nodes_[std::size_t(node_id)];
    if (node.box.squaredExteriorDistance(query) > radius_sq) return;
    if (node.leaf()) {
        for (int i = node.begin; i < node.end; ++i) {
            int idx = order_[std::size_t(i)];
            if ((points_[std::size_t(idx)] - query).squaredNorm() <= radius_sq) out.push_back(idx);
        }
        return;
    }
    radius_recurse(node.left, query, radius_sq, out);
    radius_recurse(node.right, query, radius_sq, out);
}

std::vector<int> KdTree::in_radius(const Vec3& query, double radius) const {
    std::vector<int> out;
    if (root_ < 0 || radius < 0.0) return out;
    radius_recurse(root_, query, radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool KdTree::any_recurse(int node_id, const Vec3& query, double radius_sq) const {
    const Node& node = nodes_[std::size_t(node_id)];
    if (node.box.squaredExteriorDistance(query) > radius_sq) return false;
    if (node.leaf()) {
        for (int i = node.begin; i < node.end; ++i) {
            int idx = order_[std::size_t(i)];
            if ((points_[std::size_t(idx)] - query).squaredNorm() <= radius_sq) return true;
        }
        return false;
    }
    return any_recurse(node.left, query, radius_sq) || any_recurse(node.right, query, radius_sq);
}

bool KdTree::any_in_radius(const Vec3& query, double radius) const {
    if (root_ < 0 || radius < 0.0) return false;
    return any_recurse(root_, query, radius * radius);
}

int KdTree::nearest(const Vec3& query) const {
    std::vector<int> n = knn(query, 1);
    return n.empty() ? -1 : n[0];
}

}  // namespace nudf
