// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/surface.hpp"

#include "nudf/bvh.hpp"
#include "nudf/kdtree.hpp"
#include "nudf/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nudf {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint64_t(std::uint32_t(b));
}

PointCloud subset_cloud(const PointCloud& cloud, const std::vector<int>& keep) {
    PointCloud out;
    out.scalar_name = cloud.scalar_name;
    out.points.reserve(keep.size());
    for (int i : keep) out.points.push_back(cloud.points[std::size_t(i)]);
    if (cloud.has_normals()) {
        out.normals.reserve(keep.size());
        for (int i : keep) out.normals.push_back(cloud.normals[std::size_t(i)]);
    }
    if (cloud.has_scalars()) {
        out.scalars.reserve(keep.size());
        for (int i : keep) out.scalars.push_back(cloud.scalars[std::size_t(i)]);
    }
    return out;
}

// Triangles listed in tri_keep (ascending), vertices compacted in input order.
TriangleMesh remap_subset(const TriangleMesh& mesh, const std::vector<int>& tri_keep) {
    TriangleMesh out;
    out.frame = mesh.frame;
    std::vector<char> referenced(mesh.vertices.size(), 0);
    for (int t : tri_keep) {
        const Vec3i& tri = mesh.triangles[std::size_t(t)];
        referenced[std::size_t(tri[0])] = 1;
        referenced[std::size_t(tri[1])] = 1;
        referenced[std::size_t(tri[2])] = 1;
    }
    std::vector<int> vmap(mesh.vertices.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < vmap.size(); ++v) {
        if (referenced[v]) {
            vmap[v] = next++;
            out.vertices.push_back(mesh.vertices[v]);
        }
    }
    out.triangles.reserve(tri_keep.size());
    for (int t : tri_keep) {
        const Vec3i& tri = mesh.triangles[std::size_t(t)];
        out.triangles.emplace_back(vmap[std::size_t(tri[0])], vmap[std::size_t(tri[1])], vmap[std::size_t(tri[2])]);
    }
    return out;
}

struct LoopSet {
    std::vector<std::vector<int>> loops;
    std::vector<double> perimeters;
};

// Boundary edges walked against the stored winding, so each returned cycle
// runs in the direction a closing triangle fan has to traverse.
LoopSet collect_boundary_loops(const TriangleMesh& mesh) {
    struct Entry {
        int count = 0;
        int a = -1;
        int b = -1;
    };
    std::unordered_map<std::uint64_t, Entry> edges;
    edges.reserve(mesh.triangles.size() * 3);
    for (const Vec3i& tri : mesh.triangles) {
        for (int c = 0; c < 3; ++c) {
            int a = tri[c];
            int b = tri[(c + 1) % 3];
            Entry& e = edges[edge_key(a, b)];
            if (e.count == 0) {
                e.a = a;
                e.b = b;
            }
            ++e.count;
        }
    }

    std::vector<std::vector<int>> outs(mesh.vertices.size());
    std::size_t boundary_count = 0;
    for (const auto& [key, e] : edges) {
        if (e.count == 1) {
            outs[std::size_t(e.b)].push_back(e.a);
            ++boundary_count;
        }
    }
    for (auto& list : outs) std::sort(list.begin(), list.end());

    LoopSet out;
    std::vector<std::size_t> cursor(outs.size(), 0);
    for (std::size_t start = 0; start < outs.size(); ++start) {
        while (cursor[start] < outs[start].size()) {
            std::vector<int> path;
            path.push_back(int(start));
            int cur = int(start);
            bool closed = false;
            for (std::size_t step = 0; step <= boundary_count; ++step) {
                if (cursor[std::size_t(cur)] >= outs[std::size_t(cur)].size()) break;
                int next = outs[std::size_t(cur)][cursor[std::size_t(cur)]++];
                if (next == int(start)) {
                    closed = true;
                    break;
                }
                path.push_back(next);
                cur = next;
            }
            if (!closed || path.size() < 3) continue;

            auto min_it = std::min_element(path.begin(), path.end());
            std::rotate(path.begin(), min_it, path.end());
            double perimeter = 0.0;
            for (std::size_t i = 0; i < path.size(); ++i) {
                const Vec3& p = mesh.vertices[std::size_t(path[i])];
                const Vec3& q = mesh.vertices[std::size_t(path[(i + 1) % path.size()])];
                perimeter += (p - q).norm();
            }
            out.loops.push_back(std::move(path));
            out.perimeters.push_back(perimeter);
        }
    }
    return out;
}

void validate_meshing_config(const MeshingConfig& cfg) {
    if (cfg.subsample_target < 4) throw InputError("meshing: subsample_target must be at least 4");
    if (cfg.knn_normals < 1) throw InputError("meshing: knn_normals must be at least 1");
    if (!(cfg.support_radius > 0.0)) throw InputError("meshing: support_radius must be positive");
    if (!(cfg.hole_max_radius >= 0.0)) throw InputError("meshing: hole_max_radius must be non-negative");
    for (double r : cfg.bpa_radii) {
        if (!std::isfinite(r) || !(r > 0.0)) throw InputError("meshing: bpa_radii entries must be positive");
    }
}

// Ball pivoting over an oriented point set. Sequential by design: the front
// evolves in strict FIFO order with index tie breaks, so the output never
// depends on thread count.
class BallPivoter {
public:
    BallPivoter(const std::vector<Vec3>& points, const std::vector<Vec3>& normals, std::vector<double> radii)
        : pts_(points), nrm_(normals), radii_(std::move(radii)), tree_(points) {
        used_.assign(pts_.size(), 0);
        open_count_.assign(pts_.size(), 0);
        max_tris_ = 8 * pts_.size() + 64;
    }

    std::vector<Vec3i> run() {
        for (std::size_t ri = 0; ri < radii_.size(); ++ri) {
            double rho = radii_[ri];
            if (ri > 0) requeue_open_edges(rho);
            run_front(rho);
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                if (try_seed(int(i), rho)) run_front(rho);
            }
        }
        return std::move(tris_);
    }

private:
    struct EdgeRec {
        int count = 0;
        int from = -1;
        int to = -1;
        int opposite = -1;
    };

    struct FrontEdge {
        int from;
        int to;
        int opposite;
        Vec3 center;
    };

    // Center of the radius-rho ball resting on the positive side of the
    // triangle wound (i, j, k); empty when the circumradius exceeds rho.
    std::optional<Vec3> ball_center(int i, int j, int k, double rho) const {
        const Vec3& p0 = pts_[std::size_t(i)];
        Vec3 e0 = pts_[std::size_t(j)] - p0;
        Vec3 e1 = pts_[std::size_t(k)] - p0;
        Vec3 n = e0.cross(e1);
        double n2 = n.squaredNorm();
        if (n2 <= 1e-20 * e0.squaredNorm() * e1.squaredNorm()) return std::nullopt;
        Vec3 circum = p0 + (e0.squaredNorm() * e1 - e1.squaredNorm() * e0).cross(n) / (2.0 * n2);
        double h2 = rho * rho - (circum - p0).squaredNorm();
        if (h2 < 0.0) return std::nullopt;
        return circum + std::sqrt(h2) * n / std::sqrt(n2);
    }

    // Strictly-inside test with a relative margin, so points lying on the
    // sphere (the defining three, cospherical grids) never count as inside.
    bool ball_empty(const Vec3& center, double rho, int i, int j, int k) const {
        for (int idx : tree_.in_radius(center, rho * std::sqrt(1.0 - 1e-7))) {
            if (idx != i && idx != j && idx != k) return false;
        }
        return true;
    }

    void emit(int i, int j, int k, const Vec3& center) {
        if (tris_.size() >= max_tris_) {
            throw NumericalError("ball pivoting exceeded the manifold triangle budget; input cloud looks degenerate");
        }
        tris_.emplace_back(i, j, k);
        used_[std::size_t(i)] = used_[std::size_t(j)] = used_[std::size_t(k)] = 1;
        attach_edge(i, j, k, center);
        attach_edge(j, k, i, center);
        attach_edge(k, i, j, center);
    }

    void attach_edge(int from, int to, int opposite, const Vec3& center) {
        EdgeRec& rec = edges_[edge_key(from, to)];
        ++rec.count;
        if (rec.count == 1) {
            rec.from = from;
            rec.to = to;
            rec.opposite = opposite;
            ++open_count_[std::size_t(from)];
            ++open_count_[std::size_t(to)];
            front_.push_back(FrontEdge{from, to, opposite, center});
        } else if (rec.count == 2) {
            --open_count_[std::size_t(from)];
            --open_count_[std::size_t(to)];
        }
    }

    // The new triangle would traverse x -> y; fine if the edge is unseen or
    // open with the opposite traversal, anything else breaks manifoldness.
    bool edge_attachable(int x, int y) const {
        auto it = edges_.find(edge_key(x, y));
        if (it == edges_.end()) return true;
        const EdgeRec& rec = it->second;
        if (rec.count >= 2) return false;
        return rec.from == y && rec.to == x;
    }

    bool try_seed(int i, double rho) {
        if (used_[std::size_t(i)]) return false;
        const Vec3& pi = pts_[std::size_t(i)];
        std::vector<std::pair<double, int>> near;
        for (int j : tree_.in_radius(pi, 2.0 * rho)) {
            if (j == i || used_[std::size_t(j)]) continue;
            near.emplace_back((pts_[std::size_t(j)] - pi).squaredNorm(), j);
        }
        std::sort(near.begin(), near.end());
        if (near.size() > 48) near.resize(48);

        for (std::size_t a = 0; a + 1 < near.size(); ++a) {
            for (std::size_t b = a + 1; b < near.size(); ++b) {
                int j = near[a].second;
                int k = near[b].second;
                Vec3 n = (pts_[std::size_t(j)] - pi).cross(pts_[std::size_t(k)] - pi);
                double side = n.dot(nrm_[std::size_t(i)] + nrm_[std::size_t(j)] + nrm_[std::size_t(k)]);
                if (side == 0.0) continue;
                if (side < 0.0) std::swap(j, k);
                std::optional<Vec3> center = ball_center(i, j, k, rho);
                if (!center) continue;
                if (!ball_empty(*center, rho, i, j, k)) continue;
                emit(i, j, k, *center);
                return true;
            }
        }
        return false;
    }

    void run_front(double rho) {
        while (!front_.empty()) {
            FrontEdge e = front_.front();
            front_.pop_front();
            auto it = edges_.find(edge_key(e.from, e.to));
            if (it == edges_.end() || it->second.count != 1) continue;
            pivot(e, rho);
        }
    }

    void pivot(const FrontEdge& e, double rho) {
        const Vec3& pa = pts_[std::size_t(e.from)];
        const Vec3& pb = pts_[std::size_t(e.to)];
        Vec3 m = 0.5 * (pa + pb);
        Vec3 axis = pb - pa;
        double alen = axis.norm();
        if (alen <= 0.0) return;
        axis /= alen;

        Vec3 u = e.center - m;
        u -= axis * axis.dot(u);
        if (u.squaredNorm() <= 1e-24 * rho * rho) return;

        struct Candidate {
            double theta;
            int idx;
            Vec3 center;
            bool operator<(const Candidate& o) const {
                if (theta != o.theta) return theta < o.theta;
                return idx < o.idx;
            }
        };
        std::vector<Candidate> cands;
        for (int k : tree_.in_radius(m, 2.0 * rho)) {
            if (k == e.from || k == e.to || k == e.opposite) continue;
            if (used_[std::size_t(k)] && open_count_[std::size_t(k)] == 0) continue;
            if (!edge_attachable(e.from, k) || !edge_attachable(k, e.to)) continue;

            const Vec3& pk = pts_[std::size_t(k)];
            Vec3 n = (pa - pb).cross(pk - pb);
            if (n.dot(nrm_[std::size_t(e.from)] + nrm_[std::size_t(e.to)] + nrm_[std::size_t(k)]) <= 0.0) continue;

            std::optional<Vec3> center = ball_center(e.to, e.from, k, rho);
            if (!center) continue;
            Vec3 v = *center - m;
            v -= axis * axis.dot(v);
            if (v.squaredNorm() <= 1e-24 * rho * rho) continue;

            double theta = std::atan2(axis.dot(u.cross(v)), u.dot(v));
            if (theta < -1e-9) {
                theta += 2.0 * kPi;
            } else if (theta < 0.0) {
                theta = 0.0;
            }
            cands.push_back(Candidate{theta, k, *center});
        }
        std::sort(cands.begin(), cands.end());

        for (const Candidate& c : cands) {
            if (!ball_empty(c.center, rho, e.from, e.to, c.idx)) continue;
            emit(e.to, e.from, c.idx, c.center);
            return;
        }
    }

    void requeue_open_edges(double rho) {
        std::vector<std::tuple<int, int, int>> open;
        for (const auto& [key, rec] : edges_) {
            if (rec.count == 1) open.emplace_back(rec.from, rec.to, rec.opposite);
        }
        std::sort(open.begin(), open.end());
        for (const auto& [from, to, opposite] : open) {
            std::optional<Vec3> center = ball_center(from, to, opposite, rho);
            if (!center) continue;
            front_.push_back(FrontEdge{from, to, opposite, *center});
        }
    }

    const std::vector<Vec3>& pts_;
    const std::vector<Vec3>& nrm_;
    std::vector<double> radii_;
    KdTree tree_;
    std::vector<char> used_;
    std::vector<int> open_count_;
    std::unordered_map<std::uint64_t, EdgeRec> edges_;
    std::deque<FrontEdge> front_;
    std::vector<Vec3i> tris_;
    std::size_t max_tris_ = 0;
};

}  // namespace

double median_knn_spacing(const PointCloud& cloud, int k) {
    if (k < 1) throw InputError("median_knn_spacing: k must be at least 1");
    std::size_t n = cloud.size();
    if (n < 2) return 0.0;
    int k_eff = int(std::min<std::size_t>(std::size_t(k), n - 1));
    KdTree tree(cloud.points);
    std::vector<double> dist(n);
    parallel_for(n, [&](std::size_t i) {
        std::vector<int> nn = tree.knn(cloud.points[i], k_eff + 1);
        dist[i] = (cloud.points[i] - cloud.points[std::size_t(nn.back())]).norm();
    });
    auto mid = dist.begin() + std::ptrdiff_t(n / 2);
    std::nth_element(dist.begin(), mid, dist.end());
    return *mid;
}

std::vector<double> resolve_bpa_radii(const PointCloud& cloud, const MeshingConfig& cfg) {
    std::vector<double> radii;
    if (!cfg.bpa_radii.empty()) {
        radii = cfg.bpa_radii;
        for (double r : radii) {
            if (!std::isfinite(r) || !(r > 0.0)) throw InputError("meshing: bpa_radii entries must be positive");
        }
    } else {
        double spacing = median_knn_spacing(cloud, 6);
        if (!(spacing > 0.0)) throw InputError("meshing: cloud spacing is degenerate, cannot derive ball radii");
        radii = {spacing, 2.0 * spacing, 4.0 * spacing};
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

PointCloud estimate_normals(const PointCloud& cloud, int k) {
    if (k < 1) throw InputError("estimate_normals: k must be at least 1");
    std::size_t n = cloud.size();
    if (n < std::size_t(k) + 1) {
        std::ostringstream oss;
        oss << "estimate_normals: cloud has " << n << " points but k = " << k << " needs at least " << (k + 1);
        throw InputError(oss.str());
    }

    KdTree tree(cloud.points);
    std::vector<std::vector<int>> neigh(n);
    std::vector<Vec3> normals(n);
    parallel_for(n, [&](std::size_t i) {
        std::vector<int> nn = tree.knn(cloud.points[i], k + 1);
        Vec3 mean = Vec3::Zero();
        for (int j : nn) mean += cloud.points[std::size_t(j)];
        mean /= double(nn.size());
        Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
        for (int j : nn) {
            Vec3 d = cloud.points[std::size_t(j)] - mean;
            cov += d * d.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
        Vec3 nrm = es.eigenvectors().col(0);
        double len = nrm.norm();
        normals[i] = len > 0.0 ? Vec3(nrm / len) : Vec3(Vec3::UnitZ());
        neigh[i] = std::move(nn);
    });

    // Sign propagation along a minimum spanning forest of the k-NN graph;
    // the weight prefers well-aligned pairs and ignores the current signs.
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j : neigh[i]) {
            if (std::size_t(j) == i) continue;
            adj[i].push_back(j);
            adj[std::size_t(j)].push_back(int(i));
        }
    }
    using QEntry = std::tuple<double, int, int>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> pq;
    std::vector<char> visited(n, 0);
    auto push_edges = [&](int v) {
        for (int j : adj[std::size_t(v)]) {
            if (!visited[std::size_t(j)]) {
                pq.emplace(1.0 - std::abs(normals[std::size_t(v)].dot(normals[std::size_t(j)])), v, j);
            }
        }
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        push_edges(int(root));
        while (!pq.empty()) {
            auto [w, from, to] = pq.top();
            pq.pop();
            if (visited[std::size_t(to)]) continue;
            visited[std::size_t(to)] = 1;
            if (normals[std::size_t(to)].dot(normals[std::size_t(from)]) < 0.0) {
                normals[std::size_t(to)] = -normals[std::size_t(to)];
            }
            push_edges(to);
        }
    }

    PointCloud out = cloud;
    out.normals = std::move(normals);
    return out;
}

PointCloud poisson_disk_subsample(const PointCloud& cloud, std::size_t target) {
    std::size_t n = cloud.size();
    if (target > n) {
        std::ostringstream oss;
        oss << "poisson_disk_subsample: target " << target << " exceeds cloud size " << n;
        throw InputError(oss.str());
    }
    if (target == n) return cloud;

    KdTree tree(cloud.points);
    Box3 box;
    box.setEmpty();
    for (const Vec3& p : cloud.points) box.extend(p);

    // Weighted sample elimination. The window is the expected survivor
    // spacing, derived by density scaling from the input spacing.
    std::vector<double> knn_dist(n);
    parallel_for(n, [&](std::size_t i) {
        std::vector<int> nn = tree.knn(cloud.points[i], int(std::min<std::size_t>(7, n)) );
        knn_dist[i] = (cloud.points[i] - cloud.points[std::size_t(nn.back())]).norm();
    });
    std::vector<double> tmp = knn_dist;
    auto mid = tmp.begin() + std::ptrdiff_t(n / 2);
    std::nth_element(tmp.begin(), mid, tmp.end());
    double spacing = *mid;
    double window = spacing * std::sqrt(double(n) / double(std::max<std::size_t>(target, 1)));
    double diag = box.diagonal().norm();
    if (diag > 0.0) window = std::min(window, 0.25 * diag);

    std::vector<double> weight(n, 0.0);
    if (window > 0.0) {
        parallel_for(n, [&](std::size_t i) {
            double acc = 0.0;
            for (int j : tree.in_radius(cloud.points[i], window)) {
                if (std::size_t(j) == i) continue;
                double x = 1.0 - (cloud.points[i] - cloud.points[std::size_t(j)]).norm() / window;
                if (x <= 0.0) continue;
                double x2 = x * x;
                double x4 = x2 * x2;
                acc += x4 * x4;
            }
            weight[i] = acc;
        });
    }

    // Indexed max-heap; the highest weight (lowest index on ties) leaves.
    std::vector<int> heap(n);
    std::iota(heap.begin(), heap.end(), 0);
    std::vector<int> pos(n);
    auto outranks = [&](int x, int y) {
        if (weight[std::size_t(x)] != weight[std::size_t(y)]) return weight[std::size_t(x)] > weight[std::size_t(y)];
        return x < y;
    };
    int heap_size = int(n);
    auto sift_down = [&](int slot) {
        while (true) {
            int l = 2 * slot + 1;
            int r = l + 1;
            int best = slot;
            if (l < heap_size && outranks(heap[std::size_t(l)], heap[std::size_t(best)])) best = l;
            if (r < heap_size && outranks(heap[std::size_t(r)], heap[std::size_t(best)])) best = r;
            if (best == slot) break;
            std::swap(heap[std::size_t(slot)], heap[std::size_t(best)]);
            pos[std::size_t(heap[std::size_t(slot)])] = slot;
            pos[std::size_t(heap[std::size_t(best)])] = best;
            slot = best;
        }
    };
    for (int i = 0; i < heap_size; ++i) pos[std::size_t(heap[std::size_t(i)])] = i;
    for (int i = heap_size / 2 - 1; i >= 0; --i) sift_down(i);

    std::vector<char> eliminated(n, 0);
    std::size_t remaining = n;
    while (remaining > target) {
        int i = heap[0];
        --heap_size;
        heap[0] = heap[std::size_t(heap_size)];
        pos[std::size_t(heap[0])] = 0;
        sift_down(0);
        eliminated[std::size_t(i)] = 1;
        --remaining;
        if (window > 0.0) {
            for (int j : tree.in_radius(cloud.points[std::size_t(i)], window)) {
                if (j == i || eliminated[std::size_t(j)]) continue;
                double x = 1.0 - (cloud.points[std::size_t(i)] - cloud.points[std::size_t(j)]).norm() / window;
                if (x <= 0.0) continue;
                double x2 = x * x;
                double x4 = x2 * x2;
                weight[std::size_t(j)] -= x4 * x4;
                sift_down(pos[std::size_t(j)]);
            }
        }
    }

    std::vector<int> keep;
    keep.reserve(target);
    for (std::size_t i = 0; i < n; ++i) {
        if (!eliminated[i]) keep.push_back(int(i));
    }
    return subset_cloud(cloud, keep);
}

TriangleMesh reconstruct(const PointCloud& cloud, const MeshingConfig& cfg) {
    validate_meshing_config(cfg);
    if (!cloud.has_normals() || cloud.normals.size() != cloud.points.size()) {
        throw InputError("reconstruct: cloud must carry oriented normals (run estimate_normals first)");
    }
    if (cloud.size() < 3) throw InputError("reconstruct: need at least 3 points");

    std::vector<double> radii = resolve_bpa_radii(cloud, cfg);
    std::vector<Vec3> unit_normals(cloud.normals.size());
    for (std::size_t i = 0; i < cloud.normals.size(); ++i) {
        double len = cloud.normals[i].norm();
        unit_normals[i] = len > 0.0 ? Vec3(cloud.normals[i] / len) : Vec3(Vec3::UnitZ());
    }

    BallPivoter pivoter(cloud.points, unit_normals, radii);
    std::vector<Vec3i> tris = pivoter.run();
    if (tris.empty()) {
        std::ostringstream oss;
        oss << "reconstruct: ball pivoting found no seed triangle; the largest radius tried was " << radii.back()
            << " against a median 6-NN spacing of " << median_knn_spacing(cloud, 6)
            << ", pass larger bpa_radii";
        throw NumericalError(oss.str());
    }

    TriangleMesh staged;
    staged.vertices = cloud.points;
    staged.triangles = std::move(tris);
    std::vector<int> all(staged.triangles.size());
    std::iota(all.begin(), all.end(), 0);
    return remap_subset(staged, all);
}

TriangleMesh cull_unsupported(const TriangleMesh& mesh, const PointCloud& support, double radius) {
    if (support.size() == 0) {
        TriangleMesh out;
        out.frame = mesh.frame;
        return out;
    }
    if (mesh.empty() || (std::isinf(radius) && radius > 0.0)) return mesh;

    KdTree tree(support.points);
    std::vector<char> keep(mesh.triangles.size(), 0);
    parallel_for(mesh.triangles.size(), [&](std::size_t t) {
        Vec3 a = mesh.triangle_vertex(int(t), 0);
        Vec3 b = mesh.triangle_vertex(int(t), 1);
        Vec3 c = mesh.triangle_vertex(int(t), 2);
        // a support point near any vertex already supports the triangle
        if (tree.any_in_radius(a, radius) || tree.any_in_radius(b, radius) || tree.any_in_radius(c, radius)) {
            keep[t] = 1;
            return;
        }
        Vec3 g = (a + b + c) / 3.0;
        double spread = std::sqrt(std::max({(a - g).squaredNorm(), (b - g).squaredNorm(), (c - g).squaredNorm()}));
        for (int j : tree.in_radius(g, radius + spread)) {
            const Vec3& p = support.points[std::size_t(j)];
            Vec3 q = closest_point_on_triangle(p, a, b, c);
            if ((p - q).squaredNorm() <= radius * radius) {
                keep[t] = 1;
                return;
            }
        }
    });

    std::vector<int> tri_keep;
    for (std::size_t t = 0; t < keep.size(); ++t) {
        if (keep[t]) tri_keep.push_back(int(t));
    }
    return remap_subset(mesh, tri_keep);
}

TriangleMesh close_small_holes(const TriangleMesh& mesh, double max_radius) {
    TriangleMesh out = mesh;
    if (mesh.empty() || !(max_radius > 0.0)) return out;

    LoopSet loops = collect_boundary_loops(mesh);
    for (std::size_t li = 0; li < loops.loops.size(); ++li) {
        const std::vector<int>& loop = loops.loops[li];
        if (loops.perimeters[li] / (2.0 * kPi) >= max_radius) continue;

        // a vertex appearing twice would overload its fan spokes
        std::vector<int> sorted = loop;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

        Vec3 centroid = Vec3::Zero();
        for (int v : loop) centroid += mesh.vertices[std::size_t(v)];
        centroid /= double(loop.size());
        int c = int(out.vertices.size());
        out.vertices.push_back(centroid);
        for (std::size_t i = 0; i < loop.size(); ++i) {
            out.triangles.emplace_back(loop[i], loop[(i + 1) % loop.size()], c);
        }
    }
    return out;
}

TriangleMesh largest_component(const TriangleMesh& mesh) {
    if (mesh.empty()) return mesh;
    std::size_t t_count = mesh.triangles.size();

    std::vector<int> parent(t_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[std::size_t(x)] != x) {
            parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            x = parent[std::size_t(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::size_t(std::max(a, b))] = std::min(a, b);
    };

    std::unordered_map<std::uint64_t, int> first_tri;
    first_tri.reserve(t_count * 3);
    for (std::size_t t = 0; t < t_count; ++t) {
        const Vec3i& tri = mesh.triangles[t];
        for (int c = 0; c < 3; ++c) {
            auto [it, inserted] = first_tri.try_emplace(edge_key(tri[c], tri[(c + 1) % 3]), int(t));
            if (!inserted) unite(int(t), it->second);
        }
    }

    std::vector<double> area(t_count, 0.0);
    std::vector<int> min_vertex(t_count, std::numeric_limits<int>::max());
    for (std::size_t t = 0; t < t_count; ++t) {
        int r = find(int(t));
        area[std::size_t(r)] += mesh.triangle_area(int(t));
        const Vec3i& tri = mesh.triangles[t];
        min_vertex[std::size_t(r)] = std::min({min_vertex[std::size_t(r)], tri[0], tri[1], tri[2]});
    }

    int best = -1;
    for (std::size_t t = 0; t < t_count; ++t) {
        if (find(int(t)) != int(t)) continue;
        if (best < 0 || area[t] > area[std::size_t(best)] ||
            (area[t] == area[std::size_t(best)] && min_vertex[t] < min_vertex[std::size_t(best)])) {
            best = int(t);
        }
    }

    std::vector<int> tri_keep;
    for (std::size_t t = 0; t < t_count; ++t) {
        if (find(int(t)) == best) tri_keep.push_back(int(t));
    }
    return remap_subset(mesh, tri_keep);
}

TriangleMesh repair_mesh(const TriangleMesh& mesh, const PointCloud& support, const MeshingConfig& cfg) {
    validate_meshing_config(cfg);
    TriangleMesh culled = cull_unsupported(mesh, support, cfg.support_radius);
    TriangleMesh closed = close_small_holes(culled, cfg.hole_max_radius);
    return largest_component(closed);
}

TriangleMesh mesh_from_cloud(const PointCloud& cloud, const MeshingConfig& cfg) {
    validate_meshing_config(cfg);
    PointCloud sub = cloud.size() > cfg.subsample_target ? poisson_disk_subsample(cloud, cfg.subsample_target) : cloud;
    PointCloud oriented = estimate_normals(sub, cfg.knn_normals);
    TriangleMesh mesh = reconstruct(oriented, cfg);
    return repair_mesh(mesh, cloud, cfg);
}

EdgeCensus edge_census(const TriangleMesh& mesh) {
    std::unordered_map<std::uint64_t, int> count;
    count.reserve(mesh.triangles.size() * 3);
    for (const Vec3i& tri : mesh.triangles) {
        for (int c = 0; c < 3; ++c) ++count[edge_key(tri[c], tri[(c + 1) % 3])];
    }
    EdgeCensus census;
    for (const auto& [key, n] : count) {
        if (n == 1) {
            ++census.boundary_edges;
        } else if (n == 2) {
            ++census.interior_edges;
        } else {
            ++census.non_manifold_edges;
        }
    }
    return census;
}

std::vector<std::vector<int>> boundary_loops(const TriangleMesh& mesh) {
    return collect_boundary_loops(mesh).loops;
}

}  // namespace nudf
