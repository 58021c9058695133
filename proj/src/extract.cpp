// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/extract.hpp"

#include "nudf/parallel.hpp"
#include "nudf/rng.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

namespace nudf {

namespace {

constexpr double kDegenerateGrad = 1e-8;
constexpr double kDedupeQuantum = 1e-7;

ExtractConfig resolve(const ExtractConfig& cfg, const DistanceField& field) {
    ExtractConfig r = cfg;
    const double diag = field.domain().diagonal().norm();
    if (r.accept_tol <= 0) r.accept_tol = 0.002 * diag;
    if (r.reseed_sigma <= 0) r.reseed_sigma = 0.02 * diag;
    if (!(r.accept_tol > 0)) throw InputError("extract: accept_tol must be positive (empty domain?)");
    if (r.max_iters < 1) throw InputError("extract: max_iters must be >= 1");
    if (r.n_initial < 1 || r.target_points < 1) throw InputError("extract: need at least one seed and one target point");
    if (r.max_rounds < 1) throw InputError("extract: max_rounds must be >= 1");
    return r;
}

struct QuantizedPoint {
    std::array<std::int64_t, 3> q;
    bool operator==(const QuantizedPoint&) const = default;
};

struct QuantizedPointHash {
    std::size_t operator()(const QuantizedPoint& p) const {
        return std::size_t(fnv1a64(p.q.data(), sizeof(p.q)));
    }
};

QuantizedPoint quantize(const Vec3& p) {
    return {{std::int64_t(std::llround(p.x() / kDedupeQuantum)), std::int64_t(std::llround(p.y() / kDedupeQuantum)),
             std::int64_t(std::llround(p.z() / kDedupeQuantum))}};
}

// Projects one batch of seeds in lockstep. Acceptance is confirmed with the
// authoritative scalar eval (the batched value may be a float fast path);
// the residual stored is that confirmed value. Slots that never converge or
// hit a degenerate gradient produce no output.
void project_batch(const DistanceField& field, const ExtractConfig& cfg, std::vector<Vec3> active,
                   std::vector<Vec3>& out_points, std::vector<double>& out_residuals) {
    const std::size_t n = active.size();
    std::vector<Vec3> accepted(n);
    std::vector<double> residual(n);
    std::vector<char> state(n, 0);  // 0 in flight, 1 accepted, 2 dropped
    std::vector<std::size_t> slot(n);
    for (std::size_t i = 0; i < n; ++i) slot[i] = i;

    std::vector<double> values;
    std::vector<Vec3> grads;
    for (int iter = 0; iter <= cfg.max_iters; ++iter) {
        if (active.empty()) break;
        const bool last = iter == cfg.max_iters;
        if (last)
            field.eval_batch(active, values);
        else
            field.eval_grad_batch(active, values, grads);

        parallel_for(active.size(), [&](std::size_t i) {
            if (values[i] <= cfg.accept_tol) {
                const double confirmed = field.eval(active[i]);
                if (confirmed <= cfg.accept_tol) {
                    accepted[slot[i]] = active[i];
                    residual[slot[i]] = confirmed;
                    state[slot[i]] = 1;
                    return;
                }
            }
            if (last) {
                state[slot[i]] = 2;
                return;
            }
            const double norm = grads[i].norm();
            if (norm < kDegenerateGrad) {
                state[slot[i]] = 2;
                return;
            }
            const Vec3 step = cfg.normalize_gradient ? Vec3(grads[i] / norm) : grads[i];
            active[i] -= values[i] * step;
        });

        std::size_t kept = 0;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (state[slot[i]] == 0) {
                active[kept] = active[i];
                slot[kept] = slot[i];
                ++kept;
            }
        active.resize(kept);
        slot.resize(kept);
    }

    for (std::size_t i = 0; i < n; ++i)
        if (state[i] == 1) {
            out_points.push_back(accepted[i]);
            out_residuals.push_back(residual[i]);
        }
}

}  // namespace

ProjectionStep project_once(const DistanceField& field, const Vec3& p, bool normalize_gradient) {
    const Vec3 g = field.grad(p);
    const double norm = g.norm();
    if (norm < kDegenerateGrad) return {p, true};
    const Vec3 step = normalize_gradient ? Vec3(g / norm) : g;
    return {p - field.eval(p) * step, false};
}

std::optional<Vec3> project(const DistanceField& field, const Vec3& p, const ExtractConfig& cfg) {
    const ExtractConfig r = resolve(cfg, field);
    Vec3 q = p;
    if (field.eval(q) <= r.accept_tol) return q;
    for (int iter = 0; iter < r.max_iters; ++iter) {
        const ProjectionStep step = project_once(field, q, r.normalize_gradient);
        if (step.degenerate) return std::nullopt;
        q = step.q;
        if (field.eval(q) <= r.accept_tol) return q;
    }
    return std::nullopt;
}

DensePointCloud extract_dense_cloud(const DistanceField& field, const ExtractConfig& cfg,
                                    const std::string& field_id) {
    const ExtractConfig r = resolve(cfg, field);
    const Box3 dom = field.domain();

    DensePointCloud cloud;
    cloud.field_id = field_id;
    cloud.config = r;
    std::unordered_set<QuantizedPoint, QuantizedPointHash> seen;

    for (int round = 0; round < r.max_rounds && cloud.size() < r.target_points; ++round) {
        std::vector<Vec3> seeds;
        if (round == 0) {
            Rng rng(r.seed, 0);
            seeds.reserve(r.n_initial);
            for (std::size_t i = 0; i < r.n_initial; ++i) seeds.push_back(rng.uniform_in_box(dom));
        } else {
            // Oversubscribe slightly so rejections and duplicates do not leave
            // a geometric tail that outlives max_rounds.
            const std::size_t need = (r.target_points - cloud.size()) * 17 / 16 + 16;
            seeds.resize(need);
            parallel_for(need, [&](std::size_t j) {
                Rng rng(r.seed, std::uint64_t(round), j);
                const Vec3& base = cloud.points[j % cloud.size()];
                const Vec3 jittered = base + r.reseed_sigma * Vec3(rng.normal(), rng.normal(), rng.normal());
                seeds[j] = jittered.cwiseMax(dom.min()).cwiseMin(dom.max());
            });
        }

        std::vector<Vec3> points;
        std::vector<double> residuals;
        project_batch(field, r, std::move(seeds), points, residuals);

        if (round == 0 && points.empty())
            throw NumericalError("extract: no seed converged; the field has no near-zero set in the domain");

        for (std::size_t i = 0; i < points.size(); ++i)
            if (seen.insert(quantize(points[i])).second) {
                cloud.points.push_back(points[i]);
                cloud.residuals.push_back(residuals[i]);
            }
    }

    cloud.shortfall = cloud.size() < r.target_points;
    return cloud;
}

}  // namespace nudf
