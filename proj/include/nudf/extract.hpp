// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/field.hpp"
#include "nudf/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nudf {

// Dense surface extraction: project seeds onto the field's zero set by
// stepping q = p - eval(p) * g, re-seeding around accepted points until the
// target count is reached.
struct ExtractConfig {
    std::size_t n_initial = 100000;     // uniform seeds in round 0
    std::size_t target_points = 100000;
    int max_iters = 10;                 // projection steps per seed
    double accept_tol = -1;             // <=0: auto, 0.002 * domain diagonal
    double reseed_sigma = -1;           // <=0: auto, 0.02 * domain diagonal
    int max_rounds = 8;                 // total rounds, counting round 0
    bool normalize_gradient = true;     // step along g/|g| instead of raw g
    std::uint64_t seed = 0;
};

// Extraction output. Every point has been re-evaluated: residuals[i] =
// field.eval(points[i]) <= the resolved acceptance tolerance. shortfall is
// set when max_rounds ran out before target_points were accepted.
struct DensePointCloud {
    std::vector<Vec3> points;
    std::vector<double> residuals;
    std::string field_id;
    ExtractConfig config;       // echo, with accept_tol/reseed_sigma resolved
    bool shortfall = false;

    std::size_t size() const { return points.size(); }
};

struct ProjectionStep {
    Vec3 q;
    bool degenerate = false;    // |grad| < 1e-8: the seed sits on the medial set
};

// One projection step. With normalize_gradient the step length is exactly
// eval(p); otherwise the raw gradient scales it.
ProjectionStep project_once(const DistanceField& field, const Vec3& p, bool normalize_gradient);

// Full projection of one seed: up to max_iters steps, accepted as soon as
// eval <= accept_tol (a seed already on the surface is accepted unstepped).
// Degenerate gradients and unconverged seeds yield nullopt.
std::optional<Vec3> project(const DistanceField& field, const Vec3& p, const ExtractConfig& cfg);

// Round 0 projects n_initial uniform seeds; later rounds perturb accepted
// points with Gaussian noise (reseed_sigma) and re-project, until
// target_points distinct points are accepted or max_rounds is exhausted.
// Duplicates are removed at 1e-7 resolution. Throws NumericalError when
// round 0 accepts nothing (the field has no near-zero set in the domain).
DensePointCloud extract_dense_cloud(const DistanceField& field, const ExtractConfig& cfg,
                                    const std::string& field_id = {});

}  // namespace nudf
