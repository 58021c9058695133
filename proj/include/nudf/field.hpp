// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/bvh.hpp"
#include "nudf/types.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nudf {

// A continuous unsigned distance function with its spatial gradient.
// eval() is total: outside the domain box the field is extended by clamping
// the query into the box and adding the clamp distance, which keeps
// projection iterates from escaping. grad() is total as well; on the exact
// medial set (where the true gradient is undefined) implementations return
// the zero vector, which callers detect as the degenerate case.
class DistanceField {
public:
    virtual ~DistanceField() = default;

    virtual double eval(const Vec3& p) const = 0;
    virtual Vec3 grad(const Vec3& p) const = 0;
    virtual Box3 domain() const = 0;

    // Batched versions, order preserved; the default loops over single calls,
    // implementations override when a vectorized path exists.
    virtual void eval_batch(const std::vector<Vec3>& points, std::vector<double>& out) const;
    virtual void eval_grad_batch(const std::vector<Vec3>& points, std::vector<double>& dist,
                                 std::vector<Vec3>& grads) const;
};

// Closed-form distance to a sphere surface |p - c| = radius.
// Medial set: the center.
class SphereField : public DistanceField {
public:
    SphereField(const Vec3& center, double radius);
    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }

private:
    Vec3 center_;
    double radius_;
    Box3 domain_;
};

// Distance to a capsule surface (radius around segment ab).
// Medial set: the segment itself.
class CapsuleField : public DistanceField {
public:
    CapsuleField(const Vec3& a, const Vec3& b, double radius);
    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }

private:
    Vec3 a_, b_;
    double radius_;
    Box3 domain_;
};

// Distance to a torus surface (z-axis symmetric around center; tube radius r
// around the circle of radius R). Medial set: the symmetry axis and the
// center circle.
class TorusField : public DistanceField {
public:
    TorusField(const Vec3& center, double major_radius, double minor_radius);
    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }

private:
    Vec3 center_;
    double major_, minor_;
    Box3 domain_;
};

// Distance to a flat open disk (center, unit normal, radius): the canonical
// open surface. Points over the face measure height; points beyond the rim
// measure distance to the rim circle.
class OpenDiskField : public DistanceField {
public:
    OpenDiskField(const Vec3& center, const Vec3& normal, double radius);
    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }

private:
    Vec3 center_, normal_;
    double radius_;
    Box3 domain_;
};

// Two parallel infinite plates at z = +-gap/2 relative to the center.
// Medial set: the mid-plane z = 0.
class PlatePairField : public DistanceField {
public:
    PlatePairField(const Vec3& center, double gap);
    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override { return domain_; }

private:
    Vec3 center_;
    double half_gap_;
    Box3 domain_;
};

// Regular grid of distance values with trilinear interpolation. values is
// float32, x-fastest; eval at a node reproduces the stored value exactly.
// grad on a cell face averages the one-sided derivatives of both cells.
class GridField : public DistanceField {
public:
    GridField(const Vec3i& dims, const Vec3& origin, const Vec3& spacing, std::vector<float> values);

    double eval(const Vec3& p) const override;
    Vec3 grad(const Vec3& p) const override;
    Box3 domain() const override;

    const Vec3i& dims() const { return dims_; }
    const Vec3& origin() const { return origin_; }
    const Vec3& spacing() const { return spacing_; }
    const std::vector<float>& values() const { return values_; }

    double node(int i, int j, int k) const {
        return values_[std::size_t((k * dims_.y() + j) * dims_.x() + i)];
    }

private:
    Vec3i dims_;
    Vec3 origin_;
    Vec3 spacing_;
    std::vector<float> values_;
};

// Samples exact mesh distances at the nodes of a dims-sized grid over the box.
GridField voxelize(const MeshIndex& index, const Vec3i& dims, const Box3& box);

// Text header (<name>.nhdr, keys dims/spacing/origin/datafile) plus raw
// little-endian float32 payload, x-fastest.
void save_grid(const GridField& grid, const std::string& nhdr_path);
GridField load_grid(const std::string& nhdr_path);

}  // namespace nudf
