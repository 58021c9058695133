// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/field.hpp"

#include "nudf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nudf {

namespace {

Box3 box_around(const Vec3& lo, const Vec3& hi) {
    Box3 box(lo, hi);
    const double margin = 0.5 * std::max(1.0, box.diagonal().norm());
    return Box3(Vec3(box.min() - Vec3::Constant(margin)), Vec3(box.max() + Vec3::Constant(margin)));
}

}  // namespace

void DistanceField::eval_batch(const std::vector<Vec3>& points, std::vector<double>& out) const {
    out.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) { out[i] = eval(points[i]); });
}

void DistanceField::eval_grad_batch(const std::vector<Vec3>& points, std::vector<double>& dist,
                                    std::vector<Vec3>& grads) const {
    dist.resize(points.size());
    grads.resize(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        dist[i] = eval(points[i]);
        grads[i] = grad(points[i]);
    });
}

// ---------------------------------------------------------------------------
// Sphere

SphereField::SphereField(const Vec3& center, double radius) : center_(center), radius_(radius) {
    if (radius <= 0) throw InputError("SphereField: radius must be positive");
    domain_ = box_around(center - Vec3::Constant(radius), center + Vec3::Constant(radius));
}

double SphereField::eval(const Vec3& p) const { return std::abs((p - center_).norm() - radius_); }

Vec3 SphereField::grad(const Vec3& p) const {
    const Vec3 d = p - center_;
    const double r = d.norm();
    if (r < 1e-12) return Vec3::Zero();  // center: medial, flagged by the zero vector
    return r >= radius_ ? Vec3(d / r) : Vec3(-d / r);
}

// ---------------------------------------------------------------------------
// Capsule

CapsuleField::CapsuleField(const Vec3& a, const Vec3& b, double radius) : a_(a), b_(b), radius_(radius) {
    if (radius <= 0) throw InputError("CapsuleField: radius must be positive");
    domain_ = box_around(a.cwiseMin(b) - Vec3::Constant(radius), a.cwiseMax(b) + Vec3::Constant(radius));
}

double CapsuleField::eval(const Vec3& p) const {
    const Vec3 ab = b_ - a_;
    const double t = ab.squaredNorm() > 0 ? std::clamp((p - a_).dot(ab) / ab.squaredNorm(), 0.0, 1.0) : 0.0;
    return std::abs((p - (a_ + t * ab)).norm() - radius_);
}

Vec3 CapsuleField::grad(const Vec3& p) const {
    const Vec3 ab = b_ - a_;
    const double t = ab.squaredNorm() > 0 ? std::clamp((p - a_).dot(ab) / ab.squaredNorm(), 0.0, 1.0) : 0.0;
    const Vec3 d = p - (a_ + t * ab);
    const double r = d.norm();
    if (r < 1e-12) return Vec3::Zero();  // on the axis: medial, flagged by the zero vector
    return r >= radius_ ? Vec3(d / r) : Vec3(-d / r);
}

// ---------------------------------------------------------------------------
// Torus

TorusField::TorusField(const Vec3& center, double major_radius, double minor_radius)
    : center_(center), major_(major_radius), minor_(minor_radius) {
    if (major_radius <= 0 || minor_radius <= 0 || minor_radius >= major_radius)
        throw InputError("TorusField: requires 0 < minor < major");
    const Vec3 ext(major_radius + minor_radius, major_radius + minor_radius, minor_radius);
    domain_ = box_around(center - ext, center + ext);
}

double TorusField::eval(const Vec3& p) const {
    const Vec3 q = p - center_;
    const double rho = std::hypot(q.x(), q.y());
    return std::abs(std::hypot(rho - major_, q.z()) - minor_);
}

Vec3 TorusField::grad(const Vec3& p) const {
    const Vec3 q = p - center_;
    const double rho = std::hypot(q.x(), q.y());
    if (rho < 1e-12) return Vec3::Zero();  // symmetry axis: medial, flagged
    const double u = rho - major_;
    const double s = std::hypot(u, q.z());
    if (s < 1e-12) return Vec3::Zero();  // center circle: medial, flagged
    const Vec3 toward(u * q.x() / rho / s, u * q.y() / rho / s, q.z() / s);
    return s >= minor_ ? toward : Vec3(-toward);
}

// ---------------------------------------------------------------------------
// Open disk

OpenDiskField::OpenDiskField(const Vec3& center, const Vec3& normal, double radius)
    : center_(center), normal_(normal.normalized()), radius_(radius) {
    if (radius <= 0) throw InputError("OpenDiskField: radius must be positive");
    if (normal.norm() < 1e-12) throw InputError("OpenDiskField: zero normal");
    domain_ = box_around(center - Vec3::Constant(radius), center + Vec3::Constant(radius));
}

double OpenDiskField::eval(const Vec3& p) const {
    const Vec3 q = p - center_;
    const double h = q.dot(normal_);
    const Vec3 radial = q - h * normal_;
    const double rho = radial.norm();
    if (rho <= radius_) return std::abs(h);
    return std::hypot(h, rho - radius_);
}

Vec3 OpenDiskField::grad(const Vec3& p) const {
    const Vec3 q = p - center_;
    const double h = q.dot(normal_);
    const Vec3 radial = q - h * normal_;
    const double rho = radial.norm();
    if (rho <= radius_) {
        if (std::abs(h) < 1e-12) return normal_;  // on the surface: pick the +n side
        return h > 0 ? normal_ : Vec3(-normal_);
    }
    const double over = rho - radius_;
    const double d = std::hypot(h, over);
    return (h * normal_ + (over / rho) * radial) / d;
}

// ---------------------------------------------------------------------------
// Plate pair

PlatePairField::PlatePairField(const Vec3& center, double gap) : center_(center), half_gap_(gap / 2) {
    if (gap <= 0) throw InputError("PlatePairField: gap must be positive");
    domain_ = box_around(center - Vec3::Constant(gap), center + Vec3::Constant(gap));
}

double PlatePairField::eval(const Vec3& p) const {
    const double z = p.z() - center_.z();
    return std::min(std::abs(z - half_gap_), std::abs(z + half_gap_));
}

Vec3 PlatePairField::grad(const Vec3& p) const {
    const double z = p.z() - center_.z();
    if (std::abs(z) < 1e-12) return Vec3::Zero();  // mid-plane: medial, flagged
    const double target = z > 0 ? half_gap_ : -half_gap_;
    return Vec3(0, 0, z - target >= 0 ? 1.0 : -1.0);
}

// ---------------------------------------------------------------------------
// Grid

GridField::GridField(const Vec3i& dims, const Vec3& origin, const Vec3& spacing, std::vector<float> values)
    : dims_(dims), origin_(origin), spacing_(spacing), values_(std::move(values)) {
    for (int c = 0; c < 3; ++c) {
        if (dims[c] < 2) throw InputError("GridField: dims must be at least 2 per axis");
        if (spacing[c] <= 0) throw InputError("GridField: spacing must be positive");
    }
    if (values_.size() != std::size_t(dims.x()) * std::size_t(dims.y()) * std::size_t(dims.z()))
        throw InputError("GridField: value count does not match dims");
    for (const float v : values_)
        if (!(v >= 0)) throw InputError("GridField: negative or NaN distance value");
}

Box3 GridField::domain() const {
    const Vec3 extent((dims_.x() - 1) * spacing_.x(), (dims_.y() - 1) * spacing_.y(), (dims_.z() - 1) * spacing_.z());
    return Box3(origin_, Vec3(origin_ + extent));
}

namespace {

struct CellCoord {
    int cell[3];     // lower node index, in [0, dims-2]
    double local[3];  // fractional position within the cell, in [0,1]
    bool on_face[3];  // local coordinate sits exactly on a cell boundary
};

CellCoord locate(const Vec3i& dims, const Vec3& origin, const Vec3& spacing, const Vec3& p) {
    CellCoord cc;
    for (int c = 0; c < 3; ++c) {
        const double t = (p[c] - origin[c]) / spacing[c];
        int i = int(std::floor(t));
        double u = t - i;
        // Snap to the nearest face so node queries reproduce stored values
        // exactly despite round-off in the coordinate division.
        if (u < 1e-9) {
            u = 0;
        } else if (u > 1 - 1e-9) {
            i += 1;
            u = 0;
        }
        if (i < 0) {
            i = 0;
            u = 0;
        } else if (i > dims[c] - 2) {
            i = dims[c] - 2;
            u = 1;
        }
        cc.cell[c] = i;
        cc.local[c] = u;
        cc.on_face[c] = u == 0.0 || u == 1.0;
    }
    return cc;
}

}  // namespace

double GridField::eval(const Vec3& p) const {
    const Box3 dom = domain();
    const Vec3 c = p.cwiseMax(dom.min()).cwiseMin(dom.max());
    const double outside = (p - c).norm();

    const CellCoord cc = locate(dims_, origin_, spacing_, c);
    const double u = cc.local[0], v = cc.local[1], w = cc.local[2];
    const int i = cc.cell[0], j = cc.cell[1], k = cc.cell[2];

    double value = 0;
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) {
                const double weight = (dx ? u : 1 - u) * (dy ? v : 1 - v) * (dz ? w : 1 - w);
                if (weight != 0) value += weight * node(i + dx, j + dy, k + dz);
            }
    return value + outside;
}

Vec3 GridField::grad(const Vec3& p) const {
    const Box3 dom = domain();
    const Vec3 c = p.cwiseMax(dom.min()).cwiseMin(dom.max());
    const Vec3 diff = p - c;
    const double outside = diff.norm();

    const CellCoord cc = locate(dims_, origin_, spacing_, c);

    // Derivative along `axis` inside the cell starting at `base[axis]`:
    // the difference of the two bilinear interpolations on the cell's faces.
    auto cell_derivative = [&](int axis, int base_axis_cell) {
        int base[3] = {cc.cell[0], cc.cell[1], cc.cell[2]};
        base[axis] = base_axis_cell;
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        const double s = cc.local[a1], t = cc.local[a2];
        double acc = 0;
        for (int d2 = 0; d2 < 2; ++d2)
            for (int d1 = 0; d1 < 2; ++d1) {
                int hi[3] = {base[0], base[1], base[2]};
                int lo[3] = {base[0], base[1], base[2]};
                hi[axis] += 1;
                hi[a1] += d1;
                lo[a1] += d1;
                hi[a2] += d2;
                lo[a2] += d2;
                const double weight = (d1 ? s : 1 - s) * (d2 ? t : 1 - t);
                acc += weight * (node(hi[0], hi[1], hi[2]) - node(lo[0], lo[1], lo[2]));
            }
        return acc / spacing_[axis];
    };

    Vec3 g;
    for (int axis = 0; axis < 3; ++axis) {
        if (outside > 0 && diff[axis] != 0) {
            // Clamped along this axis: the interpolant is constant, the
            // distance-to-box term varies.
            g[axis] = diff[axis] / outside;
            continue;
        }
        double d = cell_derivative(axis, cc.cell[axis]);
        if (cc.on_face[axis]) {
            // Average the one-sided derivatives across the face.
            const int neighbor = cc.local[axis] == 0.0 ? cc.cell[axis] - 1 : cc.cell[axis] + 1;
            if (neighbor >= 0 && neighbor <= dims_[axis] - 2) d = 0.5 * (d + cell_derivative(axis, neighbor));
        }
        g[axis] = d;
    }
    return g;
}

GridField voxelize(const MeshIndex& index, const Vec3i& dims, const Box3& box) {
    for (int c = 0; c < 3; ++c)
        if (dims[c] < 2) throw InputError("voxelize: dims must be at least 2 per axis");
    const Vec3 spacing((box.max().x() - box.min().x()) / (dims.x() - 1),
                       (box.max().y() - box.min().y()) / (dims.y() - 1),
                       (box.max().z() - box.min().z()) / (dims.z() - 1));
    std::vector<float> values(std::size_t(dims.x()) * std::size_t(dims.y()) * std::size_t(dims.z()));
    const std::size_t plane = std::size_t(dims.x()) * std::size_t(dims.y());
    parallel_for(values.size(), [&](std::size_t n) {
        const int k = int(n / plane);
        const int j = int((n % plane) / std::size_t(dims.x()));
        const int i = int(n % std::size_t(dims.x()));
        const Vec3 p = box.min() + Vec3(i * spacing.x(), j * spacing.y(), k * spacing.z());
        values[n] = float(index.unsigned_distance(p).distance);
    });
    return GridField(dims, box.min(), spacing, std::move(values));
}

void save_grid(const GridField& grid, const std::string& nhdr_path) {
    const std::filesystem::path header_path(nhdr_path);
    if (header_path.extension() != ".nhdr") throw InputError(nhdr_path + ": grid header must end in .nhdr");
    std::filesystem::path raw_path = header_path;
    raw_path.replace_extension(".raw");

    std::ofstream header(header_path);
    if (!header) throw IoError(nhdr_path + ": cannot open file for writing");
    header.precision(17);
    header << "dims: " << grid.dims().x() << " " << grid.dims().y() << " " << grid.dims().z() << "\n";
    header << "spacing: " << grid.spacing().x() << " " << grid.spacing().y() << " " << grid.spacing().z() << "\n";
    header << "origin: " << grid.origin().x() << " " << grid.origin().y() << " " << grid.origin().z() << "\n";
    header << "datafile: " << raw_path.filename().string() << "\n";
    if (!header) throw IoError(nhdr_path + ": write failed");

    std::ofstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError(raw_path.string() + ": cannot open file for writing");
    raw.write(reinterpret_cast<const char*>(grid.values().data()),
              std::streamsize(grid.values().size() * sizeof(float)));
    if (!raw) throw IoError(raw_path.string() + ": write failed");
}

GridField load_grid(const std::string& nhdr_path) {
    std::ifstream header(nhdr_path);
    if (!header) throw IoError(nhdr_path + ": cannot open file");

    Vec3i dims(0, 0, 0);
    Vec3 spacing(0, 0, 0), origin(0, 0, 0);
    std::string datafile;
    bool have_dims = false, have_spacing = false, have_origin = false;

    std::string line;
    while (std::getline(header, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw FormatError(nhdr_path + ": malformed header line '" + line + "'");
        const std::string key = line.substr(0, colon);
        std::istringstream rest(line.substr(colon + 1));
        if (key == "dims") {
            have_dims = bool(rest >> dims.x() >> dims.y() >> dims.z());
        } else if (key == "spacing") {
            have_spacing = bool(rest >> spacing.x() >> spacing.y() >> spacing.z());
        } else if (key == "origin") {
            have_origin = bool(rest >> origin.x() >> origin.y() >> origin.z());
        } else if (key == "datafile") {
            rest >> datafile;
        } else {
            throw FormatError(nhdr_path + ": unknown header key '" + key + "'");
        }
    }
    if (!have_dims || !have_spacing || !have_origin || datafile.empty())
        throw FormatError(nhdr_path + ": header must provide dims, spacing, origin and datafile");

    const std::filesystem::path raw_path = std::filesystem::path(nhdr_path).parent_path() / datafile;
    std::ifstream raw(raw_path, std::ios::binary);
    if (!raw) throw IoError(raw_path.string() + ": cannot open file");
    const std::size_t count = std::size_t(dims.x()) * std::size_t(dims.y()) * std::size_t(dims.z());
    std::vector<float> values(count);
    raw.read(reinterpret_cast<char*>(values.data()), std::streamsize(count * sizeof(float)));
    if (std::size_t(raw.gcount()) != count * sizeof(float))
        throw FormatError(raw_path.string() + ": raw payload shorter than dims imply");
    return GridField(dims, origin, spacing, std::move(values));
}

}  // namespace nudf
