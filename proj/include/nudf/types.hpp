// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nudf {

using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Vector3i;
using Box3 = Eigen::AlignedBox3d;

// Affine map world -> normalized, stored row-major as [s*I | -s*c] (3x4).
struct NormalizeTransform {
    double scale = 1.0;
    Vec3 offset = Vec3::Zero();  // applied after scaling: q = scale * p + offset

    Vec3 apply(const Vec3& p) const { return scale * p + offset; }
    Vec3 invert(const Vec3& q) const { return (q - offset) / scale; }

    std::vector<double> row_major_3x4() const {
        return {scale, 0, 0, offset.x(), 0, scale, 0, offset.y(), 0, 0, scale, offset.z()};
    }
};

// Input/format problems (bad files, bad arguments). CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public InputError {
public:
    explicit IoError(const std::string& msg) : InputError(msg) {}
};

class FormatError : public InputError {
public:
    explicit FormatError(const std::string& msg) : InputError(msg) {}
};

// Numerical failures (NaN loss, reconstruction failure). CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a over raw bytes; stable across runs, used for content hashes in reports.
inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

}  // namespace nudf
