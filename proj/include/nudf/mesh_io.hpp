// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/mesh.hpp"

#include <string>

namespace nudf {

enum class MeshFormat { PlyAscii, PlyBinary, Obj };

struct LoadReport {
    CleanupStats cleanup;
};

// Loads .ply (ascii or binary little-endian) or .obj by extension.
// Degenerate triangles are dropped at load; the count is reported.
TriangleMesh load_mesh(const std::string& path, LoadReport* report = nullptr);

// Geometry round-trips at float32 precision, topology exactly.
void save_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format);

// Format inferred from the extension (.obj, .ply -> binary ply).
void save_mesh(const TriangleMesh& mesh, const std::string& path);

// PLY point cloud with optional normals and one optional scalar property.
void save_point_cloud(const PointCloud& cloud, const std::string& path, bool binary = true);
PointCloud load_point_cloud(const std::string& path);

}  // namespace nudf
