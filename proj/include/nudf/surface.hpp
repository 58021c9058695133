// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/mesh.hpp"

#include <cstddef>
#include <vector>

namespace nudf {

// Knobs for the cloud-to-mesh chain: Poisson-disk subsampling, normal
// estimation, ball-pivoting reconstruction, support culling, hole closing.
// Distances are in the cloud's own units (millimetres for clinical shapes).
struct MeshingConfig {
    std::size_t subsample_target = 1000;
    int knn_normals = 16;
    std::vector<double> bpa_radii;    // empty: {1,2,4} x median 6-NN spacing
    double support_radius = 0.35;
    double hole_max_radius = 3.5;
};

// Median distance to the k-th nearest neighbour across the cloud. The
// default k = 6 is the spacing estimate the automatic ball radii build on.
double median_knn_spacing(const PointCloud& cloud, int k = 6);

// The automatic ball-pivoting radii for a cloud: {1,2,4} x median 6-NN
// spacing, or cfg.bpa_radii verbatim when set.
std::vector<double> resolve_bpa_radii(const PointCloud& cloud, const MeshingConfig& cfg);

// Per-point normals from the smallest covariance eigenvector of the k
// nearest neighbours, globally oriented by propagation along a minimum
// spanning tree of the k-NN graph with edge weight 1 - |n_i . n_j|.
// Disconnected clusters are oriented independently; the global sign per
// cluster is arbitrary but deterministic.
PointCloud estimate_normals(const PointCloud& cloud, int k);

// Weighted sample elimination down to exactly `target` points. The result is
// a subset of the input (normals and scalars follow their points) with an
// approximately maximized minimum pairwise distance.
PointCloud poisson_disk_subsample(const PointCloud& cloud, std::size_t target);

// Ball-pivoting reconstruction over an oriented cloud. Vertices are a subset
// of the input points, every edge borders at most two triangles, and open
// boundaries are preserved. Radii come from resolve_bpa_radii.
TriangleMesh reconstruct(const PointCloud& cloud, const MeshingConfig& cfg = {});

// Keeps exactly the triangles with at least one support point within
// `radius` (exact point-triangle distance) and drops vertices that end up
// unreferenced. An empty support cloud clears the mesh.
TriangleMesh cull_unsupported(const TriangleMesh& mesh, const PointCloud& support, double radius);

// Closes every boundary loop whose approximate radius perimeter/(2 pi) is
// below `max_radius` with a centroid fan. Larger loops are untouched and no
// triangle is ever removed.
TriangleMesh close_small_holes(const TriangleMesh& mesh, double max_radius);

// The edge-connected component with the greatest triangle area; equal areas
// fall to the component containing the lowest vertex index.
TriangleMesh largest_component(const TriangleMesh& mesh);

// Full chain: subsample, estimate normals, reconstruct, cull against the
// original cloud, close small holes, keep the largest component.
TriangleMesh mesh_from_cloud(const PointCloud& cloud, const MeshingConfig& cfg = {});

// Repair chain only (cull, close, largest component), for meshes produced by
// an external reconstructor.
TriangleMesh repair_mesh(const TriangleMesh& mesh, const PointCloud& support, const MeshingConfig& cfg = {});

// Structural census used by the post-processing contracts.
struct EdgeCensus {
    std::size_t interior_edges = 0;      // exactly two incident triangles
    std::size_t boundary_edges = 0;      // exactly one
    std::size_t non_manifold_edges = 0;  // three or more
};
EdgeCensus edge_census(const TriangleMesh& mesh);

// Boundary loops as vertex index cycles in walk order. Requires consistent
// winding (every mesh this module produces has it).
std::vector<std::vector<int>> boundary_loops(const TriangleMesh& mesh);

}  // namespace nudf
