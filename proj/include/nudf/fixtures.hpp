// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/mesh.hpp"

#include <vector>

namespace nudf::fixtures {

// Two triangles spanning [0,1]^2 at z = 0, normal +z.
TriangleMesh unit_square();

// Axis-aligned rectangle at z = center.z(), normal +z.
TriangleMesh rectangle(const Vec3& center, double half_x, double half_y);

// Closed axis-aligned box, 12 triangles, outward normals.
TriangleMesh box(const Vec3& center, const Vec3& half_extents);

// Subdivided icosahedron projected onto the sphere. Subdivision 0 is the
// icosahedron itself; each level quadruples the triangle count.
TriangleMesh icosphere(double radius, int subdivisions, const Vec3& center = Vec3::Zero());

// Upper half of a latitude/longitude sphere, open along the equator. The rim
// is a single loop of `segments` edges at z = center.z().
TriangleMesh hemisphere(double radius, int rings, int segments, const Vec3& center = Vec3::Zero());

// Closed genus-1 torus around the z axis.
TriangleMesh torus(double major_radius, double minor_radius, int segments_major, int segments_minor,
                   const Vec3& center = Vec3::Zero());

// Closed capsule: cylinder from a to b with hemispherical caps.
TriangleMesh capsule(const Vec3& a, const Vec3& b, double radius, int segments = 32, int cap_rings = 8);

// Two parallel rectangles `gap` apart along z (at z = 0 and z = gap), both
// wound with +z normals. Every surface point sees the other plate at distance
// `gap` through exactly one cone orientation.
TriangleMesh plate_pair(double half_width, double gap);

// Two thick spheres plus one thin two-sheet plate, all mutually separated.
// The spheres carry a large shape diameter (around 40 mm), the plate sheets a
// small one (around 2.4 mm), and the areas of the two groups match, so a
// density factor of lambda should reproduce a lambda:1 sample-count ratio.
struct DumbbellFixture {
    TriangleMesh mesh;
    std::vector<int> small_sd_triangles;  // plate sheets
    std::vector<int> large_sd_triangles;  // both spheres
};
DumbbellFixture dumbbell();

// Smooth multi-lobed closed blob, elongated along z: three Gaussian bumps on
// an icosphere, then an anisotropic stretch. Stands in for an anatomical
// appendage-like shape; about 24 mm across before the stretch.
TriangleMesh appendage(int subdivisions = 4);

}  // namespace nudf::fixtures
