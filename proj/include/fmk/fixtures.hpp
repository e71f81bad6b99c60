#pragma once

// Synthetic shapes and seeded perturbations used by the tests, the
// acceptance suite, the benchmark and `fmk fixture`.

#include "fmk/mesh.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace fmk::fixtures {

// Regular tetrahedron with unit edge length.
TriMesh unit_tetrahedron();

// Unit square split along its diagonal into two right triangles.
TriMesh unit_square();

// Subdivided icosahedron projected to the sphere; level 3 has 642 vertices.
TriMesh icosphere(int level, double radius = 1.0);

// Radial jitter of relative amplitude `amplitude` (uniform in [-a, a]),
// which breaks the icosahedral symmetry and makes the spectrum simple.
TriMesh jitter_radially(const TriMesh& mesh, double amplitude, std::uint64_t seed);

TriMesh scaled(const TriMesh& mesh, double factor);
TriMesh scaled_axes(const TriMesh& mesh, double sx, double sy, double sz);
TriMesh rigidly_moved(const TriMesh& mesh, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

// Torus with `rings` x `sides` vertices.
TriMesh torus(int rings, int sides, double major_radius, double minor_radius);

// Seeded uniformly random permutation of [0, n).
std::vector<int> random_permutation(int n, std::uint64_t seed);

// Reorders vertices: vertex i of the result is vertex perm[i] of the input.
// Thus the ground-truth map from the result to the input is `perm` itself.
TriMesh permuted(const TriMesh& mesh, const std::vector<int>& perm);

// A shape together with a vertex-permuted copy of itself.
struct PermutedPair {
  TriMesh source;
  TriMesh target;
  std::vector<int> target_to_source;  // ground truth T_21
};
PermutedPair permuted_copy(const TriMesh& mesh, std::uint64_t seed);

// The 642-vertex fixture used throughout the acceptance suite: a unit-area
// icosphere with 2% radial jitter, paired with a permuted copy.
PermutedPair standard_pair(std::uint64_t seed = 7);

// Seeded distinct vertex indices.
std::vector<int> random_vertices(int n, int count, std::uint64_t seed);

Eigen::Matrix3d random_rotation(std::uint64_t seed);

}  // namespace fmk::fixtures
