#include "fmk/fixtures.hpp"

#include "fmk/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace fmk::fixtures {

namespace {

TriMesh with_vertices(const TriMesh& mesh, Vertices V, const std::string& suffix) {
  return TriMesh::from_arrays(mesh.id() + suffix, std::move(V), mesh.triangles());
}

}  // namespace

TriMesh unit_tetrahedron() {
  Vertices V(4, 3);
  const double h = std::sqrt(2.0 / 3.0);
  V << 0.0, 0.0, 0.0,  //
      1.0, 0.0, 0.0,   //
      0.5, std::sqrt(3.0) / 2.0, 0.0,  //
      0.5, std::sqrt(3.0) / 6.0, h;
  Triangles F(4, 3);
  F << 0, 2, 1,  //
      0, 1, 3,   //
      1, 2, 3,   //
      2, 0, 3;
  return TriMesh::from_arrays("tetrahedron", std::move(V), std::move(F));
}

TriMesh unit_square() {
  Vertices V(4, 3);
  V << 0, 0, 0,  //
      1, 0, 0,   //
      1, 1, 0,   //
      0, 1, 0;
  Triangles F(2, 3);
  F << 0, 1, 2,  //
      0, 2, 3;
  return TriMesh::from_arrays("square", std::move(V), std::move(F));
}

TriMesh icosphere(int level, double radius) {
  if (level < 0) fail(ErrorKind::InvalidArgument, "subdivision level must be non-negative");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find({key.first, key.second});
      if (it != midpoint.end()) return it->second;
      verts.push_back((verts[a] + verts[b]).normalized());
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(std::pair{key.first, key.second}, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (auto [a, b, c] : faces) {
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  Vertices V(static_cast<long>(verts.size()), 3);
  for (size_t i = 0; i < verts.size(); ++i) V.row(static_cast<long>(i)) = radius * verts[i].transpose();
  Triangles F(static_cast<long>(faces.size()), 3);
  for (size_t f = 0; f < faces.size(); ++f)
    F.row(static_cast<long>(f)) << faces[f][0], faces[f][1], faces[f][2];
  return TriMesh::from_arrays("icosphere" + std::to_string(level), std::move(V), std::move(F));
}

TriMesh jitter_radially(const TriMesh& mesh, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Vertices V = mesh.vertices();
  for (long i = 0; i < V.rows(); ++i) V.row(i) *= 1.0 + u(rng);
  return with_vertices(mesh, std::move(V), "-jitter");
}

TriMesh scaled(const TriMesh& mesh, double factor) {
  return with_vertices(mesh, mesh.vertices() * factor, "-scaled");
}

TriMesh scaled_axes(const TriMesh& mesh, double sx, double sy, double sz) {
  Vertices V = mesh.vertices();
  V.col(0) *= sx;
  V.col(1) *= sy;
  V.col(2) *= sz;
  return with_vertices(mesh, std::move(V), "-stretched");
}

TriMesh rigidly_moved(const TriMesh& mesh, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation) {
  Vertices V = (mesh.vertices() * rotation.transpose()).rowwise() + translation.transpose();
  return with_vertices(mesh, std::move(V), "-moved");
}

TriMesh torus(int rings, int sides, double major_radius, double minor_radius) {
  if (rings < 3 || sides < 3) fail(ErrorKind::InvalidArgument, "torus needs at least 3 rings and sides");
  Vertices V(static_cast<long>(rings) * sides, 3);
  const double two_pi = 2.0 * M_PI;
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < sides; ++s) {
      const double u = two_pi * r / rings, v = two_pi * s / sides;
      V.row(static_cast<long>(r) * sides + s) << (major_radius + minor_radius * std::cos(v)) * std::cos(u),
          (major_radius + minor_radius * std::cos(v)) * std::sin(u), minor_radius * std::sin(v);
    }
  Triangles F(2L * rings * sides, 3);
  long f = 0;
  for (int r = 0; r < rings; ++r)
    for (int s = 0; s < sides; ++s) {
      const int a = r * sides + s, b = ((r + 1) % rings) * sides + s;
      const int c = ((r + 1) % rings) * sides + (s + 1) % sides, d = r * sides + (s + 1) % sides;
      F.row(f++) << a, b, c;
      F.row(f++) << a, c, d;
    }
  return TriMesh::from_arrays("torus", std::move(V), std::move(F));
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[i], perm[pick(rng)]);
  }
  return perm;
}

TriMesh permuted(const TriMesh& mesh, const std::vector<int>& perm) {
  const int n = mesh.num_vertices();
  if (static_cast<int>(perm.size()) != n) fail(ErrorKind::LengthMismatch, "permutation length differs from n");
  std::vector<int> inverse(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || inverse[perm[i]] != -1)
      fail(ErrorKind::InvalidArgument, "not a permutation");
    inverse[perm[i]] = i;
  }
  Vertices V(n, 3);
  for (int i = 0; i < n; ++i) V.row(i) = mesh.vertices().row(perm[i]);
  Triangles F = mesh.triangles();
  for (long f = 0; f < F.rows(); ++f)
    for (int c = 0; c < 3; ++c) F(f, c) = inverse[F(f, c)];
  return TriMesh::from_arrays(mesh.id() + "-permuted", std::move(V), std::move(F));
}

PermutedPair permuted_copy(const TriMesh& mesh, std::uint64_t seed) {
  auto perm = random_permutation(mesh.num_vertices(), seed);
  TriMesh target = permuted(mesh, perm);
  return PermutedPair{mesh, std::move(target), std::move(perm)};
}

PermutedPair standard_pair(std::uint64_t seed) {
  TriMesh base = jitter_radially(icosphere(3), 0.02, seed);
  TriMesh unit = scaled(base, 1.0 / std::sqrt(base.total_area()));
  return permuted_copy(unit, seed + 1);
}

std::vector<int> random_vertices(int n, int count, std::uint64_t seed) {
  if (count > n) fail(ErrorKind::InvalidArgument, "cannot draw more distinct vertices than exist");
  auto perm = random_permutation(n, seed);
  perm.resize(static_cast<size_t>(count));
  return perm;
}

Eigen::Matrix3d random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  Eigen::Quaterniond q(w, x, y, z);
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace fmk::fixtures
