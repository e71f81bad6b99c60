#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fmk {

using Vertices = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using Triangles = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

enum class MeshFormat { Off, Obj, PlyAscii };

// Triangle mesh with its lumped (one-third) vertex areas. Instances are only
// obtainable through from_arrays()/load_mesh(), which validate indices,
// reject degenerate triangles and unreferenced vertices, and compute areas.
class TriMesh {
 public:
  static TriMesh from_arrays(std::string id, Vertices vertices, Triangles triangles);

  const std::string& id() const noexcept { return id_; }
  const Vertices& vertices() const noexcept { return vertices_; }
  const Triangles& triangles() const noexcept { return triangles_; }
  const Eigen::VectorXd& vertex_areas() const noexcept { return vertex_areas_; }
  double total_area() const noexcept { return total_area_; }
  int num_vertices() const noexcept { return static_cast<int>(vertices_.rows()); }
  int num_triangles() const noexcept { return static_cast<int>(triangles_.rows()); }

  // Triangles smaller than this are rejected: 1e-12 * (bbox diagonal)^2.
  double degeneracy_floor() const noexcept { return area_floor_; }

 private:
  TriMesh() = default;

  std::string id_;
  Vertices vertices_;
  Triangles triangles_;
  Eigen::VectorXd vertex_areas_;
  double total_area_ = 0.0;
  double area_floor_ = 0.0;
};

constexpr double kDegeneracyFactor = 1e-12;

MeshFormat format_from_extension(const std::filesystem::path& path);
TriMesh load_mesh(const std::filesystem::path& path);
TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriMesh parse_mesh(const std::string& text, MeshFormat format, std::string id = "mesh");

std::string to_off_string(const TriMesh& mesh);
void save_off(const TriMesh& mesh, const std::filesystem::path& path);

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

// Entry i is one third of the area of all triangles incident to vertex i.
Eigen::VectorXd vertex_areas(const TriMesh& mesh);

// Undirected edge graph with Euclidean edge lengths, in CSR form.
struct EdgeGraph {
  int num_vertices = 0;
  std::vector<int> offsets;    // size num_vertices + 1
  std::vector<int> neighbors;  // sorted ascending per vertex
  std::vector<double> lengths;

  static EdgeGraph from_mesh(const TriMesh& mesh);
  // Edges given as (i, j, length); duplicates keep the shortest.
  static EdgeGraph from_edges(int num_vertices, std::span<const std::tuple<int, int, double>> edges);
};

// Rows of shortest-path distances, one per requested source. Unreachable
// vertices hold +infinity.
struct GeodesicTable {
  std::string mesh_id;
  std::vector<int> sources;
  Eigen::MatrixXd distances;  // sources.size() x n

  double operator()(int source_row, int target) const { return distances(source_row, target); }
};

GeodesicTable graph_geodesics(const EdgeGraph& graph, std::span<const int> sources, std::string mesh_id = {});
GeodesicTable graph_geodesics(const TriMesh& mesh, std::span<const int> sources);
// Dense n x n table.
GeodesicTable all_pairs_geodesics(const TriMesh& mesh);

}  // namespace fmk
