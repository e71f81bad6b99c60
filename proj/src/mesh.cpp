#include "fmk/mesh.hpp"

#include "fmk/errors.hpp"
#include "fmk/io.hpp"
#include "fmk/kernels.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace fmk {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Lines with '#' comments stripped; blank lines dropped. Keeps 1-based line
// numbers for error messages.
std::vector<std::pair<int, std::string_view>> content_lines(const std::string& text, bool strip_comments) {
  std::vector<std::pair<int, std::string_view>> lines;
  std::string_view rest(text);
  int lineno = 0;
  while (!rest.empty()) {
    ++lineno;
    size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (strip_comments) {
      size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (split_ws(line).empty()) continue;
    lines.emplace_back(lineno, line);
  }
  return lines;
}

std::string at_line(int lineno) { return " (line " + std::to_string(lineno) + ")"; }

double to_double(std::string_view tok, int lineno) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(ErrorKind::Parse, "expected a number, got '" + std::string(tok) + "'" + at_line(lineno));
  return value;
}

long to_long(std::string_view tok, int lineno) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(ErrorKind::Parse, "expected an integer, got '" + std::string(tok) + "'" + at_line(lineno));
  return value;
}

int checked_index(long value, long n, int lineno) {
  if (value < 0 || value >= n)
    fail(ErrorKind::IndexOutOfRange,
         "face index " + std::to_string(value) + " outside [0, " + std::to_string(n) + ")" + at_line(lineno));
  return static_cast<int>(value);
}

TriMesh parse_off(const std::string& text, std::string id) {
  auto lines = content_lines(text, true);
  if (lines.empty() || split_ws(lines[0].second) != std::vector<std::string_view>{"OFF"})
    fail(ErrorKind::Parse, "OFF header must be the literal 'OFF' on its own line");
  if (lines.size() < 2) fail(ErrorKind::Parse, "missing OFF element counts");
  auto counts = split_ws(lines[1].second);
  if (counts.size() != 3) fail(ErrorKind::Parse, "OFF counts line must be 'n m e'" + at_line(lines[1].first));
  long n = to_long(counts[0], lines[1].first);
  long m = to_long(counts[1], lines[1].first);
  if (n < 0 || m < 0) fail(ErrorKind::Parse, "negative element count" + at_line(lines[1].first));
  if (static_cast<long>(lines.size()) < 2 + n + m)
    fail(ErrorKind::Parse, "OFF declares " + std::to_string(n) + " vertices and " + std::to_string(m) +
                               " faces but the file is shorter");
  if (static_cast<long>(lines.size()) > 2 + n + m)
    fail(ErrorKind::Parse, "trailing content after the declared faces" + at_line(lines[2 + n + m].first));

  Vertices V(n, 3);
  for (long i = 0; i < n; ++i) {
    auto [lineno, line] = lines[2 + i];
    auto tok = split_ws(line);
    if (tok.size() != 3) fail(ErrorKind::Parse, "vertex line needs 3 coordinates" + at_line(lineno));
    for (int c = 0; c < 3; ++c) V(i, c) = to_double(tok[c], lineno);
  }
  Triangles F(m, 3);
  for (long f = 0; f < m; ++f) {
    auto [lineno, line] = lines[2 + n + f];
    auto tok = split_ws(line);
    if (tok.empty() || to_long(tok[0], lineno) != 3 || tok.size() != 4)
      fail(ErrorKind::Parse, "face line must be '3 i j k'" + at_line(lineno));
    for (int c = 0; c < 3; ++c) F(f, c) = checked_index(to_long(tok[c + 1], lineno), n, lineno);
  }
  return TriMesh::from_arrays(std::move(id), std::move(V), std::move(F));
}

TriMesh parse_obj(const std::string& text, std::string id) {
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::tuple<long, long, long, int>> faces;  // raw indices + line
  for (auto [lineno, line] : content_lines(text, true)) {
    auto tok = split_ws(line);
    if (tok[0] == "v") {
      if (tok.size() < 4) fail(ErrorKind::Parse, "vertex needs 3 coordinates" + at_line(lineno));
      verts.emplace_back(to_double(tok[1], lineno), to_double(tok[2], lineno), to_double(tok[3], lineno));
    } else if (tok[0] == "f") {
      if (tok.size() != 4) fail(ErrorKind::Parse, "only triangular faces are supported" + at_line(lineno));
      long idx[3];
      for (int c = 0; c < 3; ++c) {
        std::string_view t = tok[c + 1];
        t = t.substr(0, t.find('/'));
        idx[c] = to_long(t, lineno);
      }
      faces.emplace_back(idx[0], idx[1], idx[2], lineno);
    }
  }
  const long n = static_cast<long>(verts.size());
  Vertices V(n, 3);
  for (long i = 0; i < n; ++i) V.row(i) = verts[i].transpose();
  Triangles F(static_cast<long>(faces.size()), 3);
  for (size_t f = 0; f < faces.size(); ++f) {
    auto [a, b, c, lineno] = faces[f];
    long raw[3] = {a, b, c};
    for (int k = 0; k < 3; ++k) {
      // OBJ indices are 1-based; negative values count back from the end.
      long zero_based = raw[k] > 0 ? raw[k] - 1 : (raw[k] < 0 ? n + raw[k] : -1);
      F(static_cast<long>(f), k) = checked_index(zero_based, n, lineno);
    }
  }
  return TriMesh::from_arrays(std::move(id), std::move(V), std::move(F));
}

TriMesh parse_ply(const std::string& text, std::string id) {
  auto lines = content_lines(text, false);
  if (lines.empty() || split_ws(lines[0].second) != std::vector<std::string_view>{"ply"})
    fail(ErrorKind::Parse, "PLY must start with 'ply'");

  struct Element {
    std::string name;
    long count = 0;
    std::vector<std::string> properties;
    bool has_list = false;
  };
  std::vector<Element> elements;
  size_t cursor = 1;
  bool ascii = false;
  for (; cursor < lines.size(); ++cursor) {
    auto [lineno, line] = lines[cursor];
    auto tok = split_ws(line);
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2) fail(ErrorKind::Parse, "bad format line" + at_line(lineno));
      if (tok[1] != "ascii")
        fail(ErrorKind::Parse, "binary PLY is not supported; convert to ASCII" + at_line(lineno));
      ascii = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) fail(ErrorKind::Parse, "bad element line" + at_line(lineno));
      elements.push_back({std::string(tok[1]), to_long(tok[2], lineno), {}, false});
    } else if (tok[0] == "property") {
      if (elements.empty()) fail(ErrorKind::Parse, "property before element" + at_line(lineno));
      if (tok.size() >= 2 && tok[1] == "list") {
        if (tok.size() != 5) fail(ErrorKind::Parse, "bad list property" + at_line(lineno));
        elements.back().has_list = true;
        elements.back().properties.emplace_back(tok[4]);
      } else {
        if (tok.size() != 3) fail(ErrorKind::Parse, "bad property line" + at_line(lineno));
        elements.back().properties.emplace_back(tok[2]);
      }
    } else {
      fail(ErrorKind::Parse, "unknown header keyword '" + std::string(tok[0]) + "'" + at_line(lineno));
    }
  }
  if (cursor >= lines.size()) fail(ErrorKind::Parse, "missing end_header");
  if (!ascii) fail(ErrorKind::Parse, "missing 'format ascii 1.0' line");
  ++cursor;

  Vertices V;
  Triangles F;
  bool have_v = false, have_f = false;
  for (const Element& el : elements) {
    if (el.count < 0) fail(ErrorKind::Parse, "negative element count");
    if (cursor + el.count > lines.size()) fail(ErrorKind::Parse, "PLY body shorter than declared element counts");
    if (el.name == "vertex") {
      auto col = [&](const char* name) {
        auto it = std::find(el.properties.begin(), el.properties.end(), name);
        if (it == el.properties.end()) fail(ErrorKind::Parse, std::string("vertex property missing: ") + name);
        return static_cast<size_t>(it - el.properties.begin());
      };
      size_t cx = col("x"), cy = col("y"), cz = col("z");
      V.resize(el.count, 3);
      for (long i = 0; i < el.count; ++i) {
        auto [lineno, line] = lines[cursor++];
        auto tok = split_ws(line);
        if (tok.size() < el.properties.size()) fail(ErrorKind::Parse, "short vertex row" + at_line(lineno));
        V(i, 0) = to_double(tok[cx], lineno);
        V(i, 1) = to_double(tok[cy], lineno);
        V(i, 2) = to_double(tok[cz], lineno);
      }
      have_v = true;
    } else if (el.name == "face") {
      if (!el.has_list) fail(ErrorKind::Parse, "face element needs a vertex_indices list");
      if (!have_v) fail(ErrorKind::Parse, "face element before vertex element");
      F.resize(el.count, 3);
      for (long f = 0; f < el.count; ++f) {
        auto [lineno, line] = lines[cursor++];
        auto tok = split_ws(line);
        if (tok.size() != 4 || to_long(tok[0], lineno) != 3)
          fail(ErrorKind::Parse, "only triangular faces are supported" + at_line(lineno));
        for (int c = 0; c < 3; ++c) F(f, c) = checked_index(to_long(tok[c + 1], lineno), V.rows(), lineno);
      }
      have_f = true;
    } else {
      cursor += static_cast<size_t>(el.count);
    }
  }
  if (!have_v || !have_f) fail(ErrorKind::Parse, "PLY needs vertex and face elements");
  return TriMesh::from_arrays(std::move(id), std::move(V), std::move(F));
}

}  // namespace

double triangle_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

TriMesh TriMesh::from_arrays(std::string id, Vertices vertices, Triangles triangles) {
  const long n = vertices.rows();
  if (n == 0 || triangles.rows() == 0) fail(ErrorKind::DegenerateMesh, "mesh has no vertices or no triangles");
  if (!vertices.allFinite()) fail(ErrorKind::Parse, "non-finite vertex coordinate");

  Eigen::Vector3d lo = vertices.colwise().minCoeff();
  Eigen::Vector3d hi = vertices.colwise().maxCoeff();
  const double diag2 = (hi - lo).squaredNorm();

  TriMesh mesh;
  mesh.id_ = std::move(id);
  mesh.area_floor_ = kDegeneracyFactor * diag2;
  mesh.vertex_areas_ = Eigen::VectorXd::Zero(n);
  std::vector<char> referenced(static_cast<size_t>(n), 0);
  double total = 0.0;
  for (long f = 0; f < triangles.rows(); ++f) {
    const int i = triangles(f, 0), j = triangles(f, 1), k = triangles(f, 2);
    for (int v : {i, j, k})
      if (v < 0 || v >= n)
        fail(ErrorKind::IndexOutOfRange,
             "triangle " + std::to_string(f) + " references vertex " + std::to_string(v) + " of " + std::to_string(n));
    if (i == j || j == k || i == k)
      fail(ErrorKind::DegenerateMesh, "triangle " + std::to_string(f) + " repeats a vertex");
    const double area = triangle_area(vertices.row(i), vertices.row(j), vertices.row(k));
    if (!(area > mesh.area_floor_))
      fail(ErrorKind::DegenerateMesh, "triangle " + std::to_string(f) + " has area below the degeneracy floor");
    total += area;
    for (int v : {i, j, k}) {
      mesh.vertex_areas_[v] += area / 3.0;
      referenced[static_cast<size_t>(v)] = 1;
    }
  }
  for (long v = 0; v < n; ++v)
    if (!referenced[static_cast<size_t>(v)])
      fail(ErrorKind::DegenerateMesh, "vertex " + std::to_string(v) + " belongs to no triangle");
  mesh.total_area_ = total;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);
  return mesh;
}

Eigen::VectorXd vertex_areas(const TriMesh& mesh) { return mesh.vertex_areas(); }

MeshFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".off") return MeshFormat::Off;
  if (ext == ".obj") return MeshFormat::Obj;
  if (ext == ".ply") return MeshFormat::PlyAscii;
  fail(ErrorKind::Parse, "cannot infer mesh format from extension '" + ext + "'");
}

TriMesh parse_mesh(const std::string& text, MeshFormat format, std::string id) {
  switch (format) {
    case MeshFormat::Off: return parse_off(text, std::move(id));
    case MeshFormat::Obj: return parse_obj(text, std::move(id));
    case MeshFormat::PlyAscii: return parse_ply(text, std::move(id));
  }
  fail(ErrorKind::Parse, "unknown mesh format");
}

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  return parse_mesh(read_text_file(path), format, path.string());
}

TriMesh load_mesh(const std::filesystem::path& path) { return load_mesh(path, format_from_extension(path)); }

std::string to_off_string(const TriMesh& mesh) {
  std::string out = "OFF\n";
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_triangles()) + " 0\n";
  const auto& V = mesh.vertices();
  for (long i = 0; i < V.rows(); ++i)
    out += format_double(V(i, 0)) + " " + format_double(V(i, 1)) + " " + format_double(V(i, 2)) + "\n";
  const auto& F = mesh.triangles();
  for (long f = 0; f < F.rows(); ++f)
    out += "3 " + std::to_string(F(f, 0)) + " " + std::to_string(F(f, 1)) + " " + std::to_string(F(f, 2)) + "\n";
  return out;
}

void save_off(const TriMesh& mesh, const std::filesystem::path& path) { write_text_file(path, to_off_string(mesh)); }

EdgeGraph EdgeGraph::from_edges(int num_vertices, std::span<const std::tuple<int, int, double>> edges) {
  std::map<std::pair<int, int>, double> unique;
  for (auto [a, b, len] : edges) {
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
      fail(ErrorKind::IndexOutOfRange, "edge endpoint out of range");
    if (a == b) continue;
    auto key = std::minmax(a, b);
    auto [it, inserted] = unique.try_emplace({key.first, key.second}, len);
    if (!inserted) it->second = std::min(it->second, len);
  }
  EdgeGraph g;
  g.num_vertices = num_vertices;
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<size_t>(num_vertices));
  for (auto& [key, len] : unique) {
    adj[key.first].emplace_back(key.second, len);
    adj[key.second].emplace_back(key.first, len);
  }
  g.offsets.assign(static_cast<size_t>(num_vertices) + 1, 0);
  for (int v = 0; v < num_vertices; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    g.offsets[v + 1] = g.offsets[v] + static_cast<int>(adj[v].size());
    for (auto [u, len] : adj[v]) {
      g.neighbors.push_back(u);
      g.lengths.push_back(len);
    }
  }
  return g;
}

EdgeGraph EdgeGraph::from_mesh(const TriMesh& mesh) {
  std::vector<std::tuple<int, int, double>> edges;
  const auto& V = mesh.vertices();
  const auto& F = mesh.triangles();
  edges.reserve(static_cast<size_t>(F.rows()) * 3);
  for (long f = 0; f < F.rows(); ++f)
    for (int c = 0; c < 3; ++c) {
      int a = F(f, c), b = F(f, (c + 1) % 3);
      if (a > b) std::swap(a, b);
      edges.emplace_back(a, b, (V.row(a) - V.row(b)).norm());
    }
  return from_edges(mesh.num_vertices(), edges);
}

GeodesicTable graph_geodesics(const EdgeGraph& graph, std::span<const int> sources, std::string mesh_id) {
  for (int s : sources)
    if (s < 0 || s >= graph.num_vertices)
      fail(ErrorKind::IndexOutOfRange, "geodesic source " + std::to_string(s) + " out of range");
  GeodesicTable table;
  table.mesh_id = std::move(mesh_id);
  table.sources.assign(sources.begin(), sources.end());
  table.distances = kernels::parallel::dijkstra(graph, sources);
  return table;
}

GeodesicTable graph_geodesics(const TriMesh& mesh, std::span<const int> sources) {
  return graph_geodesics(EdgeGraph::from_mesh(mesh), sources, mesh.id());
}

GeodesicTable all_pairs_geodesics(const TriMesh& mesh) {
  std::vector<int> all(static_cast<size_t>(mesh.num_vertices()));
  for (int i = 0; i < mesh.num_vertices(); ++i) all[i] = i;
  GeodesicTable table = graph_geodesics(mesh, all);
  // Path sums accumulate in opposite orders from the two endpoints, which can
  // differ in the last bit; the entry computed from the lower index wins.
  auto& D = table.distances;
  for (long i = 0; i < D.rows(); ++i)
    for (long j = i + 1; j < D.cols(); ++j) D(j, i) = D(i, j);
  return table;
}

}  // namespace fmk
