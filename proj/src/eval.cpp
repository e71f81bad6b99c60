#include "fmk/eval.hpp"

#include "fmk/errors.hpp"
#include "fmk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace fmk {

GeodesicError geodesic_error(std::span<const int> pred, std::span<const int> gt, const TriMesh& target) {
  if (pred.size() != gt.size())
    fail(ErrorKind::LengthMismatch, "prediction has " + std::to_string(pred.size()) + " entries, ground truth " +
                                        std::to_string(gt.size()));
  const int n = target.num_vertices();
  for (size_t i = 0; i < pred.size(); ++i)
    if (pred[i] < 0 || pred[i] >= n || gt[i] < 0 || gt[i] >= n)
      fail(ErrorKind::IndexOutOfRange, "map entry " + std::to_string(i) + " outside the target mesh");

  // One Dijkstra per distinct ground-truth vertex.
  std::vector<int> sources(gt.begin(), gt.end());
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::unordered_map<int, long> row_of;
  for (size_t r = 0; r < sources.size(); ++r) row_of[sources[r]] = static_cast<long>(r);
  const GeodesicTable table = graph_geodesics(target, sources);

  GeodesicError out;
  out.per_vertex.resize(pred.size());
  const double norm = 100.0 / std::sqrt(target.total_area());
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    const double d = table(row_of.at(gt[i]), pred[i]);
    if (!std::isfinite(d))
      fail(ErrorKind::DisconnectedMesh, "vertices " + std::to_string(pred[i]) + " and " + std::to_string(gt[i]) +
                                            " lie in different components");
    out.per_vertex[i] = d * norm;
    sum += out.per_vertex[i];
  }
  out.mean = pred.empty() ? 0.0 : sum / static_cast<double>(pred.size());
  return out;
}

std::vector<double> accuracy_curve(std::span<const double> errors, std::span<const double> thresholds) {
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
    out.push_back(sorted.empty() ? 1.0 : static_cast<double>(count) / static_cast<double>(sorted.size()));
  }
  return out;
}

std::string format_mean_line(double mean) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "mean=%.6f", mean);
  return buf;
}

std::string format_error_report(const GeodesicError& err) {
  std::string out = "vertex,error\n";
  for (size_t i = 0; i < err.per_vertex.size(); ++i)
    out += std::to_string(i) + "," + format_double(err.per_vertex[i]) + "\n";
  out += format_mean_line(err.mean) + "\n";
  return out;
}

}  // namespace fmk
