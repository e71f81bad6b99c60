#pragma once

// Geodesic error protocol: per-vertex graph-geodesic distance between the
// predicted and ground-truth images, divided by sqrt(total area), times 100.

#include "fmk/mesh.hpp"

#include <span>
#include <string>
#include <vector>

namespace fmk {

struct GeodesicError {
  double mean = 0.0;
  std::vector<double> per_vertex;
};

// `pred` and `gt` index vertices of `target`, the shape on which errors are
// measured. Throws LengthMismatch, IndexOutOfRange or DisconnectedMesh.
GeodesicError geodesic_error(std::span<const int> pred, std::span<const int> gt, const TriMesh& target);

// Fraction of errors <= each threshold.
std::vector<double> accuracy_curve(std::span<const double> errors, std::span<const double> thresholds);

// "vertex,error" CSV followed by a "mean=<value>" line (6 decimals).
std::string format_error_report(const GeodesicError& err);
std::string format_mean_line(double mean);

}  // namespace fmk
