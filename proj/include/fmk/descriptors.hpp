#pragma once

// Handcrafted probe functions standing in for learned per-vertex features.

#include "fmk/mesh.hpp"
#include "fmk/spectral.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmk {

// n x d descriptor values on one mesh. `columns` records where each column
// came from (e.g. "hks:t=0.01") and survives concatenation.
struct FeatureMatrix {
  std::string mesh_id;
  Eigen::MatrixXd values;
  std::vector<std::string> columns;
  std::optional<Eigen::MatrixXd> coeffs;  // Phi^T M F when computed

  int rows() const noexcept { return static_cast<int>(values.rows()); }
  int dims() const noexcept { return static_cast<int>(values.cols()); }
};

FeatureMatrix make_features(std::string mesh_id, Eigen::MatrixXd values, std::string label);

// Throws InvalidArgument on NaN/Inf.
void validate(const FeatureMatrix& F);

FeatureMatrix descriptor_xyz(const TriMesh& mesh);

// hks(x, t) = sum_i exp(-lambda_i t) phi_i(x)^2.
FeatureMatrix descriptor_hks(const SpectralBasis& basis, std::span<const double> times);

// wks(x, e) = C_e sum_i exp(-(e - log lambda_i)^2 / (2 sigma^2)) phi_i(x)^2
// over eigenvalues >= 1e-8 * lambda_max, C_e normalising the weights to 1.
FeatureMatrix descriptor_wks(const SpectralBasis& basis, std::span<const double> energies, double sigma);

// Column l = diffuse(delta_{landmark l} / M_l, t).
FeatureMatrix descriptor_landmarks(const SpectralBasis& basis, std::span<const int> landmarks, double t);

// A = Phi^T M F (k x d).
Eigen::MatrixXd project_coeffs(const SpectralBasis& basis, const FeatureMatrix& F);

// Column-wise concatenation; both sides must live on the same mesh. An empty
// (d = 0) operand is an identity.
FeatureMatrix concat(const FeatureMatrix& a, const FeatureMatrix& b);

// Scales every column to unit M-norm. Zero columns are left untouched.
void normalize_columns(FeatureMatrix& F, const Eigen::VectorXd& mass);

// Replaces values with smooth_features(basis, values, t); labels gain a
// "smooth" tag.
FeatureMatrix smoothed(const FeatureMatrix& F, const SpectralBasis& basis, double t);

// `count` times log-spaced in [4 ln 10 / lambda_max, 4 ln 10 / lambda_1],
// lambda_1 being the first non-zero eigenvalue.
std::vector<double> default_hks_times(const SpectralBasis& basis, int count = 16);

// `count` energies evenly spaced over [log lambda_min, log lambda_max] of the
// retained eigenvalues, and the matching sigma (7x the spacing).
struct WksEnergies {
  std::vector<double> energies;
  double sigma;
};
WksEnergies default_wks_energies(const SpectralBasis& basis, int count = 16);

// The smallest default HKS time; localised enough for landmark indicators.
double default_landmark_time(const SpectralBasis& basis);

}  // namespace fmk
