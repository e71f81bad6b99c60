#include "fmk/descriptors.hpp"

#include "fmk/errors.hpp"
#include "fmk/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fmk {

namespace {

constexpr double kWksCutoff = 1e-8;

std::vector<std::string> labels(const std::string& prefix, std::span<const double> params) {
  std::vector<std::string> out;
  out.reserve(params.size());
  for (double p : params) out.push_back(prefix + format_double(p));
  return out;
}

}  // namespace

FeatureMatrix make_features(std::string mesh_id, Eigen::MatrixXd values, std::string label) {
  FeatureMatrix F;
  F.mesh_id = std::move(mesh_id);
  F.columns.reserve(static_cast<size_t>(values.cols()));
  for (long c = 0; c < values.cols(); ++c) F.columns.push_back(label + ":" + std::to_string(c));
  F.values = std::move(values);
  validate(F);
  return F;
}

void validate(const FeatureMatrix& F) {
  if (!F.values.allFinite()) fail(ErrorKind::InvalidArgument, "feature matrix holds NaN or Inf");
  if (static_cast<long>(F.columns.size()) != F.values.cols())
    fail(ErrorKind::ShapeMismatch, "column labels do not match feature dimension");
}

FeatureMatrix descriptor_xyz(const TriMesh& mesh) {
  FeatureMatrix F;
  F.mesh_id = mesh.id();
  F.values = mesh.vertices();
  F.columns = {"xyz:x", "xyz:y", "xyz:z"};
  return F;
}

FeatureMatrix descriptor_hks(const SpectralBasis& basis, std::span<const double> times) {
  if (times.empty()) fail(ErrorKind::InvalidArgument, "HKS needs at least one time");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) fail(ErrorKind::InvalidArgument, "HKS times must be positive");
    if (i && times[i] < times[i - 1]) fail(ErrorKind::InvalidArgument, "HKS times must be ascending");
  }
  const Eigen::MatrixXd phi_sq = basis.phi.array().square();
  Eigen::MatrixXd weights(basis.size(), static_cast<long>(times.size()));
  for (size_t j = 0; j < times.size(); ++j)
    weights.col(static_cast<long>(j)) = (-times[j] * basis.eigenvalues.array()).exp();
  FeatureMatrix F;
  F.mesh_id = basis.mesh_id;
  F.values = phi_sq * weights;
  F.columns = labels("hks:t=", times);
  return F;
}

FeatureMatrix descriptor_wks(const SpectralBasis& basis, std::span<const double> energies, double sigma) {
  if (!(sigma > 0.0)) fail(ErrorKind::InvalidArgument, "WKS sigma must be positive");
  if (energies.empty()) fail(ErrorKind::InvalidArgument, "WKS needs at least one energy");
  const double lmax = basis.eigenvalues.maxCoeff();
  std::vector<long> kept;
  for (long i = 0; i < basis.size(); ++i)
    if (basis.eigenvalues[i] >= kWksCutoff * lmax && basis.eigenvalues[i] > 0.0) kept.push_back(i);
  if (kept.empty()) fail(ErrorKind::AllEigenvaluesExcluded, "no eigenvalue above the WKS cutoff");

  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(basis.size(), static_cast<long>(energies.size()));
  for (size_t j = 0; j < energies.size(); ++j) {
    // Normalise in log space so far-away energies do not underflow to 0/0.
    std::vector<double> expo(kept.size());
    double top = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < kept.size(); ++a) {
      const double d = energies[j] - std::log(basis.eigenvalues[kept[a]]);
      expo[a] = -d * d / (2.0 * sigma * sigma);
      top = std::max(top, expo[a]);
    }
    double sum = 0.0;
    for (size_t a = 0; a < kept.size(); ++a) sum += std::exp(expo[a] - top);
    for (size_t a = 0; a < kept.size(); ++a)
      weights(kept[a], static_cast<long>(j)) = std::exp(expo[a] - top) / sum;
  }
  FeatureMatrix F;
  F.mesh_id = basis.mesh_id;
  F.values = basis.phi.array().square().matrix() * weights;
  F.columns = labels("wks:e=", energies);
  return F;
}

FeatureMatrix descriptor_landmarks(const SpectralBasis& basis, std::span<const int> landmarks, double t) {
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArgument, "landmark diffusion time must be non-negative");
  const int n = basis.num_vertices();
  FeatureMatrix F;
  F.mesh_id = basis.mesh_id;
  F.values.resize(n, static_cast<long>(landmarks.size()));
  const Eigen::VectorXd decay = (-t * basis.eigenvalues.array()).exp();
  for (size_t l = 0; l < landmarks.size(); ++l) {
    const int v = landmarks[l];
    if (v < 0 || v >= n) fail(ErrorKind::IndexOutOfRange, "landmark " + std::to_string(v) + " out of range");
    // Phi^T M (delta_v / M_v) is simply row v of Phi.
    F.values.col(static_cast<long>(l)) = basis.phi * (decay.asDiagonal() * basis.phi.row(v).transpose());
    F.columns.push_back("landmark:v=" + std::to_string(v));
  }
  return F;
}

Eigen::MatrixXd project_coeffs(const SpectralBasis& basis, const FeatureMatrix& F) {
  if (F.rows() != basis.num_vertices())
    fail(ErrorKind::ShapeMismatch, "features have " + std::to_string(F.rows()) + " rows, basis has " +
                                       std::to_string(basis.num_vertices()));
  return basis.project(F.values);
}

FeatureMatrix concat(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows() != b.rows() && a.rows() != 0 && b.rows() != 0)
    fail(ErrorKind::ShapeMismatch, "cannot concatenate features with different row counts");
  if (a.dims() == 0) return b;
  if (b.dims() == 0) return a;
  if (a.rows() != b.rows()) fail(ErrorKind::ShapeMismatch, "cannot concatenate features with different row counts");
  if (a.mesh_id != b.mesh_id) fail(ErrorKind::ShapeMismatch, "cannot concatenate features from different meshes");
  FeatureMatrix out;
  out.mesh_id = a.mesh_id;
  out.values.resize(a.rows(), a.dims() + b.dims());
  out.values << a.values, b.values;
  out.columns = a.columns;
  out.columns.insert(out.columns.end(), b.columns.begin(), b.columns.end());
  return out;
}

void normalize_columns(FeatureMatrix& F, const Eigen::VectorXd& mass) {
  if (mass.size() != F.rows()) fail(ErrorKind::ShapeMismatch, "mass size does not match feature rows");
  for (long c = 0; c < F.values.cols(); ++c) {
    const double norm = std::sqrt((F.values.col(c).array().square() * mass.array()).sum());
    if (norm > 0.0) F.values.col(c) /= norm;
  }
  F.coeffs.reset();
}

FeatureMatrix smoothed(const FeatureMatrix& F, const SpectralBasis& basis, double t) {
  FeatureMatrix out;
  out.mesh_id = F.mesh_id;
  out.values = smooth_features(basis, F.values, t);
  out.columns.reserve(F.columns.size());
  for (const auto& c : F.columns) out.columns.push_back(c + "|smooth");
  return out;
}

std::vector<double> default_hks_times(const SpectralBasis& basis, int count) {
  if (basis.size() < 2) fail(ErrorKind::InvalidK, "default HKS times need at least two eigenpairs");
  if (count < 1) fail(ErrorKind::InvalidArgument, "HKS time count must be positive");
  const double c = 4.0 * std::log(10.0);
  const double tmin = c / basis.eigenvalues[basis.size() - 1];
  const double tmax = c / basis.eigenvalues[1];
  std::vector<double> times(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    times[i] = std::exp(std::log(tmin) + a * (std::log(tmax) - std::log(tmin)));
  }
  return times;
}

WksEnergies default_wks_energies(const SpectralBasis& basis, int count) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "WKS energy count must be positive");
  const double lmax = basis.eigenvalues.maxCoeff();
  double lmin = lmax;
  for (long i = 0; i < basis.size(); ++i)
    if (basis.eigenvalues[i] >= kWksCutoff * lmax && basis.eigenvalues[i] > 0.0)
      lmin = std::min(lmin, basis.eigenvalues[i]);
  if (!(lmax > 0.0)) fail(ErrorKind::AllEigenvaluesExcluded, "no eigenvalue above the WKS cutoff");
  const double emin = std::log(lmin), emax = std::log(lmax);
  WksEnergies w;
  w.energies.resize(static_cast<size_t>(count));
  const double step = count == 1 ? 0.0 : (emax - emin) / (count - 1);
  for (int i = 0; i < count; ++i) w.energies[i] = emin + step * i;
  w.sigma = step > 0.0 ? 7.0 * step : 1.0;
  return w;
}

double default_landmark_time(const SpectralBasis& basis) { return default_hks_times(basis, 1).front(); }

}  // namespace fmk
