#pragma once

#include "fmk/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <string>

namespace fmk {

constexpr int kDefaultBasisSize = 30;       // functional map size k
constexpr int kDefaultSmoothBasisSize = 128;  // smoothing basis size j
constexpr int kMaxDenseVertices = 5000;

// Cotangent stiffness W (positive semi-definite: off-diagonals are
// -(cot a + cot b)/2, diagonal makes rows sum to zero) and lumped mass.
struct LaplacianPair {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
};

// First k eigenpairs of W phi = lambda M phi, ascending, with
// phi^T M phi = I. Each column's largest-magnitude entry is positive (ties go
// to the lowest index). Eigenvalues inside a repeated cluster come in solver
// order with no rotation fixing.
struct SpectralBasis {
  std::string mesh_id;
  Eigen::MatrixXd phi;          // n x k
  Eigen::VectorXd eigenvalues;  // k, ascending, >= 0
  Eigen::VectorXd mass;         // n

  int size() const noexcept { return static_cast<int>(phi.cols()); }
  int num_vertices() const noexcept { return static_cast<int>(phi.rows()); }

  // Left pseudo-inverse Phi^T M (k x n).
  Eigen::MatrixXd pinv() const;
  // Phi^T M F.
  Eigen::MatrixXd project(const Eigen::MatrixXd& F) const;
  // Phi Phi^T M F, the M-orthogonal projection onto span(Phi).
  Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& F) const;
  // Leading `k` columns.
  SpectralBasis truncated(int k) const;
};

LaplacianPair build_laplacian(const TriMesh& mesh);

SpectralBasis eigenbasis(const LaplacianPair& lap, int k, std::string mesh_id = {});
SpectralBasis eigenbasis(const TriMesh& mesh, int k);

// Flip column signs so the largest-magnitude entry is positive.
void fix_signs(Eigen::MatrixXd& phi);

// Phi diag(exp(-t lambda)) Phi^T M f.
Eigen::VectorXd diffuse(const SpectralBasis& basis, const Eigen::VectorXd& f, double t);

// Column-wise diffuse(); outputs lie in span(Phi) exactly.
Eigen::MatrixXd smooth_features(const SpectralBasis& basis, const Eigen::MatrixXd& F, double t);

// Basis sizes larger than the vertex count are clamped to n; `clamped`
// tells the caller to warn.
struct ClampedSize {
  int value;
  bool clamped;
};
ClampedSize clamp_basis_size(int requested, int num_vertices);

// Cotangent clamp bound, cot(1e-6 rad).
// Per-column relative residual |W phi - lambda M phi| / ((|W|_inf + |lambda| |M|_inf) |phi|).
Eigen::VectorXd eigen_residuals(const LaplacianPair& lap, const SpectralBasis& basis);

double cot_clamp_bound();

// M-weighted Frobenius norm squared: sum_i mass_i * |row_i|^2.
double mass_norm_sq(const Eigen::MatrixXd& F, const Eigen::VectorXd& mass);

}  // namespace fmk
