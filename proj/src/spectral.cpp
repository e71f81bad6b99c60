#include "fmk/spectral.hpp"

#include "fmk/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace fmk {

double cot_clamp_bound() { return 1.0 / std::tan(1e-6); }

ClampedSize clamp_basis_size(int requested, int num_vertices) {
  if (requested < 1) fail(ErrorKind::InvalidK, "basis size must be positive");
  if (requested > num_vertices) return {num_vertices, true};
  return {requested, false};
}

double mass_norm_sq(const Eigen::MatrixXd& F, const Eigen::VectorXd& mass) {
  if (F.rows() != mass.size()) fail(ErrorKind::ShapeMismatch, "feature rows do not match mass size");
  return (F.array().square().colwise() * mass.array()).sum();
}

LaplacianPair build_laplacian(const TriMesh& mesh) {
  const int n = mesh.num_vertices();
  const auto& V = mesh.vertices();
  const auto& F = mesh.triangles();
  const double bound = cot_clamp_bound();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(F.rows()) * 12);
  for (long f = 0; f < F.rows(); ++f) {
    for (int c = 0; c < 3; ++c) {
      // Corner c is opposite the edge (c+1, c+2).
      const int o = F(f, c), a = F(f, (c + 1) % 3), b = F(f, (c + 2) % 3);
      const Eigen::Vector3d u = V.row(a) - V.row(o);
      const Eigen::Vector3d v = V.row(b) - V.row(o);
      const double cross = u.cross(v).norm();
      if (!(cross > 0.0)) fail(ErrorKind::DegenerateMesh, "zero-area triangle " + std::to_string(f));
      const double cot = std::clamp(u.dot(v) / cross, -bound, bound);
      const double w = 0.5 * cot;
      trips.emplace_back(a, b, -w);
      trips.emplace_back(b, a, -w);
      trips.emplace_back(a, a, w);
      trips.emplace_back(b, b, w);
    }
  }
  LaplacianPair lap;
  lap.stiffness.resize(n, n);
  lap.stiffness.setFromTriplets(trips.begin(), trips.end());
  lap.mass = mesh.vertex_areas();
  return lap;
}

void fix_signs(Eigen::MatrixXd& phi) {
  for (long c = 0; c < phi.cols(); ++c) {
    long arg = 0;
    double best = -1.0;
    for (long r = 0; r < phi.rows(); ++r) {
      const double a = std::abs(phi(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (phi(arg, c) < 0.0) phi.col(c) *= -1.0;
  }
}

SpectralBasis eigenbasis(const LaplacianPair& lap, int k, std::string mesh_id) {
  const long n = lap.mass.size();
  if (lap.stiffness.rows() != n || lap.stiffness.cols() != n)
    fail(ErrorKind::ShapeMismatch, "stiffness and mass sizes differ");
  if (k < 1 || k > n)
    fail(ErrorKind::InvalidK, "basis size " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  if (n > kMaxDenseVertices)
    fail(ErrorKind::SolverFailure, "dense eigensolver limited to " + std::to_string(kMaxDenseVertices) + " vertices");
  if ((lap.mass.array() <= 0.0).any()) fail(ErrorKind::DegenerateMesh, "mass matrix must be positive");

  // Symmetric similarity transform M^{-1/2} W M^{-1/2}.
  const Eigen::VectorXd inv_sqrt = lap.mass.array().rsqrt();
  Eigen::MatrixXd S = Eigen::MatrixXd(lap.stiffness);
  S = inv_sqrt.asDiagonal() * S * inv_sqrt.asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success) fail(ErrorKind::SolverFailure, "symmetric eigensolver did not converge");

  SpectralBasis basis;
  basis.mesh_id = std::move(mesh_id);
  basis.mass = lap.mass;
  basis.eigenvalues = solver.eigenvalues().head(k).cwiseMax(0.0);
  basis.phi = inv_sqrt.asDiagonal() * solver.eigenvectors().leftCols(k);
  fix_signs(basis.phi);
  return basis;
}

SpectralBasis eigenbasis(const TriMesh& mesh, int k) { return eigenbasis(build_laplacian(mesh), k, mesh.id()); }

Eigen::MatrixXd SpectralBasis::pinv() const { return phi.transpose() * mass.asDiagonal(); }

Eigen::MatrixXd SpectralBasis::project(const Eigen::MatrixXd& F) const {
  if (F.rows() != phi.rows())
    fail(ErrorKind::ShapeMismatch,
         "function has " + std::to_string(F.rows()) + " rows, basis has " + std::to_string(phi.rows()));
  return phi.transpose() * (mass.asDiagonal() * F);
}

Eigen::MatrixXd SpectralBasis::reconstruct(const Eigen::MatrixXd& F) const { return phi * project(F); }

SpectralBasis SpectralBasis::truncated(int k) const {
  if (k < 1 || k > size()) fail(ErrorKind::InvalidK, "cannot truncate a basis of size " + std::to_string(size()) +
                                                          " to " + std::to_string(k));
  return SpectralBasis{mesh_id, phi.leftCols(k), eigenvalues.head(k), mass};
}

Eigen::VectorXd eigen_residuals(const LaplacianPair& lap, const SpectralBasis& basis) {
  if (lap.mass.size() != basis.num_vertices()) fail(ErrorKind::ShapeMismatch, "basis and Laplacian sizes differ");
  double w_inf = 0.0;
  for (int r = 0; r < lap.stiffness.outerSize(); ++r) {
    double row = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(lap.stiffness, r); it; ++it) row += std::abs(it.value());
    w_inf = std::max(w_inf, row);  // W is symmetric, so column sums equal row sums
  }
  const double m_inf = lap.mass.maxCoeff();
  const Eigen::MatrixXd Wphi = lap.stiffness * basis.phi;
  Eigen::VectorXd out(basis.size());
  for (int c = 0; c < basis.size(); ++c) {
    const double lambda = basis.eigenvalues[c];
    const double num = (Wphi.col(c) - lambda * lap.mass.cwiseProduct(basis.phi.col(c))).norm();
    out[c] = num / ((w_inf + std::abs(lambda) * m_inf) * basis.phi.col(c).norm());
  }
  return out;
}

Eigen::VectorXd diffuse(const SpectralBasis& basis, const Eigen::VectorXd& f, double t) {
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArgument, "diffusion time must be non-negative");
  const Eigen::VectorXd decay = (-t * basis.eigenvalues.array()).exp();
  return basis.phi * (decay.asDiagonal() * basis.project(f));
}

Eigen::MatrixXd smooth_features(const SpectralBasis& basis, const Eigen::MatrixXd& F, double t) {
  if (!(t >= 0.0)) fail(ErrorKind::InvalidArgument, "diffusion time must be non-negative");
  const Eigen::VectorXd decay = (-t * basis.eigenvalues.array()).exp();
  return basis.phi * (decay.asDiagonal() * basis.project(F));
}

}  // namespace fmk
