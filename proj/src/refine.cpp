#include "fmk/refine.hpp"

#include "fmk/errors.hpp"

#include <cmath>

namespace fmk {

ProperRefineResult refine_proper(const Eigen::MatrixXd& C0, const SpectralBasis& basis1, const SpectralBasis& basis2,
                                 const ProperRefineOptions& options, const Eigen::MatrixXd* F1,
                                 const Eigen::MatrixXd* F2) {
  if (options.iterations < 1) fail(ErrorKind::InvalidArgument, "refinement needs at least one iteration");
  if (options.mode == ProperMode::Feature && (F1 == nullptr || F2 == nullptr))
    fail(ErrorKind::MissingFeatures, "feature-mode refinement needs both feature matrices");
  if (C0.rows() != basis2.size() || C0.cols() != basis1.size())
    fail(ErrorKind::ShapeMismatch, "C0 must be k2 x k1");

  ProperRefineResult out;
  out.C = C0;
  for (int it = 0; it < options.iterations; ++it) {
    const SoftMap pi = options.mode == ProperMode::Adjoint ? soft_map(basis1.phi, basis2.phi * out.C, options.tau)
                                                           : soft_map(*F1, *F2, options.tau);
    Eigen::MatrixXd next = properness_project(pi, basis1.phi, basis2.phi, basis2.mass);
    const double residual = (out.C - next).squaredNorm();
    out.residuals.push_back(residual);
    out.C = std::move(next);
    ++out.iterations;
    if (out.residuals.size() >= 2 &&
        std::abs(out.residuals[out.residuals.size() - 1] - out.residuals[out.residuals.size() - 2]) <
            options.stop_delta)
      break;
    if (residual < options.stop_delta) break;
  }
  return out;
}

GradientRefineResult refine_gradient(const Eigen::MatrixXd& C12_0, const Eigen::MatrixXd& C21_0,
                                     const GradientRefineOptions& options) {
  if (!(options.learning_rate > 0.0)) fail(ErrorKind::InvalidArgument, "learning rate must be positive");
  if (C12_0.rows() != C12_0.cols() || C21_0.rows() != C21_0.cols())
    fail(ErrorKind::ShapeMismatch, "gradient refinement expects square maps");

  GradientRefineResult out{C12_0, C21_0, {}, 0};
  double energy = loss_unsupervised(out.C12, out.C21).total();
  if (!std::isfinite(energy)) fail(ErrorKind::NonFiniteEnergy, "initial energy is not finite");
  out.energy.push_back(energy);

  for (int step = 0; step < options.steps; ++step) {
    const UnsupervisedGradient g = grad_unsupervised(out.C12, out.C21);
    if (g.d_C12.squaredNorm() + g.d_C21.squaredNorm() == 0.0) break;
    double lr = options.learning_rate;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, lr *= 0.5) {
      Eigen::MatrixXd a = out.C12 - lr * g.d_C12;
      Eigen::MatrixXd b = out.C21 - lr * g.d_C21;
      const double e = loss_unsupervised(a, b).total();
      if (std::isfinite(e) && e <= energy) {
        out.C12 = std::move(a);
        out.C21 = std::move(b);
        energy = e;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    out.energy.push_back(energy);
    ++out.accepted_steps;
  }
  if (!std::isfinite(energy)) fail(ErrorKind::NonFiniteEnergy, "energy diverged");
  return out;
}

}  // namespace fmk
