#pragma once

// Map refinement acting directly on C: repeated soft conversion + properness
// projection, and gradient descent on the unsupervised structural energy.

#include "fmk/fmap.hpp"
#include "fmk/spectral.hpp"

#include <optional>
#include <vector>

namespace fmk {

enum class ProperMode { Adjoint, Feature };

struct ProperRefineOptions {
  int iterations = 10;
  ProperMode mode = ProperMode::Adjoint;
  double tau = kDefaultTau;
  double stop_delta = 1e-10;  // stop once the residual changes by less
};

struct ProperRefineResult {
  Eigen::MatrixXd C;
  // residuals[i] = |C_i - C_{i+1}|_F^2, C_{i+1} being the projection of C_i.
  std::vector<double> residuals;
  int iterations = 0;
};

// Repeats C <- properness_project(soft_map(G1, G2, tau)) starting from C0,
// with G1 = Phi1, G2 = Phi2 C (adjoint) or G1 = F1, G2 = F2 (feature).
// Feature mode throws MissingFeatures without F1/F2.
ProperRefineResult refine_proper(const Eigen::MatrixXd& C0, const SpectralBasis& basis1, const SpectralBasis& basis2,
                                 const ProperRefineOptions& options, const Eigen::MatrixXd* F1 = nullptr,
                                 const Eigen::MatrixXd* F2 = nullptr);

struct GradientRefineOptions {
  int steps = 500;
  double learning_rate = 0.1;
  int max_halvings = 30;
};

struct GradientRefineResult {
  Eigen::MatrixXd C12;
  Eigen::MatrixXd C21;
  std::vector<double> energy;  // energy[0] at the start, one entry per accepted step
  int accepted_steps = 0;
};

// Plain gradient descent on loss_unsupervised with backtracking: a step is
// halved (up to max_halvings times) until it does not increase the energy;
// if no step size works, iteration stops.
GradientRefineResult refine_gradient(const Eigen::MatrixXd& C12_0, const Eigen::MatrixXd& C21_0,
                                     const GradientRefineOptions& options = {});

}  // namespace fmk
