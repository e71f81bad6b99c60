#pragma once

// Functional-map estimation, map conversions, properness projection and the
// training losses.
//
// Direction convention: a functional map C (k2 x k1) carries spectral
// coefficients on S1 to coefficients on S2. A pointwise map Pi_21 assigns to
// every vertex of S2 a vertex of S1, so Pi_21 Phi1 ~ Phi2 C.

#include "fmk/descriptors.hpp"
#include "fmk/kernels.hpp"

#include <Eigen/Core>

#include <variant>
#include <vector>

namespace fmk {

constexpr double kDefaultTau = 0.07;
constexpr double kDefaultMu = 1e-3;
constexpr double kRankConditionFloor = 1e-10;

// Hard pointwise map: targets[i] is the S1 vertex assigned to S2 vertex i.
struct HardMap {
  std::vector<int> targets;
  int source_size = 0;  // n1

  int size() const noexcept { return static_cast<int>(targets.size()); }
};

// Row-stochastic n2 x n1 matrix.
struct SoftMap {
  Eigen::MatrixXd weights;
};

using PointMap = std::variant<HardMap, SoftMap>;

// argmin_C |C A1 - A2|_F^2 + mu sum_{p,q} C[p,q]^2 (lambda2[p] - lambda1[q])^2.
// Row p solves an independent d-column least-squares problem with a diagonal
// penalty. With mu == 0, throws RankDeficient when A1 A1^T has reciprocal
// condition below 1e-10.
Eigen::MatrixXd solve_fmap(const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2, const Eigen::VectorXd& evals1,
                           const Eigen::VectorXd& evals2, double mu);

// Row-wise nearest neighbour of Phi2 C among the rows of Phi1.
HardMap convert_adjoint(const Eigen::MatrixXd& C, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2);

// Row-wise nearest neighbour of F2 among the rows of F1.
HardMap convert_feature_nn(const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2);
HardMap convert_feature_nn(const FeatureMatrix& F1, const FeatureMatrix& F2);

// Pi[i, j] = softmax_j(<G2_i, G1_j> / tau). Adjoint flavour: G1 = Phi1,
// G2 = Phi2 C. Feature flavour: G1 = F1, G2 = F2.
SoftMap soft_map(const Eigen::MatrixXd& G1, const Eigen::MatrixXd& G2, double tau = kDefaultTau);

// Row-wise argmax of a soft map.
HardMap harden(const SoftMap& pi);

// C_proper = Phi2^T M2 Pi Phi1.
Eigen::MatrixXd properness_project(const HardMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2);
Eigen::MatrixXd properness_project(const SoftMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2);
Eigen::MatrixXd properness_project(const PointMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2);

// Applies a hard map to per-vertex rows: row i of the result is
// rows[pi.targets[i]].
Eigen::MatrixXd gather_rows(const HardMap& pi, const Eigen::MatrixXd& rows);

double loss_supervised(const Eigen::MatrixXd& C_pred, const Eigen::MatrixXd& C_gt);
double loss_properness(const Eigen::MatrixXd& C_pred, const Eigen::MatrixXd& C_proper);

struct UnsupervisedLoss {
  double bijectivity_12;   // |C12 C21 - I|^2
  double bijectivity_21;   // |C21 C12 - I|^2
  double orthogonality_12; // |C12^T C12 - I|^2
  double orthogonality_21; // |C21^T C21 - I|^2
  double total() const { return bijectivity_12 + bijectivity_21 + orthogonality_12 + orthogonality_21; }
};
UnsupervisedLoss loss_unsupervised(const Eigen::MatrixXd& C12, const Eigen::MatrixXd& C21);

struct UnsupervisedGradient {
  Eigen::MatrixXd d_C12;
  Eigen::MatrixXd d_C21;
};
UnsupervisedGradient grad_unsupervised(const Eigen::MatrixXd& C12, const Eigen::MatrixXd& C21);

// Fraction of entries where the two maps agree.
double agreement(const HardMap& a, const HardMap& b);

}  // namespace fmk
