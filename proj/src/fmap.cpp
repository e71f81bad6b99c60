#include "fmk/fmap.hpp"

#include "fmk/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fmk {

namespace {

kernels::RowMatrix row_major(const Eigen::MatrixXd& m) { return m; }

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::ShapeMismatch, what);
}

}  // namespace

Eigen::MatrixXd solve_fmap(const Eigen::MatrixXd& A1, const Eigen::MatrixXd& A2, const Eigen::VectorXd& evals1,
                           const Eigen::VectorXd& evals2, double mu) {
  const long k1 = A1.rows(), k2 = A2.rows(), d = A1.cols();
  require(A2.cols() == d, "A1 and A2 must have the same number of descriptors");
  require(d >= 1, "need at least one descriptor");
  if (!(mu >= 0.0)) fail(ErrorKind::InvalidArgument, "commutativity weight must be non-negative");

  if (mu == 0.0) {
    const Eigen::MatrixXd gram = A1 * A1.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    const double bottom = es.eigenvalues().minCoeff();
    if (!(top > 0.0) || bottom < kRankConditionFloor * top)
      fail(ErrorKind::RankDeficient, "A1 A1^T is singular (reciprocal condition " +
                                         std::to_string(top > 0.0 ? bottom / top : 0.0) + ")");
    // Every row shares the design matrix A1^T: solve all right-hand sides at once.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A1.transpose());
    return qr.solve(A2.transpose()).transpose();
  }

  require(evals1.size() == k1 && evals2.size() == k2, "eigenvalue counts must match coefficient rows");
  Eigen::MatrixXd C(k2, k1);
  Eigen::MatrixXd design(d + k1, k1);
  design.topRows(d) = A1.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + k1);
  const double root_mu = std::sqrt(mu);
  for (long p = 0; p < k2; ++p) {
    design.bottomRows(k1) = (root_mu * (evals1.array() - evals2[p]).abs()).matrix().asDiagonal();
    rhs.head(d) = A2.row(p).transpose();
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    C.row(p) = cod.solve(rhs).transpose();
  }
  return C;
}

HardMap convert_adjoint(const Eigen::MatrixXd& C, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2) {
  require(phi2.cols() == C.rows(), "Phi2 columns must equal C rows");
  require(phi1.cols() == C.cols(), "Phi1 columns must equal C columns");
  auto nn = kernels::parallel::nearest_rows(row_major(phi2 * C), row_major(phi1));
  return HardMap{std::move(nn.index), static_cast<int>(phi1.rows())};
}

HardMap convert_feature_nn(const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2) {
  require(F1.cols() == F2.cols(), "feature dimensions differ");
  auto nn = kernels::parallel::nearest_rows(row_major(F2), row_major(F1));
  return HardMap{std::move(nn.index), static_cast<int>(F1.rows())};
}

HardMap convert_feature_nn(const FeatureMatrix& F1, const FeatureMatrix& F2) {
  return convert_feature_nn(F1.values, F2.values);
}

SoftMap soft_map(const Eigen::MatrixXd& G1, const Eigen::MatrixXd& G2, double tau) {
  require(G1.cols() == G2.cols(), "similarity embeddings have different widths");
  return SoftMap{kernels::parallel::softmax_rows(row_major(G2), row_major(G1), tau)};
}

HardMap harden(const SoftMap& pi) {
  HardMap h;
  h.source_size = static_cast<int>(pi.weights.cols());
  h.targets.resize(static_cast<size_t>(pi.weights.rows()));
  for (long i = 0; i < pi.weights.rows(); ++i) {
    Eigen::Index arg = 0;
    pi.weights.row(i).maxCoeff(&arg);
    h.targets[i] = static_cast<int>(arg);
  }
  return h;
}

Eigen::MatrixXd gather_rows(const HardMap& pi, const Eigen::MatrixXd& rows) {
  Eigen::MatrixXd out(pi.size(), rows.cols());
  for (int i = 0; i < pi.size(); ++i) {
    const int t = pi.targets[i];
    if (t < 0 || t >= rows.rows()) fail(ErrorKind::IndexOutOfRange, "point map entry out of range");
    out.row(i) = rows.row(t);
  }
  return out;
}

Eigen::MatrixXd properness_project(const HardMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2) {
  require(pi.size() == phi2.rows() && mass2.size() == phi2.rows(), "point map length must equal n2");
  return phi2.transpose() * (mass2.asDiagonal() * gather_rows(pi, phi1));
}

Eigen::MatrixXd properness_project(const SoftMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2) {
  require(pi.weights.rows() == phi2.rows() && pi.weights.cols() == phi1.rows(), "soft map must be n2 x n1");
  require(mass2.size() == phi2.rows(), "mass size must equal n2");
  return phi2.transpose() * (mass2.asDiagonal() * (pi.weights * phi1));
}

Eigen::MatrixXd properness_project(const PointMap& pi, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2,
                                   const Eigen::VectorXd& mass2) {
  return std::visit([&](const auto& m) { return properness_project(m, phi1, phi2, mass2); }, pi);
}

double loss_supervised(const Eigen::MatrixXd& C_pred, const Eigen::MatrixXd& C_gt) {
  require(C_pred.rows() == C_gt.rows() && C_pred.cols() == C_gt.cols(), "functional maps differ in shape");
  return (C_pred - C_gt).squaredNorm();
}

double loss_properness(const Eigen::MatrixXd& C_pred, const Eigen::MatrixXd& C_proper) {
  require(C_pred.rows() == C_proper.rows() && C_pred.cols() == C_proper.cols(), "functional maps differ in shape");
  return (C_pred - C_proper).squaredNorm();
}

UnsupervisedLoss loss_unsupervised(const Eigen::MatrixXd& C12, const Eigen::MatrixXd& C21) {
  require(C12.rows() == C21.cols() && C12.cols() == C21.rows(), "C12 and C21 must have transposed shapes");
  const long k2 = C12.rows(), k1 = C12.cols();
  const Eigen::MatrixXd I1 = Eigen::MatrixXd::Identity(k1, k1), I2 = Eigen::MatrixXd::Identity(k2, k2);
  return UnsupervisedLoss{(C12 * C21 - I2).squaredNorm(), (C21 * C12 - I1).squaredNorm(),
                          (C12.transpose() * C12 - I1).squaredNorm(), (C21.transpose() * C21 - I2).squaredNorm()};
}

UnsupervisedGradient grad_unsupervised(const Eigen::MatrixXd& C12, const Eigen::MatrixXd& C21) {
  require(C12.rows() == C21.cols() && C12.cols() == C21.rows(), "C12 and C21 must have transposed shapes");
  const long k2 = C12.rows(), k1 = C12.cols();
  const Eigen::MatrixXd I1 = Eigen::MatrixXd::Identity(k1, k1), I2 = Eigen::MatrixXd::Identity(k2, k2);
  const Eigen::MatrixXd R12 = C12 * C21 - I2;                 // k2 x k2
  const Eigen::MatrixXd R21 = C21 * C12 - I1;                 // k1 x k1
  const Eigen::MatrixXd O12 = C12.transpose() * C12 - I1;     // k1 x k1
  const Eigen::MatrixXd O21 = C21.transpose() * C21 - I2;     // k2 x k2
  UnsupervisedGradient g;
  g.d_C12 = 2.0 * R12 * C21.transpose() + 2.0 * C21.transpose() * R21 + 4.0 * C12 * O12;
  g.d_C21 = 2.0 * C12.transpose() * R12 + 2.0 * R21 * C12.transpose() + 4.0 * C21 * O21;
  return g;
}

double agreement(const HardMap& a, const HardMap& b) {
  if (a.size() != b.size()) fail(ErrorKind::LengthMismatch, "maps have different lengths");
  if (a.size() == 0) return 1.0;
  int same = 0;
  for (int i = 0; i < a.size(); ++i) same += a.targets[i] == b.targets[i];
  return static_cast<double>(same) / a.size();
}

}  // namespace fmk
