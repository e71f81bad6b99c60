#pragma once

// Structure measures for features and functional maps, and a numerical check
// of the equivalence between adjoint conversion and feature-space nearest
// neighbours.

#include "fmk/fmap.hpp"
#include "fmk/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fmk {

constexpr double kRankThreshold = 1e-10;

// 1 - |F - Phi Phi^+ F|_M^2 / |F|_M^2. Throws ZeroFeatures for F == 0.
double measure_completeness(const SpectralBasis& basis, const Eigen::MatrixXd& F);

// |C - C_proper|_F^2 with C_proper obtained through the adjoint conversion.
double measure_properness(const Eigen::MatrixXd& C, const SpectralBasis& basis1, const SpectralBasis& basis2);

// One-way Chamfer |Phi2 C - Pi Phi1|_F, Pi = convert_adjoint(C).
double measure_basis_aligning(const Eigen::MatrixXd& C, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2);

struct RankReport {
  int rank_F;
  int rank_A;
};
int numerical_rank(const Eigen::MatrixXd& m, double relative_threshold = kRankThreshold);
RankReport rank_report(const Eigen::MatrixXd& F, const Eigen::MatrixXd& A);

// Mean Euclidean distance from each feature row to its nearest other row.
double nn_distinctness(const Eigen::MatrixXd& F);
// Smallest such distance (0 when two rows coincide).
double min_row_separation(const Eigen::MatrixXd& F);

struct StructureReport {
  double completeness_1 = 0.0;
  double completeness_2 = 0.0;
  double properness_residual = 0.0;
  double basis_align_chamfer = 0.0;
  int rank_F = 0;
  int rank_A = 0;
  double nn_distinctness = 0.0;
};

StructureReport structure_report(const Eigen::MatrixXd& C, const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2,
                                 const SpectralBasis& basis1, const SpectralBasis& basis2);

// Flat "key=value" lines.
std::string to_key_value(const StructureReport& report);

struct OracleOptions {
  double tolerance = 1e-8;           // completeness, fit residual, decomposition
  double aligning_tolerance = 1e-6;  // basis-aligning Chamfer
  int random_maps = 10;
  std::uint64_t seed = 0;
};

struct OracleVerdict {
  // (a) preconditions
  double completeness_1 = 0.0;
  double completeness_2 = 0.0;
  int rank_A1 = 0;
  int k1 = 0;
  double min_row_separation = 0.0;
  bool complete_1 = false;
  bool complete_2 = false;
  bool full_row_rank = false;
  bool rows_distinct = false;
  // (b) |C_opt A1 - A2|_F
  double fit_residual = 0.0;
  // (c) one-way Chamfer of C_opt
  double basis_aligning = 0.0;
  // (d) adjoint vs feature-NN agreement
  double agreement = 0.0;
  // (e) E = E1 + E2 on random hard maps
  std::vector<double> energy;
  std::vector<double> energy_in_span;
  std::vector<double> energy_out_of_span;
  double max_decomposition_error = 0.0;

  Eigen::MatrixXd C_opt;
  HardMap adjoint_map;
  HardMap feature_map;

  bool preconditions_pass() const { return complete_1 && complete_2 && full_row_rank && rows_distinct; }
  bool fit_pass(double tol) const { return fit_residual < tol; }
  bool aligning_pass(double tol) const { return basis_aligning < tol; }
  bool maps_agree() const { return agreement == 1.0; }
};

// Never throws on violated hypotheses; they are reported in the verdict.
OracleVerdict theorem_oracle(const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2, const SpectralBasis& basis1,
                             const SpectralBasis& basis2, const OracleOptions& options = {});

std::string to_key_value(const OracleVerdict& verdict, const OracleOptions& options);

// E(Pi) = |Pi F1 - F2|^2 in the M2 norm, split into the part inside span(Phi2)
// (E1 = |Phi2^+ (Pi F1 - F2)|^2) and the M2-orthogonal remainder (E2).
struct EnergySplit {
  double total;
  double in_span;
  double out_of_span;
};
EnergySplit energy_split(const HardMap& pi, const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2,
                         const SpectralBasis& basis2);

}  // namespace fmk
