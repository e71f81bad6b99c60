#include "fmk/diagnostics.hpp"

#include "fmk/errors.hpp"
#include "fmk/io.hpp"
#include "fmk/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fmk {

double measure_completeness(const SpectralBasis& basis, const Eigen::MatrixXd& F) {
  const double total = mass_norm_sq(F, basis.mass);
  if (!(total > 0.0)) fail(ErrorKind::ZeroFeatures, "completeness is undefined for zero features");
  const Eigen::MatrixXd residual = F - basis.reconstruct(F);
  return 1.0 - mass_norm_sq(residual, basis.mass) / total;
}

double measure_properness(const Eigen::MatrixXd& C, const SpectralBasis& basis1, const SpectralBasis& basis2) {
  const HardMap pi = convert_adjoint(C, basis1.phi, basis2.phi);
  return loss_properness(C, properness_project(pi, basis1.phi, basis2.phi, basis2.mass));
}

double measure_basis_aligning(const Eigen::MatrixXd& C, const Eigen::MatrixXd& phi1, const Eigen::MatrixXd& phi2) {
  const HardMap pi = convert_adjoint(C, phi1, phi2);
  return (phi2 * C - gather_rows(pi, phi1)).norm();
}

int numerical_rank(const Eigen::MatrixXd& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s[0] > 0.0)) return 0;
  int rank = 0;
  for (long i = 0; i < s.size(); ++i) rank += s[i] > relative_threshold * s[0];
  return rank;
}

RankReport rank_report(const Eigen::MatrixXd& F, const Eigen::MatrixXd& A) {
  return RankReport{numerical_rank(F), numerical_rank(A)};
}

double nn_distinctness(const Eigen::MatrixXd& F) {
  if (F.rows() < 2) return 0.0;
  const auto sq = kernels::parallel::self_nearest_sq(F);
  double sum = 0.0;
  for (double d : sq) sum += std::sqrt(d);
  return sum / static_cast<double>(sq.size());
}

double min_row_separation(const Eigen::MatrixXd& F) {
  if (F.rows() < 2) return std::numeric_limits<double>::infinity();
  const auto sq = kernels::parallel::self_nearest_sq(F);
  return std::sqrt(*std::min_element(sq.begin(), sq.end()));
}

StructureReport structure_report(const Eigen::MatrixXd& C, const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2,
                                 const SpectralBasis& basis1, const SpectralBasis& basis2) {
  StructureReport r;
  r.completeness_1 = measure_completeness(basis1, F1);
  r.completeness_2 = measure_completeness(basis2, F2);
  r.properness_residual = measure_properness(C, basis1, basis2);
  r.basis_align_chamfer = measure_basis_aligning(C, basis1.phi, basis2.phi);
  const RankReport ranks = rank_report(F1, basis1.project(F1));
  r.rank_F = ranks.rank_F;
  r.rank_A = ranks.rank_A;
  r.nn_distinctness = nn_distinctness(F1);
  return r;
}

std::string to_key_value(const StructureReport& r) {
  std::string out;
  out += "completeness_1=" + format_double(r.completeness_1) + "\n";
  out += "completeness_2=" + format_double(r.completeness_2) + "\n";
  out += "properness_residual=" + format_double(r.properness_residual) + "\n";
  out += "basis_align_chamfer=" + format_double(r.basis_align_chamfer) + "\n";
  out += "rank_F=" + std::to_string(r.rank_F) + "\n";
  out += "rank_A=" + std::to_string(r.rank_A) + "\n";
  out += "nn_distinctness=" + format_double(r.nn_distinctness) + "\n";
  return out;
}

EnergySplit energy_split(const HardMap& pi, const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2,
                         const SpectralBasis& basis2) {
  const Eigen::MatrixXd diff = gather_rows(pi, F1) - F2;
  const Eigen::MatrixXd coeffs = basis2.project(diff);
  const Eigen::MatrixXd outside = diff - basis2.phi * coeffs;
  return EnergySplit{mass_norm_sq(diff, basis2.mass), coeffs.squaredNorm(), mass_norm_sq(outside, basis2.mass)};
}

OracleVerdict theorem_oracle(const Eigen::MatrixXd& F1, const Eigen::MatrixXd& F2, const SpectralBasis& basis1,
                             const SpectralBasis& basis2, const OracleOptions& options) {
  if (F1.cols() != F2.cols()) fail(ErrorKind::ShapeMismatch, "feature dimensions differ");
  OracleVerdict v;
  const double tol = options.tolerance;

  v.completeness_1 = measure_completeness(basis1, F1);
  v.completeness_2 = measure_completeness(basis2, F2);
  v.complete_1 = v.completeness_1 >= 1.0 - tol;
  v.complete_2 = v.completeness_2 >= 1.0 - tol;

  const Eigen::MatrixXd A1 = basis1.project(F1);
  const Eigen::MatrixXd A2 = basis2.project(F2);
  v.k1 = basis1.size();
  v.rank_A1 = numerical_rank(A1);
  v.min_row_separation = min_row_separation(F1);
  const double scale = F1.rowwise().norm().maxCoeff();
  v.rows_distinct = v.min_row_separation > kRankThreshold * scale;

  try {
    v.C_opt = solve_fmap(A1, A2, basis1.eigenvalues, basis2.eigenvalues, 0.0);
    v.full_row_rank = v.rank_A1 == v.k1;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankDeficient) throw;
    // Fall back to the minimum-norm least-squares solution so the remaining
    // measures can still be reported.
    v.full_row_rank = false;
    v.C_opt = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(A1.transpose()).solve(A2.transpose()).transpose();
  }

  v.fit_residual = (v.C_opt * A1 - A2).norm();
  v.basis_aligning = measure_basis_aligning(v.C_opt, basis1.phi, basis2.phi);
  v.adjoint_map = convert_adjoint(v.C_opt, basis1.phi, basis2.phi);
  v.feature_map = convert_feature_nn(F1, F2);
  v.agreement = agreement(v.adjoint_map, v.feature_map);

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(F1.rows()) - 1);
  for (int r = 0; r < options.random_maps; ++r) {
    HardMap pi;
    pi.source_size = static_cast<int>(F1.rows());
    pi.targets.resize(static_cast<size_t>(F2.rows()));
    for (auto& t : pi.targets) t = pick(rng);
    const EnergySplit e = energy_split(pi, F1, F2, basis2);
    v.energy.push_back(e.total);
    v.energy_in_span.push_back(e.in_span);
    v.energy_out_of_span.push_back(e.out_of_span);
    const double err = std::abs(e.total - (e.in_span + e.out_of_span)) / std::max(1.0, e.total);
    v.max_decomposition_error = std::max(v.max_decomposition_error, err);
  }
  return v;
}

std::string to_key_value(const OracleVerdict& v, const OracleOptions& o) {
  auto flag = [](bool b) { return std::string(b ? "pass" : "fail"); };
  std::string out;
  out += "completeness_1=" + format_double(v.completeness_1) + "\n";
  out += "completeness_2=" + format_double(v.completeness_2) + "\n";
  out += "rank_A1=" + std::to_string(v.rank_A1) + "\n";
  out += "k1=" + std::to_string(v.k1) + "\n";
  out += "min_row_separation=" + format_double(v.min_row_separation) + "\n";
  out += "precondition_complete_1=" + flag(v.complete_1) + "\n";
  out += "precondition_complete_2=" + flag(v.complete_2) + "\n";
  out += "precondition_full_row_rank=" + flag(v.full_row_rank) + "\n";
  out += "precondition_rows_distinct=" + flag(v.rows_distinct) + "\n";
  out += "fit_residual=" + format_double(v.fit_residual) + "\n";
  out += "fit=" + flag(v.fit_pass(o.tolerance)) + "\n";
  out += "basis_aligning=" + format_double(v.basis_aligning) + "\n";
  out += "aligning=" + flag(v.aligning_pass(o.aligning_tolerance)) + "\n";
  out += "agreement=" + format_double(v.agreement) + "\n";
  out += "max_decomposition_error=" + format_double(v.max_decomposition_error) + "\n";
  out += "decomposition=" + flag(v.max_decomposition_error < o.tolerance) + "\n";
  const bool all = v.preconditions_pass() && v.fit_pass(o.tolerance) && v.aligning_pass(o.aligning_tolerance) &&
                   v.maps_agree() && v.max_decomposition_error < o.tolerance;
  out += "verdict=" + flag(all) + "\n";
  return out;
}

}  // namespace fmk
