#include "fmk/pipeline.hpp"

#include "fmk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fmk {

std::optional<DescriptorKind> parse_descriptor_kind(const std::string& s) {
  if (s == "xyz") return DescriptorKind::Xyz;
  if (s == "hks") return DescriptorKind::Hks;
  if (s == "wks") return DescriptorKind::Wks;
  if (s == "stack") return DescriptorKind::Stack;
  return std::nullopt;
}

std::optional<RefineKind> parse_refine_kind(const std::string& s) {
  if (s == "none") return RefineKind::None;
  if (s == "proper-adjoint") return RefineKind::ProperAdjoint;
  if (s == "proper-feature") return RefineKind::ProperFeature;
  return std::nullopt;
}

std::optional<ConvertKind> parse_convert_kind(const std::string& s) {
  if (s == "adjoint") return ConvertKind::Adjoint;
  if (s == "nn") return ConvertKind::Nn;
  return std::nullopt;
}

FeatureMatrix build_descriptors(const TriMesh& mesh, const SpectralBasis& basis, DescriptorKind kind,
                                std::span<const int> landmarks) {
  FeatureMatrix F;
  switch (kind) {
    case DescriptorKind::Xyz:
      F = descriptor_xyz(mesh);
      break;
    case DescriptorKind::Hks: {
      const auto times = default_hks_times(basis);
      F = descriptor_hks(basis, times);
      break;
    }
    case DescriptorKind::Wks: {
      const auto w = default_wks_energies(basis);
      F = descriptor_wks(basis, w.energies, w.sigma);
      break;
    }
    case DescriptorKind::Stack: {
      const auto times = default_hks_times(basis);
      const auto w = default_wks_energies(basis);
      F = concat(descriptor_hks(basis, times), descriptor_wks(basis, w.energies, w.sigma));
      break;
    }
  }
  if (kind != DescriptorKind::Xyz && !landmarks.empty())
    F = concat(F, descriptor_landmarks(basis, landmarks, default_landmark_time(basis)));
  normalize_columns(F, basis.mass);
  return F;
}

FeaturePair prepare_features(const TriMesh& source, const TriMesh& target, const MatchOptions& o) {
  const int n1 = source.num_vertices(), n2 = target.num_vertices();
  if (o.k < 1 || o.k > n1 || o.k > n2)
    fail(ErrorKind::InvalidK, "k=" + std::to_string(o.k) + " must lie in [1, " + std::to_string(std::min(n1, n2)) +
                                  "] (vertex counts " + std::to_string(n1) + " and " + std::to_string(n2) + ")");
  if (o.smooth_j < 0) fail(ErrorKind::InvalidK, "smoothing basis size must be >= 0");
  const int j = o.smooth_j == 0 ? 0 : std::min({o.smooth_j, n1, n2});
  const int big = std::max(o.k, j);

  const SpectralBasis full1 = eigenbasis(source, big);
  const SpectralBasis full2 = eigenbasis(target, big);

  std::vector<int> lm1, lm2;
  for (const auto& [a, b] : o.landmarks) {
    lm1.push_back(a);
    lm2.push_back(b);
  }
  FeatureMatrix D1 = build_descriptors(source, full1, o.descriptor, lm1);
  FeatureMatrix D2 = build_descriptors(target, full2, o.descriptor, lm2);
  if (j > 0) {
    D1 = smoothed(D1, full1.truncated(j), o.smooth_t);
    D2 = smoothed(D2, full2.truncated(j), o.smooth_t);
  }

  return FeaturePair{full1.truncated(o.k), full2.truncated(o.k), std::move(D1.values), std::move(D2.values)};
}

MatchResult run_match(const TriMesh& source, const TriMesh& target, const MatchOptions& o) {
  FeaturePair fp = prepare_features(source, target, o);
  MatchResult r;
  r.basis1 = std::move(fp.basis1);
  r.basis2 = std::move(fp.basis2);
  r.F1 = std::move(fp.F1);
  r.F2 = std::move(fp.F2);
  r.C = solve_fmap(r.basis1.project(r.F1), r.basis2.project(r.F2), r.basis1.eigenvalues, r.basis2.eigenvalues,
                   o.mu);

  if (o.refine != RefineKind::None) {
    ProperRefineOptions ro;
    ro.iterations = o.refine_iters;
    ro.tau = o.tau;
    ro.mode = o.refine == RefineKind::ProperAdjoint ? ProperMode::Adjoint : ProperMode::Feature;
    ProperRefineResult rr = refine_proper(r.C, r.basis1, r.basis2, ro, &r.F1, &r.F2);
    r.C = std::move(rr.C);
    r.refine_trace = std::move(rr.residuals);
  }

  r.map = o.convert == ConvertKind::Adjoint ? convert_adjoint(r.C, r.basis1.phi, r.basis2.phi)
                                            : convert_feature_nn(r.F1, r.F2);
  r.report = structure_report(r.C, r.F1, r.F2, r.basis1, r.basis2);
  return r;
}

Eigen::MatrixXd inject_out_of_span(const Eigen::MatrixXd& F, const SpectralBasis& basis, double ratio,
                                   std::uint64_t seed) {
  if (!(ratio >= 0.0)) fail(ErrorKind::InvalidArgument, "noise ratio must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd noise(F.rows(), F.cols());
  for (long c = 0; c < noise.cols(); ++c)
    for (long r = 0; r < noise.rows(); ++r) noise(r, c) = g(rng);
  noise -= basis.reconstruct(noise);
  const double fn = mass_norm_sq(F, basis.mass);
  const double nn = mass_norm_sq(noise, basis.mass);
  if (!(nn > 0.0) || ratio == 0.0) return F;
  return F + std::sqrt(ratio * fn / nn) * noise;
}

}  // namespace fmk
