#pragma once

// End-to-end matching: bases -> descriptors -> smoothing -> C -> refinement
// -> pointwise map. Shared by the command-line tool and the tests.

#include "fmk/descriptors.hpp"
#include "fmk/diagnostics.hpp"
#include "fmk/fmap.hpp"
#include "fmk/mesh.hpp"
#include "fmk/refine.hpp"
#include "fmk/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fmk {

enum class DescriptorKind { Xyz, Hks, Wks, Stack };
enum class RefineKind { None, ProperAdjoint, ProperFeature };
enum class ConvertKind { Adjoint, Nn };

std::optional<DescriptorKind> parse_descriptor_kind(const std::string& s);
std::optional<RefineKind> parse_refine_kind(const std::string& s);
std::optional<ConvertKind> parse_convert_kind(const std::string& s);

struct MatchOptions {
  int k = kDefaultBasisSize;
  DescriptorKind descriptor = DescriptorKind::Stack;
  int smooth_j = kDefaultSmoothBasisSize;  // 0 disables smoothing
  double smooth_t = 0.0;                   // 0 = plain projection onto span(Phi_j)
  double mu = kDefaultMu;
  RefineKind refine = RefineKind::None;
  int refine_iters = 10;
  double tau = kDefaultTau;
  ConvertKind convert = ConvertKind::Adjoint;
  std::vector<std::pair<int, int>> landmarks;  // (source vertex, target vertex)
};

// Descriptors for one shape. Columns are scaled to unit mass norm.
// hks: 16 log-spaced times; wks: 16 energies; stack: hks + wks.
// Landmark columns are appended for every kind except xyz.
FeatureMatrix build_descriptors(const TriMesh& mesh, const SpectralBasis& basis, DescriptorKind kind,
                                std::span<const int> landmarks);

struct FeaturePair {
  SpectralBasis basis1;  // truncated to k
  SpectralBasis basis2;
  Eigen::MatrixXd F1;  // features after smoothing
  Eigen::MatrixXd F2;
};

// Bases and (smoothed) descriptors for both shapes; the first half of
// run_match. Throws InvalidK when k exceeds a vertex count; j is clamped to n.
FeaturePair prepare_features(const TriMesh& source, const TriMesh& target, const MatchOptions& options);

struct MatchResult {
  SpectralBasis basis1;  // truncated to k
  SpectralBasis basis2;
  Eigen::MatrixXd F1;  // features after smoothing
  Eigen::MatrixXd F2;
  Eigen::MatrixXd C;   // k x k, source coefficients -> target coefficients
  std::vector<double> refine_trace;
  HardMap map;         // target vertex -> source vertex
  StructureReport report;
};

MatchResult run_match(const TriMesh& source, const TriMesh& target, const MatchOptions& options);

// Adds a random component M-orthogonal to span(basis) to F, with squared
// mass norm ratio * |F|_M^2. For complete F the completeness measure drops to
// 1 / (1 + ratio). basis.project(F) is unchanged.
Eigen::MatrixXd inject_out_of_span(const Eigen::MatrixXd& F, const SpectralBasis& basis, double ratio,
                                   std::uint64_t seed);

}  // namespace fmk
