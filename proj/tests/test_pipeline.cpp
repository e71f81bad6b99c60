#include "fmk/diagnostics.hpp"
#include "fmk/errors.hpp"
#include "fmk/fixtures.hpp"
#include "fmk/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace fmk;
using support::kind_of;

TEST_CASE("option parsers") {
  CHECK(parse_descriptor_kind("xyz") == DescriptorKind::Xyz);
  CHECK(parse_descriptor_kind("hks") == DescriptorKind::Hks);
  CHECK(parse_descriptor_kind("wks") == DescriptorKind::Wks);
  CHECK(parse_descriptor_kind("stack") == DescriptorKind::Stack);
  CHECK_FALSE(parse_descriptor_kind("HKS").has_value());
  CHECK(parse_refine_kind("none") == RefineKind::None);
  CHECK(parse_refine_kind("proper-adjoint") == RefineKind::ProperAdjoint);
  CHECK(parse_refine_kind("proper-feature") == RefineKind::ProperFeature);
  CHECK_FALSE(parse_refine_kind("zoomout").has_value());
  CHECK(parse_convert_kind("adjoint") == ConvertKind::Adjoint);
  CHECK(parse_convert_kind("nn") == ConvertKind::Nn);
  CHECK_FALSE(parse_convert_kind("").has_value());
}

TEST_CASE("descriptor widths") {
  const auto& s = support::standard();
  const std::vector<int> none, two = {3, 9};
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Xyz, none).dims() == 3);
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Hks, none).dims() == 16);
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Wks, none).dims() == 16);
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Stack, none).dims() == 32);
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Stack, two).dims() == 34);
  CHECK(build_descriptors(s.pair.source, s.basis1, DescriptorKind::Xyz, two).dims() == 3);
  const FeatureMatrix F = build_descriptors(s.pair.source, s.basis1, DescriptorKind::Stack, two);
  for (long c = 0; c < F.dims(); ++c) CHECK(std::abs(mass_norm_sq(F.values.col(c), s.basis1.mass) - 1.0) < 1e-10);
}

TEST_CASE("smoothed features are complete with respect to the smoothing basis") {
  const auto& s = support::standard();
  for (int j : {30, 64}) {
    MatchOptions o;
    o.smooth_j = j;
    o.k = 30;
    const FeaturePair fp = prepare_features(s.pair.source, s.pair.target, o);
    const SpectralBasis bj = eigenbasis(s.pair.source, j);
    CHECK(std::abs(measure_completeness(bj, fp.F1) - 1.0) < 1e-10);
    CHECK(fp.basis1.size() == 30);
  }
  MatchOptions off;
  off.smooth_j = 0;
  const FeaturePair raw = prepare_features(s.pair.source, s.pair.target, off);
  CHECK(measure_completeness(raw.basis1, raw.F1) < 1.0 - 1e-6);
}

TEST_CASE("smoothing basis size is clamped to the vertex count") {
  const TriMesh m = fixtures::icosphere(1);  // 42 vertices
  const fixtures::PermutedPair p = fixtures::permuted_copy(m, 3);
  MatchOptions o;
  o.k = 10;
  const FeaturePair fp = prepare_features(p.source, p.target, o);
  CHECK(fp.F1.rows() == 42);
  o.k = 43;
  CHECK(kind_of([&] { prepare_features(p.source, p.target, o); }) == ErrorKind::InvalidK);
  o.k = 0;
  CHECK(kind_of([&] { prepare_features(p.source, p.target, o); }) == ErrorKind::InvalidK);
}

TEST_CASE("run_match recovers the permutation with either conversion") {
  const auto& s = support::standard();
  MatchOptions o;
  const MatchResult a = run_match(s.pair.source, s.pair.target, o);
  o.convert = ConvertKind::Nn;
  const MatchResult b = run_match(s.pair.source, s.pair.target, o);
  CHECK(a.map.targets == s.pair.target_to_source);
  CHECK(b.map.targets == s.pair.target_to_source);
  CHECK(a.refine_trace.empty());
  CHECK(a.C.rows() == 30);
  // Smoothed onto 128 functions, so not complete in the k = 30 basis.
  CHECK(a.report.completeness_1 < 1.0);
  CHECK(a.report.completeness_1 > 0.9);
}

TEST_CASE("run_match with refinement records a trace") {
  const auto& s = support::standard();
  MatchOptions o;
  o.refine = RefineKind::ProperAdjoint;
  o.refine_iters = 3;
  const MatchResult r = run_match(s.pair.source, s.pair.target, o);
  CHECK(!r.refine_trace.empty());
  CHECK(r.refine_trace.size() <= 3u);
  o.refine = RefineKind::ProperFeature;
  const MatchResult f = run_match(s.pair.source, s.pair.target, o);
  CHECK(!f.refine_trace.empty());
}

TEST_CASE("out-of-span injection is seeded") {
  const auto& s = support::standard();
  const Eigen::MatrixXd F = s.basis1.phi.leftCols(4);
  CHECK(inject_out_of_span(F, s.basis1, 0.3, 1) == inject_out_of_span(F, s.basis1, 0.3, 1));
  CHECK(inject_out_of_span(F, s.basis1, 0.3, 1) != inject_out_of_span(F, s.basis1, 0.3, 2));
  CHECK(inject_out_of_span(F, s.basis1, 0.0, 1) == F);
  CHECK(kind_of([&] { inject_out_of_span(F, s.basis1, -0.1, 1); }) == ErrorKind::InvalidArgument);
}
