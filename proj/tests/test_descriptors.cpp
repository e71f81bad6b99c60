#include "fmk/descriptors.hpp"
#include "fmk/errors.hpp"
#include "fmk/fixtures.hpp"
#include "fmk/spectral.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace fmk;
using support::kind_of;

namespace {

const TriMesh& sphere() {
  static const TriMesh m = fixtures::jitter_radially(fixtures::icosphere(3), 0.02, 12);
  return m;
}

const SpectralBasis& sphere_basis() {
  static const SpectralBasis b = eigenbasis(sphere(), 30);
  return b;
}

}  // namespace

TEST_CASE("xyz descriptor") {
  const TriMesh t = fixtures::unit_tetrahedron();
  const FeatureMatrix F = descriptor_xyz(t);
  CHECK(F.dims() == 3);
  CHECK(F.values == Eigen::MatrixXd(t.vertices()));

  const Eigen::Matrix3d R = fixtures::random_rotation(3);
  const TriMesh moved = fixtures::rigidly_moved(sphere(), R, Eigen::Vector3d::Zero());
  const Eigen::MatrixXd expect = sphere().vertices() * R.transpose();
  CHECK((descriptor_xyz(moved).values - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coefficients of a constant column pick out phi_0") {
  const SpectralBasis& b = sphere_basis();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(sphere().num_vertices(), 1);
  const Eigen::MatrixXd A = project_coeffs(b, make_features(b.mesh_id, ones, "one"));
  CHECK(A(0, 0) == doctest::Approx(std::sqrt(sphere().total_area())).epsilon(1e-10));
  CHECK(A.bottomRows(29).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("HKS") {
  const SpectralBasis& b = sphere_basis();
  const double area = sphere().total_area();

  SUBCASE("k = 1 gives 1 / area everywhere") {
    const std::vector<double> times = {0.01, 1.0, 100.0};
    const FeatureMatrix F = descriptor_hks(b.truncated(1), times);
    CHECK((F.values.array() - 1.0 / area).abs().maxCoeff() < 1e-10);
  }
  SUBCASE("large t approaches 1 / area") {
    const std::vector<double> times = {1e4};
    CHECK((descriptor_hks(b, times).values.array() - 1.0 / area).abs().maxCoeff() < 1e-10);
  }
  SUBCASE("term-by-term oracle on 16 log-spaced times") {
    const auto times = default_hks_times(b, 16);
    REQUIRE(times.size() == 16);
    CHECK(times.front() == doctest::Approx(4 * std::log(10.0) / b.eigenvalues[29]).epsilon(1e-12));
    CHECK(times.back() == doctest::Approx(4 * std::log(10.0) / b.eigenvalues[1]).epsilon(1e-12));
    const FeatureMatrix F = descriptor_hks(b, times);
    CHECK(F.dims() == 16);
    CHECK(F.values.minCoeff() > 0.0);
    double worst = 0.0;
    for (long v = 0; v < F.values.rows(); ++v)
      for (size_t j = 0; j < times.size(); ++j) {
        double ref = 0.0;
        for (int i = 0; i < b.size(); ++i) ref += std::exp(-b.eigenvalues[i] * times[j]) * b.phi(v, i) * b.phi(v, i);
        worst = std::max(worst, std::abs(ref - F.values(v, static_cast<long>(j))));
      }
    CHECK(worst < 1e-10);
  }
  SUBCASE("bad times") {
    const std::vector<double> desc = {1.0, 0.5};
    const std::vector<double> neg = {-1.0};
    CHECK(kind_of([&] { descriptor_hks(b, desc); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { descriptor_hks(b, neg); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { descriptor_hks(b, {}); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("WKS") {
  const SpectralBasis& b = sphere_basis();

  SUBCASE("single retained eigenpair") {
    const SpectralBasis two = b.truncated(2);  // phi_0 is excluded (lambda ~ 0)
    const std::vector<double> e = {-3.0, 0.0, 5.0};
    const FeatureMatrix F = descriptor_wks(two, e, 0.5);
    for (long c = 0; c < 3; ++c)
      CHECK((F.values.col(c) - two.phi.col(1).cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("huge sigma flattens the weights") {
    const std::vector<double> e = {0.0, 1.0, 2.0, 3.0};
    const FeatureMatrix F = descriptor_wks(b, e, 1e8);
    Eigen::VectorXd uniform = Eigen::VectorXd::Zero(b.num_vertices());
    for (int i = 1; i < b.size(); ++i) uniform += b.phi.col(i).cwiseAbs2();
    uniform /= b.size() - 1;
    for (long c = 0; c < 4; ++c) CHECK((F.values.col(c) - uniform).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("brute-force oracle on 8 energies") {
    const auto w = default_wks_energies(b, 8);
    const FeatureMatrix F = descriptor_wks(b, w.energies, w.sigma);
    CHECK(F.values.minCoeff() >= 0.0);
    double worst = 0.0;
    for (size_t j = 0; j < w.energies.size(); ++j) {
      double norm = 0.0;
      Eigen::VectorXd col = Eigen::VectorXd::Zero(b.num_vertices());
      for (int i = 0; i < b.size(); ++i) {
        if (b.eigenvalues[i] < 1e-8 * b.eigenvalues.maxCoeff() || b.eigenvalues[i] <= 0.0) continue;
        const double d = w.energies[j] - std::log(b.eigenvalues[i]);
        const double g = std::exp(-d * d / (2 * w.sigma * w.sigma));
        norm += g;
        col += g * b.phi.col(i).cwiseAbs2();
      }
      worst = std::max(worst, (col / norm - F.values.col(static_cast<long>(j))).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("errors") {
    const std::vector<double> e = {0.0};
    SpectralBasis flat = b.truncated(3);
    flat.eigenvalues.setZero();
    CHECK(kind_of([&] { descriptor_wks(flat, e, 1.0); }) == ErrorKind::AllEigenvaluesExcluded);
    CHECK(kind_of([&] { descriptor_wks(b, e, 0.0); }) == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("HKS and WKS are invariant under rigid motion") {
  const TriMesh moved =
      fixtures::rigidly_moved(sphere(), fixtures::random_rotation(21), Eigen::Vector3d(0.3, 1.0, -2.0));
  const SpectralBasis b2 = eigenbasis(moved, 30);
  const SpectralBasis& b1 = sphere_basis();
  const auto times = default_hks_times(b1);
  const auto w = default_wks_energies(b1);
  const Eigen::MatrixXd h1 = descriptor_hks(b1, times).values, h2 = descriptor_hks(b2, times).values;
  const Eigen::MatrixXd w1 = descriptor_wks(b1, w.energies, w.sigma).values;
  const Eigen::MatrixXd w2 = descriptor_wks(b2, w.energies, w.sigma).values;
  CHECK((h1 - h2).cwiseAbs().maxCoeff() <= 1e-6 * h1.cwiseAbs().maxCoeff());
  CHECK((w1 - w2).cwiseAbs().maxCoeff() <= 1e-6 * w1.cwiseAbs().maxCoeff());
}

TEST_CASE("landmark descriptors") {
  SUBCASE("t = 0 on the full basis reproduces the scaled indicator") {
    const TriMesh m = fixtures::jitter_radially(fixtures::icosphere(1), 0.05, 3);
    const SpectralBasis full = eigenbasis(m, m.num_vertices());
    const std::vector<int> lm = {5};
    const FeatureMatrix F = descriptor_landmarks(full, lm, 0.0);
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(m.num_vertices());
    expect[5] = 1.0 / m.vertex_areas()[5];
    CHECK((F.values.col(0) - expect).cwiseAbs().maxCoeff() < 1e-8 * expect[5]);
  }
  SUBCASE("small t peaks at the landmark") {
    const SpectralBasis big = eigenbasis(sphere(), 128);
    const std::vector<int> lm = fixtures::random_vertices(sphere().num_vertices(), 10, 4);
    const FeatureMatrix F = descriptor_landmarks(big, lm, default_landmark_time(big));
    for (size_t l = 0; l < lm.size(); ++l) {
      Eigen::Index arg;
      F.values.col(static_cast<long>(l)).maxCoeff(&arg);
      CHECK(arg == lm[l]);
    }
  }
  SUBCASE("empty list gives a concatenable n x 0 matrix") {
    const FeatureMatrix E = descriptor_landmarks(sphere_basis(), {}, 0.1);
    CHECK(E.dims() == 0);
    CHECK(E.rows() == sphere().num_vertices());
    const FeatureMatrix X = descriptor_xyz(sphere());
    CHECK(concat(X, E).values == X.values);
    CHECK(concat(E, X).values == X.values);
  }
  SUBCASE("index out of range") {
    const std::vector<int> lm = {sphere().num_vertices()};
    CHECK(kind_of([&] { descriptor_landmarks(sphere_basis(), lm, 0.1); }) == ErrorKind::IndexOutOfRange);
  }
}

TEST_CASE("project_coeffs") {
  const SpectralBasis& b = sphere_basis();
  const int n = b.num_vertices();
  CHECK((project_coeffs(b, make_features("s", b.phi, "phi")) - Eigen::MatrixXd::Identity(30, 30))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(project_coeffs(b, make_features("s", Eigen::MatrixXd::Zero(n, 4), "z")).cwiseAbs().maxCoeff() == 0.0);

  // Normal-equations oracle: weighted least squares min |M^1/2 (Phi A - F)|.
  const Eigen::MatrixXd F = support::random_matrix(n, 6, 31);
  const Eigen::MatrixXd A = project_coeffs(b, make_features("s", F, "r"));
  const Eigen::VectorXd s = b.mass.cwiseSqrt();
  const Eigen::MatrixXd ref =
      (s.asDiagonal() * b.phi).colPivHouseholderQr().solve(Eigen::MatrixXd(s.asDiagonal() * F));
  CHECK((b.phi * A - b.phi * ref).cwiseAbs().maxCoeff() < 1e-9);
  // Idempotence: projecting Phi A returns A.
  CHECK((b.project(b.phi * A) - A).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("concat: associativity, provenance and shape checks") {
  const SpectralBasis& b = sphere_basis();
  const FeatureMatrix X = descriptor_xyz(sphere());
  const std::vector<double> t = {0.1, 1.0};
  const FeatureMatrix H = descriptor_hks(b, t);
  const std::vector<int> lm = {1, 2};
  const FeatureMatrix L = descriptor_landmarks(b, lm, 0.1);
  const FeatureMatrix left = concat(concat(X, H), L), right = concat(X, concat(H, L));
  CHECK(left.values == right.values);
  CHECK(left.columns == right.columns);
  REQUIRE(left.columns.size() == 7);
  CHECK(left.columns[0] == "xyz:x");
  CHECK(left.columns[5] == "landmark:v=1");
  const FeatureMatrix other = descriptor_xyz(fixtures::unit_tetrahedron());
  CHECK(kind_of([&] { concat(X, other); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("normalize_columns gives unit mass norm") {
  const SpectralBasis& b = sphere_basis();
  FeatureMatrix H = descriptor_hks(b, default_hks_times(b));
  normalize_columns(H, b.mass);
  for (long c = 0; c < H.dims(); ++c)
    CHECK(mass_norm_sq(H.values.col(c), b.mass) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("NaN features rejected") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 1);
  bad(1, 0) = std::nan("");
  CHECK(kind_of([&] { make_features("x", bad, "bad"); }) == ErrorKind::InvalidArgument);
}
