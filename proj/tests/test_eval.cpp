#include "fmk/errors.hpp"
#include "fmk/eval.hpp"
#include "fmk/fixtures.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace fmk;
using support::kind_of;

namespace {

std::vector<int> iota(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("perfect prediction has zero error") {
  const TriMesh m = fixtures::standard_pair().source;
  const std::vector<int> gt = fixtures::random_permutation(m.num_vertices(), 1);
  const GeodesicError e = geodesic_error(gt, gt, m);
  CHECK(e.mean == 0.0);
  CHECK(e.per_vertex.size() == static_cast<size_t>(m.num_vertices()));
}

TEST_CASE("one wrong vertex on a unit-area mesh") {
  const TriMesh m = fixtures::standard_pair().source;
  REQUIRE(std::abs(m.total_area() - 1.0) < 1e-12);
  const int n = m.num_vertices();
  const std::vector<int> gt = iota(n);
  std::vector<int> pred = gt;
  pred[5] = 300;
  const std::vector<int> src = {300};
  const double d = graph_geodesics(m, src)(0, 5);
  const GeodesicError e = geodesic_error(pred, gt, m);
  CHECK(e.per_vertex[5] == doctest::Approx(100.0 * d).epsilon(1e-12));
  CHECK(e.mean == doctest::Approx(100.0 * d / n).epsilon(1e-12));
}

TEST_CASE("swapped neighbours cost one edge length each") {
  const TriMesh m = fixtures::icosphere(3);
  const int a = m.triangles()(0, 0), b = m.triangles()(0, 1);
  std::vector<int> gt = iota(m.num_vertices());
  std::vector<int> pred = gt;
  std::swap(pred[a], pred[b]);
  const double len = (m.vertices().row(a) - m.vertices().row(b)).norm();
  const double expect = 100.0 * len / std::sqrt(m.total_area());
  const GeodesicError e = geodesic_error(pred, gt, m);
  CHECK(e.per_vertex[a] == doctest::Approx(expect).epsilon(1e-12));
  CHECK(e.per_vertex[b] == doctest::Approx(expect).epsilon(1e-12));
  CHECK(e.mean == doctest::Approx(2.0 * expect / m.num_vertices()).epsilon(1e-12));
}

TEST_CASE("errors are scale invariant and the mean is the average") {
  const TriMesh m = fixtures::jitter_radially(fixtures::icosphere(2), 0.05, 3);
  const TriMesh big = fixtures::scaled(m, 2.0);
  const std::vector<int> gt = iota(m.num_vertices());
  const std::vector<int> pred = fixtures::random_permutation(m.num_vertices(), 4);
  const GeodesicError e1 = geodesic_error(pred, gt, m);
  const GeodesicError e2 = geodesic_error(pred, gt, big);
  for (size_t i = 0; i < e1.per_vertex.size(); ++i)
    CHECK(std::abs(e1.per_vertex[i] - e2.per_vertex[i]) <= 1e-9 * std::max(1.0, e1.per_vertex[i]));
  const double avg = std::accumulate(e1.per_vertex.begin(), e1.per_vertex.end(), 0.0) / e1.per_vertex.size();
  CHECK(e1.mean == doctest::Approx(avg).epsilon(1e-14));
  CHECK(e1.mean > 0.0);
}

TEST_CASE("accuracy curve") {
  const std::vector<double> errors = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> thr = {-1.0, 0.0, 1.5, 3.0, 10.0};
  const std::vector<double> acc = accuracy_curve(errors, thr);
  CHECK(acc == std::vector<double>{0.0, 0.25, 0.5, 1.0, 1.0});
}

TEST_CASE("evaluation errors") {
  const TriMesh m = fixtures::unit_tetrahedron();
  const std::vector<int> four = {0, 1, 2, 3}, three = {0, 1, 2}, bad = {0, 1, 2, 4};
  CHECK(kind_of([&] { geodesic_error(three, four, m); }) == ErrorKind::LengthMismatch);
  CHECK(kind_of([&] { geodesic_error(bad, four, m); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { geodesic_error(four, bad, m); }) == ErrorKind::IndexOutOfRange);

  Vertices V(6, 3);
  V << 0, 0, 0, 1, 0, 0, 0, 1, 0, 5, 0, 0, 6, 0, 0, 5, 1, 0;
  Triangles F(2, 3);
  F << 0, 1, 2, 3, 4, 5;
  const TriMesh two = TriMesh::from_arrays("two", V, F);
  const std::vector<int> gt = iota(6);
  std::vector<int> pred = gt;
  pred[0] = 4;
  CHECK(kind_of([&] { geodesic_error(pred, gt, two); }) == ErrorKind::DisconnectedMesh);
}

TEST_CASE("report formatting") {
  GeodesicError e{1.25, {0.5, 2.0}};
  CHECK(format_error_report(e) == "vertex,error\n0,0.5\n1,2\nmean=1.250000\n");
  CHECK(format_mean_line(0.0) == "mean=0.000000");
}
