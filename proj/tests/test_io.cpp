#include "fmk/errors.hpp"
#include "fmk/io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>

using namespace fmk;
using support::kind_of;

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, -4.9e-324, std::nextafter(1.0, 2.0)}) {
    const std::string s = format_double(v);
    double back = 1.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(std::memcmp(&back, &v, sizeof v) == 0);
  }
}

TEST_CASE("matrix, feature, fmap and basis files round-trip") {
  const Eigen::MatrixXd m = support::random_matrix(7, 4, 1);
  CHECK(parse_matrix(format_matrix(m)) == m);
  CHECK(parse_features(format_features(m)) == m);
  CHECK(format_features(m).rfind("FEAT 7 4\n", 0) == 0);
  CHECK(parse_fmap(format_fmap(m)) == m);
  CHECK(format_fmap(m).rfind("FMAP 7 4\n", 0) == 0);
  const Eigen::VectorXd ev = Eigen::VectorXd::LinSpaced(4, 0.0, 3.0);
  const auto [ev2, phi2] = parse_basis(format_basis(ev, m));
  CHECK(ev2 == ev);
  CHECK(phi2 == m);
  CHECK(format_basis(ev, m).rfind("SPECBASIS 4 7\n", 0) == 0);
}

TEST_CASE("header/body mismatches are parse errors") {
  CHECK(kind_of([] { parse_features("FEAT 2 2\n1 2\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_features("FEAT 1 2\n1 2 3\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_fmap("FMAP x 2\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_fmap("NOPE 1 1\n1\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_matrix("1 2\n3\n"); }) == ErrorKind::Parse);
}

TEST_CASE("correspondence files") {
  const std::vector<int> map = {3, 0, 2, 1};
  CHECK(format_correspondence(map) == "3\n0\n2\n1\n");
  CHECK(parse_correspondence("3\n0\n\n2\n1\n") == map);
  CHECK(kind_of([] { parse_correspondence("1 2\n"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_correspondence("-1\n"); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("landmark files: pairs or a single shared index") {
  const auto p = parse_landmark_pairs("# a comment\n1 5\n7\n");
  REQUIRE(p.size() == 2);
  CHECK(p[0] == std::pair{1, 5});
  CHECK(p[1] == std::pair{7, 7});
  CHECK(parse_landmark_pairs(format_landmark_pairs(p)) == p);
  CHECK(kind_of([] { parse_landmark_pairs("1 2 3\n"); }) == ErrorKind::Parse);
}

TEST_CASE("trace CSV layout") {
  CHECK(format_trace_csv({0.5, 0.25}, "residual") == "iteration,residual\n0,0.5\n1,0.25\n");
  CHECK(format_trace_csv({}, "energy") == "iteration,energy\n");
}

TEST_CASE("file helpers") {
  const auto dir = support::temp_dir("io");
  write_text_file(dir / "a.txt", "hello\n");
  CHECK(read_text_file(dir / "a.txt") == "hello\n");
  CHECK(kind_of([&] { read_text_file(dir / "missing.txt"); }) == ErrorKind::Io);
  std::filesystem::remove_all(dir);
}
