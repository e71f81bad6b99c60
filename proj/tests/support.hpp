#pragma once

#include "fmk/errors.hpp"
#include "fmk/fixtures.hpp"
#include "fmk/fmap.hpp"
#include "fmk/mesh.hpp"
#include "fmk/spectral.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace support {

// Kind of the fmk::Error thrown by f; fails the test when nothing is thrown.
inline fmk::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const fmk::Error& e) {
    return e.kind();
  }
  FAIL("expected an fmk::Error");
  return fmk::ErrorKind::InvalidArgument;
}

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FMK_TEST_DATA_DIR) / name;
}

// Fresh directory under the system temp dir, unique per call.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static int counter = 0;
  auto p = std::filesystem::temp_directory_path() /
           ("fmk_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// The permuted-copy pair with k=30 bases, built once per process.
struct Standard {
  fmk::fixtures::PermutedPair pair;
  fmk::SpectralBasis basis1;
  fmk::SpectralBasis basis2;
};

inline const Standard& standard() {
  static const Standard s = [] {
    Standard out{fmk::fixtures::standard_pair(), {}, {}};
    out.basis1 = fmk::eigenbasis(out.pair.source, 30);
    out.basis2 = fmk::eigenbasis(out.pair.target, 30);
    return out;
  }();
  return s;
}

inline fmk::HardMap truth(const Standard& s) {
  return fmk::HardMap{s.pair.target_to_source, s.pair.source.num_vertices()};
}

// Ground-truth functional map Phi2^T M2 P Phi1.
inline Eigen::MatrixXd truth_fmap(const Standard& s) {
  return fmk::properness_project(truth(s), s.basis1.phi, s.basis2.phi, s.basis2.mass);
}

// O(n^2) nearest-row search, lowest index on ties.
inline std::vector<int> brute_nearest(const Eigen::MatrixXd& queries, const Eigen::MatrixXd& database) {
  std::vector<int> out(static_cast<size_t>(queries.rows()));
  for (long i = 0; i < queries.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (long j = 0; j < database.rows(); ++j) {
      double d = 0.0;
      for (long c = 0; c < queries.cols(); ++c) {
        const double diff = queries(i, c) - database(j, c);
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        arg = static_cast<int>(j);
      }
    }
    out[static_cast<size_t>(i)] = arg;
  }
  return out;
}

inline Eigen::MatrixXd random_matrix(long rows, long cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (long c = 0; c < cols; ++c)
    for (long r = 0; r < rows; ++r) m(r, c) = g(rng);
  return m;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace support
