#pragma once

// Plain-text file formats. Doubles are written in shortest round-trip form so
// that write -> read is lossless and reruns are byte-identical. Readers skip
// blank lines and anything after a '#'.

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fmk {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string format_double(double value);

// Whitespace-separated decimals, one row per line. All rows must have the
// same length.
std::string format_matrix(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_matrix(const std::string& text);

// "FEAT n d" header, then n rows of d values.
std::string format_features(const Eigen::MatrixXd& values);
Eigen::MatrixXd parse_features(const std::string& text);

// "FMAP k2 k1" header, then k2 rows of k1 values.
std::string format_fmap(const Eigen::MatrixXd& C);
Eigen::MatrixXd parse_fmap(const std::string& text);

// "SPECBASIS k n" header, the k eigenvalues on one line, then n rows of Phi.
std::string format_basis(const Eigen::VectorXd& eigenvalues, const Eigen::MatrixXd& phi);
std::pair<Eigen::VectorXd, Eigen::MatrixXd> parse_basis(const std::string& text);

// One 0-based target index per line.
std::string format_correspondence(const std::vector<int>& map);
std::vector<int> parse_correspondence(const std::string& text);

// Landmark pairs "i j": vertex i on the source shape corresponds to vertex j
// on the target shape. Single-column files use the same index on both sides.
std::vector<std::pair<int, int>> parse_landmark_pairs(const std::string& text);
std::string format_landmark_pairs(const std::vector<std::pair<int, int>>& pairs);

// "iteration,<value_name>" header then one line per entry.
std::string format_trace_csv(const std::vector<double>& trace, const std::string& value_name);

}  // namespace fmk
