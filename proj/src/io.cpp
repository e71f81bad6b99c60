#include "fmk/io.hpp"

#include "fmk/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace fmk {

namespace {

std::vector<std::vector<std::string>> tokenized_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (!tok.empty()) out.push_back(std::move(tok));
  }
  return out;
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(ErrorKind::Parse, "bad number '" + tok + "'");
  return v;
}

long parse_long(const std::string& tok) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(ErrorKind::Parse, "bad integer '" + tok + "'");
  return v;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<std::string>>& lines, size_t first, long rows,
                               long cols) {
  if (static_cast<long>(lines.size() - first) != rows)
    fail(ErrorKind::Parse, "expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - first));
  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const auto& tok = lines[first + static_cast<size_t>(r)];
    if (static_cast<long>(tok.size()) != cols)
      fail(ErrorKind::Parse, "row " + std::to_string(r) + " has " + std::to_string(tok.size()) + " values, expected " +
                                 std::to_string(cols));
    for (long c = 0; c < cols; ++c) m(r, c) = parse_double(tok[static_cast<size_t>(c)]);
  }
  return m;
}

std::pair<long, long> header_dims(const std::vector<std::vector<std::string>>& lines, const char* tag) {
  if (lines.empty() || lines[0].size() != 3 || lines[0][0] != tag)
    fail(ErrorKind::Parse, std::string("expected header '") + tag + " <rows> <cols>'");
  long a = parse_long(lines[0][1]), b = parse_long(lines[0][2]);
  if (a < 0 || b < 0) fail(ErrorKind::Parse, "negative dimension in header");
  return {a, b};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) fail(ErrorKind::Io, "cannot format number");
  return std::string(buf, ptr);
}

std::string format_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
  auto lines = tokenized_lines(text);
  if (lines.empty()) return Eigen::MatrixXd(0, 0);
  return rows_to_matrix(lines, 0, static_cast<long>(lines.size()), static_cast<long>(lines[0].size()));
}

std::string format_features(const Eigen::MatrixXd& values) {
  return "FEAT " + std::to_string(values.rows()) + " " + std::to_string(values.cols()) + "\n" + format_matrix(values);
}

Eigen::MatrixXd parse_features(const std::string& text) {
  auto lines = tokenized_lines(text);
  auto [n, d] = header_dims(lines, "FEAT");
  return rows_to_matrix(lines, 1, n, d);
}

std::string format_fmap(const Eigen::MatrixXd& C) {
  return "FMAP " + std::to_string(C.rows()) + " " + std::to_string(C.cols()) + "\n" + format_matrix(C);
}

Eigen::MatrixXd parse_fmap(const std::string& text) {
  auto lines = tokenized_lines(text);
  auto [k2, k1] = header_dims(lines, "FMAP");
  return rows_to_matrix(lines, 1, k2, k1);
}

std::string format_basis(const Eigen::VectorXd& eigenvalues, const Eigen::MatrixXd& phi) {
  if (phi.cols() != eigenvalues.size()) fail(ErrorKind::ShapeMismatch, "basis columns != eigenvalue count");
  std::string out = "SPECBASIS " + std::to_string(phi.cols()) + " " + std::to_string(phi.rows()) + "\n";
  out += format_matrix(eigenvalues.transpose());
  out += format_matrix(phi);
  return out;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> parse_basis(const std::string& text) {
  auto lines = tokenized_lines(text);
  auto [k, n] = header_dims(lines, "SPECBASIS");
  if (lines.size() < 2) fail(ErrorKind::Parse, "missing eigenvalue row");
  std::vector<std::vector<std::string>> head(lines.begin() + 1, lines.begin() + 2);
  Eigen::VectorXd evals = rows_to_matrix(head, 0, 1, k).row(0).transpose();
  std::vector<std::vector<std::string>> body(lines.begin() + 2, lines.end());
  return {evals, rows_to_matrix(body, 0, n, k)};
}

std::string format_correspondence(const std::vector<int>& map) {
  std::string out;
  for (int v : map) out += std::to_string(v) + "\n";
  return out;
}

std::vector<int> parse_correspondence(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : tokenized_lines(text)) {
    if (tok.size() != 1) fail(ErrorKind::Parse, "correspondence lines hold exactly one index");
    long v = parse_long(tok[0]);
    if (v < 0) fail(ErrorKind::IndexOutOfRange, "negative correspondence index");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::pair<int, int>> parse_landmark_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  for (const auto& tok : tokenized_lines(text)) {
    if (tok.size() != 1 && tok.size() != 2) fail(ErrorKind::Parse, "landmark lines hold one or two indices");
    long a = parse_long(tok[0]);
    long b = tok.size() == 2 ? parse_long(tok[1]) : a;
    if (a < 0 || b < 0) fail(ErrorKind::IndexOutOfRange, "negative landmark index");
    out.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return out;
}

std::string format_landmark_pairs(const std::vector<std::pair<int, int>>& pairs) {
  std::string out;
  for (auto [a, b] : pairs) out += std::to_string(a) + " " + std::to_string(b) + "\n";
  return out;
}

std::string format_trace_csv(const std::vector<double>& trace, const std::string& value_name) {
  std::string out = "iteration," + value_name + "\n";
  for (size_t i = 0; i < trace.size(); ++i) out += std::to_string(i) + "," + format_double(trace[i]) + "\n";
  return out;
}

}  // namespace fmk
