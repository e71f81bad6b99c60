#pragma once

// Data-parallel inner loops of the pipeline. Each kernel exists twice: a
// plain serial reference and an OpenMP version that splits the outer (row or
// source) loop. Both run the same per-row arithmetic in the same order, so
// their outputs are bit-identical; tests assert this and bench/ compares
// their throughput.

#include <Eigen/Core>

#include <span>
#include <vector>

namespace fmk {
struct EdgeGraph;
}

namespace fmk::kernels {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// For every row of `queries`, the index of the row of `database` at the
// smallest squared Euclidean distance (lowest index wins ties).
struct NearestResult {
  std::vector<int> index;
  std::vector<double> sq_distance;
};

// softmax_rows: row-stochastic softmax of <query_i, database_j> / tau with a
// row-max shift. dijkstra: one row of shortest-path distances per source.
// self_nearest_sq: per row, squared distance to the closest other row
// (infinity when there is a single row).

namespace serial {
NearestResult nearest_rows(const RowMatrix& queries, const RowMatrix& database);
RowMatrix softmax_rows(const RowMatrix& queries, const RowMatrix& database, double tau);
Eigen::MatrixXd dijkstra(const EdgeGraph& graph, std::span<const int> sources);
std::vector<double> self_nearest_sq(const RowMatrix& rows);
}  // namespace serial

namespace parallel {
NearestResult nearest_rows(const RowMatrix& queries, const RowMatrix& database);
RowMatrix softmax_rows(const RowMatrix& queries, const RowMatrix& database, double tau);
Eigen::MatrixXd dijkstra(const EdgeGraph& graph, std::span<const int> sources);
std::vector<double> self_nearest_sq(const RowMatrix& rows);
}  // namespace parallel

// Number of worker threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace fmk::kernels
