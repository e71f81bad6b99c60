#include "fmk/kernels.hpp"

#include "fmk/errors.hpp"
#include "fmk/mesh.hpp"

#include <cmath>
#include <limits>
#include <queue>

#ifdef FMK_HAVE_OPENMP
#include <omp.h>
#endif

namespace fmk::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-row bodies shared by both variants; only the outer loop differs.

inline void nearest_row(const RowMatrix& Q, const RowMatrix& D, long i, int& best, double& best_d) {
  const long p = Q.cols();
  const double* q = Q.data() + i * p;
  best = -1;
  best_d = kInf;
  for (long j = 0; j < D.rows(); ++j) {
    const double* d = D.data() + j * p;
    double s = 0.0;
    for (long c = 0; c < p; ++c) {
      const double diff = q[c] - d[c];
      s += diff * diff;
    }
    if (s < best_d) {
      best_d = s;
      best = static_cast<int>(j);
    }
  }
}

inline void softmax_row(const RowMatrix& Q, const RowMatrix& D, double tau, long i, double* out) {
  const long p = Q.cols();
  const long n = D.rows();
  const double* q = Q.data() + i * p;
  double row_max = -kInf;
  for (long j = 0; j < n; ++j) {
    const double* d = D.data() + j * p;
    double s = 0.0;
    for (long c = 0; c < p; ++c) s += q[c] * d[c];
    s /= tau;
    out[j] = s;
    if (s > row_max) row_max = s;
  }
  double sum = 0.0;
  for (long j = 0; j < n; ++j) {
    out[j] = std::exp(out[j] - row_max);
    sum += out[j];
  }
  for (long j = 0; j < n; ++j) out[j] /= sum;
}

void dijkstra_row(const EdgeGraph& g, int source, double* dist) {
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int v = 0; v < g.num_vertices; ++v) dist[v] = kInf;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (int e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
      const int v = g.neighbors[e];
      const double nd = d + g.lengths[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
}

inline double self_nearest_row(const RowMatrix& R, long i) {
  const long p = R.cols();
  const double* a = R.data() + i * p;
  double best = kInf;
  for (long j = 0; j < R.rows(); ++j) {
    if (j == i) continue;
    const double* b = R.data() + j * p;
    double s = 0.0;
    for (long c = 0; c < p; ++c) {
      const double diff = a[c] - b[c];
      s += diff * diff;
    }
    if (s < best) best = s;
  }
  return best;
}

void check_cols(const RowMatrix& a, const RowMatrix& b) {
  if (a.cols() != b.cols())
    fail(ErrorKind::ShapeMismatch,
         "row dimension mismatch: " + std::to_string(a.cols()) + " vs " + std::to_string(b.cols()));
}

void check_nearest(const RowMatrix& Q, const RowMatrix& D) {
  check_cols(Q, D);
  if (D.rows() == 0 && Q.rows() > 0) fail(ErrorKind::ShapeMismatch, "nearest-row search over an empty database");
}

void check_softmax(const RowMatrix& Q, const RowMatrix& D, double tau) {
  check_nearest(Q, D);
  if (!(tau > 0.0)) fail(ErrorKind::InvalidArgument, "softmax temperature must be positive");
}

}  // namespace

int max_threads() {
#ifdef FMK_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

NearestResult nearest_rows(const RowMatrix& queries, const RowMatrix& database) {
  check_nearest(queries, database);
  NearestResult r;
  r.index.resize(static_cast<size_t>(queries.rows()));
  r.sq_distance.resize(static_cast<size_t>(queries.rows()));
  for (long i = 0; i < queries.rows(); ++i) nearest_row(queries, database, i, r.index[i], r.sq_distance[i]);
  return r;
}

RowMatrix softmax_rows(const RowMatrix& queries, const RowMatrix& database, double tau) {
  check_softmax(queries, database, tau);
  RowMatrix out(queries.rows(), database.rows());
  for (long i = 0; i < queries.rows(); ++i) softmax_row(queries, database, tau, i, out.data() + i * out.cols());
  return out;
}

Eigen::MatrixXd dijkstra(const EdgeGraph& graph, std::span<const int> sources) {
  RowMatrix out(static_cast<long>(sources.size()), graph.num_vertices);
  for (size_t s = 0; s < sources.size(); ++s)
    dijkstra_row(graph, sources[s], out.data() + static_cast<long>(s) * out.cols());
  return out;
}

std::vector<double> self_nearest_sq(const RowMatrix& rows) {
  std::vector<double> out(static_cast<size_t>(rows.rows()));
  for (long i = 0; i < rows.rows(); ++i) out[i] = self_nearest_row(rows, i);
  return out;
}

}  // namespace serial

namespace parallel {

NearestResult nearest_rows(const RowMatrix& queries, const RowMatrix& database) {
  check_nearest(queries, database);
  NearestResult r;
  const long n = queries.rows();
  r.index.resize(static_cast<size_t>(n));
  r.sq_distance.resize(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) nearest_row(queries, database, i, r.index[i], r.sq_distance[i]);
  return r;
}

RowMatrix softmax_rows(const RowMatrix& queries, const RowMatrix& database, double tau) {
  check_softmax(queries, database, tau);
  RowMatrix out(queries.rows(), database.rows());
  const long n = queries.rows();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) softmax_row(queries, database, tau, i, out.data() + i * out.cols());
  return out;
}

Eigen::MatrixXd dijkstra(const EdgeGraph& graph, std::span<const int> sources) {
  RowMatrix out(static_cast<long>(sources.size()), graph.num_vertices);
  const long count = static_cast<long>(sources.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long s = 0; s < count; ++s) dijkstra_row(graph, sources[s], out.data() + s * out.cols());
  return out;
}

std::vector<double> self_nearest_sq(const RowMatrix& rows) {
  std::vector<double> out(static_cast<size_t>(rows.rows()));
  const long n = rows.rows();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = self_nearest_row(rows, i);
  return out;
}

}  // namespace parallel

}  // namespace fmk::kernels
