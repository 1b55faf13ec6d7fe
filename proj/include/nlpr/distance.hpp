#pragma once

#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlpr/graph.hpp"
#include "nlpr/types.hpp"

namespace nlpr {

/// Distance matrices are plain dense matrices with a zero diagonal,
/// nonnegative finite entries and IEEE +inf for unreachable pairs.
inline void validateDistanceMatrix(const Matrix& d) {
  if (d.rows() != d.cols()) throw std::invalid_argument("distance matrix must be square");
  for (Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
    for (Index j = 0; j < d.cols(); ++j) {
      const double x = d(i, j);
      if (std::isnan(x)) throw std::invalid_argument("distance matrix contains NaN");
      if (x < 0.0) throw std::invalid_argument("distance matrix contains a negative entry");
    }
  }
}

enum class ApspAlgorithm {
  PerSource,       // BFS (unweighted) or Dijkstra (weighted), O(n·m) / O(n·m log n)
  FloydWarshall,   // dense O(n^3) cross-check path
};

namespace detail {

inline void bfsRow(const Digraph& g, int source, Eigen::Ref<Eigen::RowVectorXd> row) {
  row.setConstant(kInf);
  std::deque<int> queue;
  row[source] = 0.0;
  queue.push_back(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const double du = row[u];
    for (const Arc& a : g.outArcs(u)) {
      if (row[a.to] == kInf) {
        row[a.to] = du + 1.0;
        queue.push_back(a.to);
      }
    }
  }
}

inline void dijkstraRow(const Digraph& g, int source, Eigen::Ref<Eigen::RowVectorXd> row) {
  row.setConstant(kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  row[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > row[u]) continue;
    for (const Arc& a : g.outArcs(u)) {
      const double dv = du + a.weight;
      if (dv < row[a.to]) {
        row[a.to] = dv;
        heap.emplace(dv, a.to);
      }
    }
  }
}

}  // namespace detail

/// All-pairs shortest paths; d(i,j) is the minimal arc count (or weight sum)
/// over directed paths, +inf when unreachable. Weights must be nonnegative.
inline Matrix shortestPathAllPairs(const Digraph& g,
                                   ApspAlgorithm algo = ApspAlgorithm::PerSource) {
  const int n = g.nodeCount();
  if (g.weighted()) {
    for (int u = 0; u < n; ++u)
      for (const Arc& a : g.outArcs(u))
        if (a.weight < 0) throw std::invalid_argument("negative edge weights are not supported");
  }
  Matrix d(n, n);
  if (algo == ApspAlgorithm::FloydWarshall) {
    d.setConstant(kInf);
    for (int i = 0; i < n; ++i) d(i, i) = 0.0;
    for (int u = 0; u < n; ++u)
      for (const Arc& a : g.outArcs(u)) d(u, a.to) = g.weighted() ? a.weight : 1.0;
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        const double dik = d(i, k);
        if (dik == kInf) continue;
        for (int j = 0; j < n; ++j) {
          const double via = dik + d(k, j);
          if (via < d(i, j)) d(i, j) = via;
        }
      }
    }
    return d;
  }
  for (int s = 0; s < n; ++s) {
    if (g.weighted())
      detail::dijkstraRow(g, s, d.row(s));
    else
      detail::bfsRow(g, s, d.row(s));
  }
  return d;
}

/// Distance from the regularized Laplacian kernel: with L = D_out - A and
/// S = (I + L)^{-1}, take H = log S entrywise, h = diag H, U = h 1^T - H and
/// return (U + U^T)/2. Symmetric with zero diagonal; kernel zeros map to
/// +inf. I + L is a nonsingular M-matrix, so the dense LU solve cannot fail
/// for a valid graph; a degenerate factorization is reported as an error.
inline Matrix logarithmicDistance(const Digraph& g) {
  const int n = g.nodeCount();
  Matrix ipl = Matrix::Zero(n, n);  // I + D_out - A, adjacency taken binary
  for (int u = 0; u < n; ++u) {
    const auto arcs = g.outArcs(u);
    ipl(u, u) = 1.0 + static_cast<double>(arcs.size());
    for (const Arc& a : arcs) ipl(u, a.to) -= 1.0;
  }
  Eigen::PartialPivLU<Matrix> lu(ipl);
  Matrix S = lu.solve(Matrix::Identity(n, n));
  const double residual = (ipl * S - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!std::isfinite(residual) || residual > 1e-8)
    throw std::runtime_error("regularized Laplacian kernel solve failed");

  Matrix H(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      H(i, j) = S(i, j) < 1e-300 ? -kInf : std::log(S(i, j));  // kernel zero -> -inf log

  Matrix delta(n, n);
  for (Index i = 0; i < n; ++i) {
    delta(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      // ((U + U^T)/2)_{ij} with U = h 1^T - H
      const double u_ij = H(i, i) - H(i, j);
      const double u_ji = H(j, j) - H(j, i);
      const double v = 0.5 * (u_ij + u_ji);
      delta(i, j) = v;
      delta(j, i) = v;
    }
  }
  return delta;
}

/// The supra-adjacency expansion of a multilayer graph: one copy of every
/// node per layer (layer-major ids), intra-layer edges inside each block and
/// a coupling edge between two copies of node i exactly when i has incident
/// edges in both layers.
struct ExpandedGraph {
  int base_n = 0;
  int k = 0;
  Digraph graph;

  int copyIndex(int node, int layer) const { return layer * base_n + node; }
};

inline ExpandedGraph expandMultilayer(const MultilayerGraph& m) {
  const int n = m.nodeCount();
  const int k = m.layerCount();
  std::vector<std::tuple<int, int, double>> arcs;
  for (int l = 0; l < k; ++l)
    for (auto [i, j] : m.layerEdges(l)) arcs.emplace_back(l * n + i, l * n + j, 1.0);
  for (int i = 0; i < n; ++i)
    for (int l1 = 0; l1 < k; ++l1)
      for (int l2 = l1 + 1; l2 < k; ++l2)
        if (m.memberOf(i, l1) && m.memberOf(i, l2)) arcs.emplace_back(l1 * n + i, l2 * n + i, 1.0);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < n; ++i) labels.push_back(m.labels()[static_cast<std::size_t>(i)] + "@" + m.layerNames()[static_cast<std::size_t>(l)]);
  return ExpandedGraph{n, k, Digraph(n * k, arcs, std::move(labels), /*undirected=*/true)};
}

/// Line-change-penalized distance: the minimum expanded-graph shortest path
/// over all layer-copy pairs of i and j. Every coupling hop costs 1, so a
/// path pays its station hops plus its line changes. d(i,i) = 0.
inline Matrix metroDistance(const MultilayerGraph& m) {
  const int n = m.nodeCount();
  const int k = m.layerCount();
  for (int i = 0; i < n; ++i) {
    bool member = false;
    for (int l = 0; l < k && !member; ++l) member = m.memberOf(i, l);
    if (!member) throw std::invalid_argument("isolated node has no layer copy: " +
                                             m.labels()[static_cast<std::size_t>(i)]);
  }
  const ExpandedGraph expanded = expandMultilayer(m);
  Matrix d = Matrix::Constant(n, n, kInf);
  Eigen::RowVectorXd row(expanded.graph.nodeCount());
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int l = 0; l < k; ++l) {
      if (!m.memberOf(i, l)) continue;
      detail::bfsRow(expanded.graph, expanded.copyIndex(i, l), row);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int l2 = 0; l2 < k; ++l2) {
          const double v = row[expanded.copyIndex(j, l2)];
          if (v < d(i, j)) d(i, j) = v;
        }
      }
    }
  }
  return d;
}

}  // namespace nlpr
