#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlpr/graph.hpp"
#include "nlpr/smoothing.hpp"
#include "nlpr/types.hpp"

namespace nlpr {

/// Row-stochastic transition matrix. Rows that had no admissible move were
/// patched to the uniform distribution and are listed in `dangling`; all
/// other rows have a zero diagonal. Every row sums to 1 within 1e-12.
template <class Scalar = double>
struct StochasticMatrixT {
  Dense<Scalar> p;
  std::vector<Index> dangling;

  Index rows() const { return p.rows(); }
};

using StochasticMatrix = StochasticMatrixT<double>;

/// Uniform-over-out-neighbours walk: p(i,j) = 1/outdeg(i) on arcs, with
/// zero-out-degree rows patched to uniform. Adjacency is taken binary even
/// on weighted graphs.
inline StochasticMatrix localTransition(const Digraph& g) {
  const int n = g.nodeCount();
  StochasticMatrix result;
  result.p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto arcs = g.outArcs(i);
    if (arcs.empty()) {
      result.dangling.push_back(i);
      result.p.row(i).setConstant(1.0 / n);
      continue;
    }
    const double share = 1.0 / static_cast<double>(arcs.size());
    for (const Arc& a : arcs) result.p(i, a.to) = share;
  }
  return result;
}

/// Distance-decay walk: p(i,j) proportional to f(d(i,j)) over j != i at
/// finite distance, zero diagonal. Rows with no finite off-diagonal distance
/// are patched to uniform and recorded as dangling. A row whose normalizer
/// underflows to zero despite finite distances is an error (alpha too large
/// for this distance scale).
template <class Scalar>
StochasticMatrixT<Scalar> nonlocalTransition(const Dense<Scalar>& distances,
                                             const SmoothingFamily& f) {
  const Index n = distances.rows();
  if (distances.cols() != n) throw std::invalid_argument("distance matrix must be square");

  // Distance matrices coming from hop counts hold small integers; memoize
  // f over a value table in that case instead of calling pow n^2 times.
  std::vector<Scalar> table;
  {
    double max_finite = 0;
    bool integral = true;
    for (Index i = 0; i < n && integral; ++i) {
      for (Index j = 0; j < n; ++j) {
        const double x = static_cast<double>(distances(i, j));
        if (x == kInf) continue;
        if (x != std::floor(x) || x > 65536.0) {
          integral = false;
          break;
        }
        if (x > max_finite) max_finite = x;
      }
    }
    if (integral) {
      table.resize(static_cast<std::size_t>(max_finite) + 1);
      for (std::size_t v = 0; v < table.size(); ++v)
        table[v] = v == 0 ? Scalar(0) : static_cast<Scalar>(f(static_cast<double>(v)));
    }
  }

  StochasticMatrixT<Scalar> result;
  result.p = Dense<Scalar>::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (distances(i, i) != 0) throw std::invalid_argument("distance matrix diagonal must be zero");
    Scalar sum = 0;
    bool any_finite = false;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double x = static_cast<double>(distances(i, j));
      if (x == kInf) continue;
      any_finite = true;
      const Scalar w = table.empty() ? static_cast<Scalar>(f(x))
                                     : table[static_cast<std::size_t>(x)];
      result.p(i, j) = w;
      sum += w;
    }
    if (!any_finite) {
      result.dangling.push_back(i);
      result.p.row(i).setConstant(Scalar(1) / static_cast<Scalar>(n));
      continue;
    }
    if (sum <= Scalar(0))
      throw std::runtime_error("smoothing underflow in row " + std::to_string(i) +
                               " (alpha = " + std::to_string(f.alpha) + ")");
    result.p.row(i) /= sum;
  }
  return result;
}

/// Teleportation-augmented chain G = c P + (1-c) 1 v^T, stored lazily as
/// (c, P, v) so solvers can use the rank-one structure; dense() materializes
/// on demand for the O(n^3) analyses.
template <class Scalar = double>
struct GoogleMatrixT {
  Scalar c = Scalar(0.85);
  StochasticMatrixT<Scalar> base;
  Col<Scalar> v;

  Index rows() const { return base.rows(); }

  Dense<Scalar> dense() const {
    return c * base.p + (Scalar(1) - c) * Col<Scalar>::Ones(rows()) * v.transpose();
  }
};

using GoogleMatrix = GoogleMatrixT<double>;

template <class Scalar>
GoogleMatrixT<Scalar> googleMatrix(StochasticMatrixT<Scalar> base, Scalar c,
                                   std::optional<Col<Scalar>> teleport = {}) {
  if (!(c > 0) || c > 1) throw std::invalid_argument("teleportation factor c must be in (0, 1]");
  const Index n = base.rows();
  Col<Scalar> v;
  if (teleport) {
    v = std::move(*teleport);
    if (v.size() != n) throw std::invalid_argument("teleport vector size mismatch");
    if ((v.array() < 0).any()) throw std::invalid_argument("teleport vector must be nonnegative");
    if (std::abs(static_cast<double>(v.sum()) - 1.0) > 1e-12)
      throw std::invalid_argument("teleport vector must sum to 1");
  } else {
    v = Col<Scalar>::Constant(n, Scalar(1) / static_cast<Scalar>(n));
  }
  return GoogleMatrixT<Scalar>{c, std::move(base), std::move(v)};
}

}  // namespace nlpr
