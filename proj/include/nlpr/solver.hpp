#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlpr/transition.hpp"
#include "nlpr/types.hpp"

namespace nlpr {

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iter = 10000;
  std::optional<Vector> start;  // positive, defaults to uniform
};

/// Stationary distribution of a Google matrix by power iteration on the
/// rank-one teleport form: s <- c P^T s + (1-c) v, renormalized each sweep.
/// Converged when the sweep moves s by less than tol in the 1-norm, which
/// equals the residual ||s^T G - s^T||_1. Throws on non-convergence, with
/// the last residual in the message.
template <class Scalar>
Col<Scalar> stationaryDistribution(const GoogleMatrixT<Scalar>& G,
                                   const PowerIterationOptions& opt = {}) {
  const Index n = G.rows();
  Col<Scalar> s;
  if (opt.start) {
    if (opt.start->size() != n) throw std::invalid_argument("start vector size mismatch");
    if ((opt.start->array() <= 0).any())
      throw std::invalid_argument("start vector must be positive");
    s = opt.start->template cast<Scalar>();
    s /= s.sum();
  } else {
    s = Col<Scalar>::Constant(n, Scalar(1) / static_cast<Scalar>(n));
  }
  Col<Scalar> next(n);
  double residual = kInf;
  for (int it = 0; it < opt.max_iter; ++it) {
    next.noalias() = G.c * (G.base.p.transpose() * s);
    next += (Scalar(1) - G.c) * G.v;
    residual = static_cast<double>((next - s).template lpNorm<1>());
    next /= next.sum();
    s.swap(next);
    if (residual <= opt.tol) return s;
  }
  throw std::runtime_error("power iteration did not converge within " +
                           std::to_string(opt.max_iter) +
                           " sweeps (residual " + std::to_string(residual) + ")");
}

/// Direct dense alternative to the power iteration: solves s^T (I - G) = 0
/// with the normalization sum(s) = 1 replacing the last equation.
template <class Scalar>
Col<Scalar> stationaryDenseSolve(const GoogleMatrixT<Scalar>& G) {
  const Index n = G.rows();
  Dense<Scalar> a = Dense<Scalar>::Identity(n, n) - G.dense().transpose();
  a.row(n - 1).setOnes();
  Col<Scalar> b = Col<Scalar>::Zero(n);
  b[n - 1] = Scalar(1);
  return Eigen::PartialPivLU<Dense<Scalar>>(a).solve(b);
}

/// Rooted PageRank similarity: X = (1-c)(I - c P^T)^{-1}, S = X + X^T.
/// One LU factorization, O(n^3). Requires c in (0, 1); the resolvent is
/// nonsingular there because the spectral radius of cP is at most c.
template <class Scalar = double>
struct SimilarityMatrixT {
  Dense<Scalar> s;
  Scalar c = Scalar(0);
  std::optional<Scalar> alpha;
};

using SimilarityMatrix = SimilarityMatrixT<double>;

/// X = (1-c)(I - c P^T)^{-1}. Column j is (1-c) times the rooted PageRank
/// seeded at node j without teleport renormalization; every column of X^T
/// sums to 1.
template <class Scalar>
Dense<Scalar> rootedResolvent(const StochasticMatrixT<Scalar>& P, Scalar c) {
  if (!(c > 0 && c < 1)) throw std::invalid_argument("rooted similarity needs c in (0, 1)");
  Dense<Scalar> a = -c * P.p.transpose();
  a.diagonal().array() += Scalar(1);
  Dense<Scalar> x = (Scalar(1) - c) * Eigen::PartialPivLU<Dense<Scalar>>(a).inverse();
  if (!x.allFinite()) throw std::runtime_error("resolvent factorization failed");
  return x;
}

template <class Scalar>
SimilarityMatrixT<Scalar> rootedSimilarity(const StochasticMatrixT<Scalar>& P, Scalar c,
                                           std::optional<Scalar> alpha = {}) {
  const Dense<Scalar> x = rootedResolvent(P, c);
  SimilarityMatrixT<Scalar> result;
  result.s = x + x.transpose();
  result.c = c;
  result.alpha = alpha;
  return result;
}

/// A stationary distribution with node labels and the parameters that
/// produced it. Scores are positive and sum to 1 (within 1e-10).
struct RankVector {
  Vector scores;
  std::vector<std::string> labels;
  std::optional<double> alpha;  // absent for the local walk
  std::string distance;         // "none", "sp", "log", "metro"
  std::string smoothing;        // "power", "exp", or "" for local
  double c = 0.85;
};

inline RankVector makeRankVector(Vector scores, std::vector<std::string> labels,
                                 std::string distance, std::string smoothing,
                                 std::optional<double> alpha, double c) {
  if (scores.size() != static_cast<Index>(labels.size()))
    throw std::invalid_argument("scores/labels size mismatch");
  if (std::abs(scores.sum() - 1.0) > 1e-10)
    throw std::runtime_error("rank vector does not sum to 1");
  if ((scores.array() <= 0).any())
    throw std::runtime_error("rank vector has a nonpositive score");
  return RankVector{std::move(scores), std::move(labels), alpha,
                    std::move(distance), std::move(smoothing), c};
}

/// Labels ordered best-first: descending score, ties broken by ascending
/// label so downstream comparisons are deterministic.
inline std::vector<std::string> rankedLabels(const RankVector& r) {
  std::vector<int> order(static_cast<std::size_t>(r.scores.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    return r.labels[static_cast<std::size_t>(a)] < r.labels[static_cast<std::size_t>(b)];
  });
  std::vector<std::string> out;
  out.reserve(order.size());
  for (int i : order) out.push_back(r.labels[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace nlpr
