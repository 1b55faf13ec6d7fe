#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nlpr/pagerank.hpp"
#include "nlpr/solver.hpp"
#include "nlpr/transition.hpp"
#include "nlpr/types.hpp"

namespace nlpr {

/// Ergodicity coefficient tau_1 = (1/2) max_{i,j} sum_k |M_ik - M_jk|.
/// Lies in [0, 1] for stochastic M and bounds every non-Perron eigenvalue
/// modulus. Pairwise row scan, O(n^3).
template <class Derived>
typename Derived::Scalar ergodicityCoefficient(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Scalar worst = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = i + 1; j < m.rows(); ++j) {
      const Scalar diff = (m.row(i) - m.row(j)).cwiseAbs().sum();
      if (diff > worst) worst = diff;
    }
  }
  return worst / Scalar(2);
}

template <class Scalar>
Scalar ergodicityCoefficient(const GoogleMatrixT<Scalar>& G) {
  return ergodicityCoefficient(G.dense());
}

/// Norm-1 condition number 1/(1 - tau_1) of the chain's stationary vector.
inline double conditionNumberFromTau(double tau1) {
  if (tau1 >= 1.0 - 1e-14) throw std::runtime_error("chain not ergodic in norm-1");
  return 1.0 / (1.0 - tau1);
}

template <class Scalar>
double conditionNumber(const GoogleMatrixT<Scalar>& G) {
  return conditionNumberFromTau(static_cast<double>(ergodicityCoefficient(G)));
}

/// Checks the stationary-vector perturbation bound
/// ||s - sbar||_1 <= ||G - Gbar||_1 / (1 - tau_1(G)), with the matrix norm
/// taken as the maximum absolute row sum (the row-vector convention).
/// A violation beyond solver tolerance signals a solver bug.
struct PerturbationReport {
  double lhs = 0;
  double rhs = 0;
  bool satisfied = false;
};

template <class Scalar>
PerturbationReport perturbationBoundCheck(const GoogleMatrixT<Scalar>& G,
                                          const GoogleMatrixT<Scalar>& Gbar,
                                          const PowerIterationOptions& opt = {}) {
  if (G.rows() != Gbar.rows()) throw std::invalid_argument("size mismatch");
  const Col<Scalar> s = stationaryDistribution(G, opt);
  const Col<Scalar> sbar = stationaryDistribution(Gbar, opt);
  PerturbationReport r;
  r.lhs = static_cast<double>((s - sbar).template lpNorm<1>());
  const double tau = static_cast<double>(ergodicityCoefficient(G));
  r.rhs = static_cast<double>(norm1RowMax(G.dense() - Gbar.dense())) / (1.0 - tau);
  r.satisfied = r.lhs <= r.rhs + 1e-10;
  return r;
}

/// Tie-corrected Kendall tau-b between two score vectors, O(n^2) pair scan.
inline double kendallTauB(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("size mismatch");
  const Index n = x.size();
  std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0, ties_both = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0)
        ++ties_both;
      else if (dx == 0)
        ++ties_x;
      else if (dy == 0)
        ++ties_y;
      else if (dx * dy > 0)
        ++concordant;
      else
        ++discordant;
    }
  }
  // pairs tied in x include those tied in both, likewise for y
  const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double denom = std::sqrt((n0 - static_cast<double>(ties_x + ties_both)) *
                                 (n0 - static_cast<double>(ties_y + ties_both)));
  if (denom == 0) return 0.0;
  return static_cast<double>(concordant - discordant) / denom;
}

/// Kendall tau-b of two rank vectors over the same label set; b's scores are
/// aligned to a's label order first.
inline double kendallTau(const RankVector& a, const RankVector& b) {
  if (a.labels.size() != b.labels.size()) throw std::invalid_argument("label sets differ");
  std::unordered_map<std::string, Index> where;
  for (std::size_t i = 0; i < b.labels.size(); ++i)
    where.emplace(b.labels[i], static_cast<Index>(i));
  Vector aligned(b.scores.size());
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    auto it = where.find(a.labels[i]);
    if (it == where.end())
      throw std::invalid_argument("label sets differ: missing " + a.labels[i]);
    aligned[static_cast<Index>(i)] = b.scores[it->second];
  }
  return kendallTauB(a.scores, aligned);
}

using RankedList = std::vector<std::string>;

/// Intersection similarity between two ranked lists:
/// ISIM_k = (1/k) sum_{j<=k} |symdiff(p_1..j, q_1..j)| / (2j).
/// 0 iff the length-j prefixes agree as sets for every j <= k, 1 when the
/// prefixes are disjoint throughout.
inline Vector intersectionSimilarity(const RankedList& p, const RankedList& q, int k_max) {
  auto checkDuplicates = [](const RankedList& list, const char* which) {
    std::unordered_set<std::string> seen;
    for (const auto& s : list)
      if (!seen.insert(s).second)
        throw std::invalid_argument(std::string("duplicate label in ranked list ") + which +
                                    ": " + s);
  };
  checkDuplicates(p, "p");
  checkDuplicates(q, "q");
  if (k_max < 1 || k_max > static_cast<int>(std::min(p.size(), q.size())))
    throw std::invalid_argument("k_max must be in [1, min(|p|, |q|)]");

  Vector isim(k_max);
  std::unordered_map<std::string, int> side;  // +1 only in p-prefix, -1 only in q-prefix
  std::int64_t symdiff = 0;
  double accum = 0;
  for (int j = 1; j <= k_max; ++j) {
    for (int which = 0; which < 2; ++which) {
      const std::string& s = which == 0 ? p[static_cast<std::size_t>(j - 1)]
                                        : q[static_cast<std::size_t>(j - 1)];
      int& state = side.try_emplace(s, 0).first->second;
      const int mark = which == 0 ? 1 : -1;
      if (state == -mark) {
        state = 2;  // present in both prefixes
        --symdiff;
      } else if (state == 0) {
        state = mark;
        ++symdiff;
      }
    }
    accum += static_cast<double>(symdiff) / (2.0 * j);
    isim[j - 1] = accum / j;
  }
  return isim;
}

/// Localization diagnostic sum_i s_i^2: 1/n for the uniform vector, 1 for a
/// point mass.
inline double inverseParticipationRatio(const RankVector& s) { return s.scores.squaredNorm(); }

struct ErgodicitySweepRow {
  double alpha = 0;
  double tau_nonlocal = 0;
  double tau_local = 0;
  double difference = 0;  // tau_local - tau_nonlocal
};

/// tau_1 comparison of the distance-decay chain against the local chain on
/// the same graph, over a grid of alpha values (shortest-path distance).
inline std::vector<ErgodicitySweepRow> ergodicitySweep(const Digraph& g,
                                                       const std::vector<double>& alphas,
                                                       SmoothingKind kind, double c) {
  const Matrix dist = shortestPathAllPairs(g);
  const GoogleMatrix local = googleMatrix(localTransition(g), c);
  const double tau_local = ergodicityCoefficient(local);
  std::vector<ErgodicitySweepRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    const GoogleMatrix nonlocal =
        googleMatrix(nonlocalTransition(dist, SmoothingFamily::make(kind, alpha)), c);
    const double tau_alpha = ergodicityCoefficient(nonlocal);
    rows.push_back({alpha, tau_alpha, tau_local, tau_local - tau_alpha});
  }
  return rows;
}

}  // namespace nlpr
