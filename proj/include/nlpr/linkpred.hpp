#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nlpr/distance.hpp"
#include "nlpr/graph.hpp"
#include "nlpr/pagerank.hpp"
#include "nlpr/rng.hpp"
#include "nlpr/smoothing.hpp"
#include "nlpr/solver.hpp"
#include "nlpr/transition.hpp"

namespace nlpr {

enum class ScoreMethod { LocalRooted, NonlocalRooted };

inline const char* name(ScoreMethod m) {
  return m == ScoreMethod::LocalRooted ? "local" : "nonlocal";
}

struct SplitSpec {
  double fraction = 0.10;
  std::uint64_t seed = 0;
  bool preserve_connectivity = false;
};

/// Parameter grids for the 10-fold cross-validation; the defaults are the
/// grids used throughout the link-prediction experiments.
struct CVGrid {
  std::vector<double> c_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.85, 0.9, 0.99};
  std::vector<double> alpha_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1, 2, 3, 5};
  int folds = 10;
  int trials = 15;

  void validate() const {
    if (c_values.empty() || alpha_values.empty()) throw std::invalid_argument("empty grid");
    for (double c : c_values)
      if (!(c > 0 && c < 1)) throw std::invalid_argument("grid c values must be in (0, 1)");
    for (double a : alpha_values)
      if (!(a > 0)) throw std::invalid_argument("grid alpha values must be positive");
    if (folds < 2) throw std::invalid_argument("folds must be at least 2");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  }
};

struct EdgeSplit {
  Digraph train;
  std::vector<std::pair<int, int>> removed;  // edge units, (i < j) when undirected
};

namespace detail {

inline bool trainConnected(const Digraph& g, const std::vector<std::pair<int, int>>& units,
                           const std::vector<std::pair<int, int>>& removed) {
  // union-find over the kept units, ignoring orientation
  std::vector<int> parent(static_cast<std::size_t>(g.nodeCount()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::unordered_set<std::uint64_t> gone;
  for (auto [a, b] : removed)
    gone.insert(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(g.nodeCount()) + b);
  int components = g.nodeCount();
  for (auto [a, b] : units) {
    if (gone.count(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(g.nodeCount()) + b))
      continue;
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[static_cast<std::size_t>(ra)] = rb;
      --components;
    }
  }
  return components == 1;
}

}  // namespace detail

/// Remove a uniformly random fraction of the edges (an undirected edge and
/// its reverse leave as one unit). The same seed reproduces the same split.
inline EdgeSplit removeEdges(const Digraph& g, const SplitSpec& spec) {
  if (!(spec.fraction > 0 && spec.fraction < 1))
    throw std::invalid_argument("fraction must be in (0, 1)");
  std::vector<std::pair<int, int>> units = edgeUnits(g);
  const auto count = static_cast<std::size_t>(spec.fraction * static_cast<double>(units.size()));
  if (count < 1) throw std::invalid_argument("graph too small for the requested fraction");

  std::mt19937_64 rng(spec.seed);
  const int max_attempts = spec.preserve_connectivity ? 200 : 1;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::pair<int, int>> pool = units;
    shuffleVec(pool, rng);
    std::vector<std::pair<int, int>> removed(pool.begin(), pool.begin() + static_cast<long>(count));
    if (spec.preserve_connectivity && !detail::trainConnected(g, units, removed)) continue;
    std::sort(removed.begin(), removed.end());
    return EdgeSplit{withUnitsRemoved(g, removed), std::move(removed)};
  }
  throw std::runtime_error("could not find a connectivity-preserving split");
}

struct ScoredPair {
  double score = 0;
  int i = 0;
  int j = 0;
};

namespace detail {

/// Label-order permutation: rank[i] = position of node i's label in the
/// sorted label order, so candidate ties break by label pair without string
/// compares in the hot loop.
inline std::vector<int> labelRanks(const std::vector<std::string>& labels) {
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(labels.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  return rank;
}

struct CandidateOrder {
  const std::vector<int>& rank;
  bool operator()(const ScoredPair& a, const ScoredPair& b) const {
    if (a.score != b.score) return a.score > b.score;
    const int rai = rank[static_cast<std::size_t>(a.i)], rbi = rank[static_cast<std::size_t>(b.i)];
    if (rai != rbi) return rai < rbi;
    return rank[static_cast<std::size_t>(a.j)] < rank[static_cast<std::size_t>(b.j)];
  }
};

inline void collectCandidates(const Digraph& g, const Matrix& similarity,
                              std::vector<ScoredPair>& out) {
  const int n = g.nodeCount();
  out.clear();
  if (g.undirected()) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!g.hasArc(i, j)) out.push_back({similarity(i, j), i, j});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !g.hasArc(i, j)) out.push_back({similarity(i, j), i, j});
  }
}

/// Number of held-out units among the top-m candidates, m = heldOut.size().
/// nth_element under the same total order scoreNonedges sorts by.
inline std::size_t topMHits(const Digraph& g, const Matrix& similarity,
                            const std::vector<std::pair<int, int>>& held_out,
                            const std::vector<int>& label_rank,
                            std::vector<ScoredPair>& scratch) {
  collectCandidates(g, similarity, scratch);
  const std::size_t m = std::min(held_out.size(), scratch.size());
  CandidateOrder cmp{label_rank};
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<long>(m), scratch.end(), cmp);
  std::unordered_set<std::uint64_t> wanted;
  const auto n = static_cast<std::uint64_t>(g.nodeCount());
  for (auto [a, b] : held_out) wanted.insert(static_cast<std::uint64_t>(a) * n + b);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < m; ++t) {
    const auto key = static_cast<std::uint64_t>(scratch[t].i) * n + scratch[t].j;
    hits += wanted.count(key);
  }
  return hits;
}

inline Matrix similarityFor(const Digraph& train, ScoreMethod method, double alpha, double c,
                            DistanceMethod dm) {
  if (method == ScoreMethod::LocalRooted)
    return rootedSimilarity(localTransition(train), c).s;
  const Matrix dist = distanceMatrixFor(train, dm);
  return rootedSimilarity(nonlocalTransition(dist, SmoothingFamily::powerLaw(alpha)), c,
                          std::optional<double>(alpha))
      .s;
}

}  // namespace detail

/// Every non-edge of the train graph scored by the rooted similarity,
/// sorted by descending score with ties broken by label pair. Undirected
/// graphs score unordered pairs once.
inline std::vector<ScoredPair> scoreNonedges(const Digraph& train, ScoreMethod method,
                                             double alpha, double c, DistanceMethod dm) {
  const Matrix similarity = detail::similarityFor(train, method, alpha, c, dm);
  std::vector<ScoredPair> scored;
  detail::collectCandidates(train, similarity, scored);
  const std::vector<int> rank = detail::labelRanks(train.labels());
  std::sort(scored.begin(), scored.end(), detail::CandidateOrder{rank});
  return scored;
}

/// Top-m hit rate, m = |removed|: the fraction of removed edges that appear
/// among the m best-scored candidates.
inline double predictionAccuracy(const std::vector<ScoredPair>& scored,
                                 const std::vector<std::pair<int, int>>& removed) {
  if (removed.empty()) throw std::invalid_argument("no removed edges to predict");
  std::unordered_set<std::uint64_t> wanted;
  std::uint64_t stride = 0;
  for (auto [a, b] : removed) stride = std::max<std::uint64_t>(stride, static_cast<std::uint64_t>(std::max(a, b)) + 1);
  for (const auto& sp : scored) stride = std::max<std::uint64_t>(stride, static_cast<std::uint64_t>(std::max(sp.i, sp.j)) + 1);
  for (auto [a, b] : removed) wanted.insert(static_cast<std::uint64_t>(a) * stride + b);
  const std::size_t m = std::min(removed.size(), scored.size());
  std::size_t hits = 0;
  for (std::size_t t = 0; t < m; ++t)
    hits += wanted.count(static_cast<std::uint64_t>(scored[t].i) * stride + scored[t].j);
  return static_cast<double>(hits) / static_cast<double>(removed.size());
}

struct GridChoice {
  double c = 0;
  std::optional<double> alpha;  // absent for the local method
};

/// 10-fold style grid search: the train edges are partitioned into folds,
/// each fold is held out once and predicted from the rest, and the grid
/// point with the best average accuracy wins. Ties prefer larger alpha,
/// then larger c. Distances are recomputed per fold, so the held-out edges
/// never leak through the distance matrix.
inline GridChoice crossValidate(const Digraph& train, const CVGrid& grid, ScoreMethod method,
                                DistanceMethod dm = DistanceMethod::ShortestPath,
                                std::uint64_t seed = 0) {
  grid.validate();
  std::vector<std::pair<int, int>> units = edgeUnits(train);
  if (units.size() < static_cast<std::size_t>(grid.folds))
    throw std::invalid_argument("too few edges for the requested fold count");
  std::mt19937_64 rng(seed);
  shuffleVec(units, rng);

  const bool local = method == ScoreMethod::LocalRooted;
  const std::size_t n_alpha = local ? 1 : grid.alpha_values.size();
  const std::size_t n_points = n_alpha * grid.c_values.size();
  std::vector<double> sum_accuracy(n_points, 0.0);

  const std::vector<int> label_rank = detail::labelRanks(train.labels());
  std::vector<ScoredPair> scratch;
  for (int fold = 0; fold < grid.folds; ++fold) {
    const std::size_t begin = units.size() * static_cast<std::size_t>(fold) / static_cast<std::size_t>(grid.folds);
    const std::size_t end = units.size() * static_cast<std::size_t>(fold + 1) / static_cast<std::size_t>(grid.folds);
    const std::vector<std::pair<int, int>> held_out(units.begin() + static_cast<long>(begin),
                                                    units.begin() + static_cast<long>(end));
    if (held_out.empty()) continue;
    const Digraph fold_train = withUnitsRemoved(train, held_out);

    StochasticMatrix base;
    Matrix dist;
    if (local)
      base = localTransition(fold_train);
    else
      dist = distanceMatrixFor(fold_train, dm);

    for (std::size_t ai = 0; ai < n_alpha; ++ai) {
      if (!local)
        base = nonlocalTransition(dist, SmoothingFamily::powerLaw(grid.alpha_values[ai]));
      for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
        const Matrix similarity = rootedSimilarity(base, grid.c_values[ci]).s;
        const std::size_t hits =
            detail::topMHits(fold_train, similarity, held_out, label_rank, scratch);
        sum_accuracy[ai * grid.c_values.size() + ci] +=
            static_cast<double>(hits) / static_cast<double>(held_out.size());
      }
    }
  }

  GridChoice best;
  double best_acc = -1.0;
  double best_alpha = -1.0;
  for (std::size_t ai = 0; ai < n_alpha; ++ai) {
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
      const double acc = sum_accuracy[ai * grid.c_values.size() + ci];
      const double alpha = local ? -1.0 : grid.alpha_values[ai];
      const double c = grid.c_values[ci];
      const bool better = acc > best_acc ||
                          (acc == best_acc && alpha > best_alpha) ||
                          (acc == best_acc && alpha == best_alpha && c > best.c);
      if (better) {
        best_acc = acc;
        best_alpha = alpha;
        best.c = c;
        if (!local) best.alpha = alpha;
      }
    }
  }
  return best;
}

struct TrialResult {
  int trial_id = 0;
  ScoreMethod method = ScoreMethod::LocalRooted;
  double chosen_c = 0;
  std::optional<double> chosen_alpha;
  double accuracy = 0;
};

/// The full protocol: per trial, a fresh random split, cross-validated
/// parameter choice for both methods on the train graph, and the final
/// accuracy of guessing the removed edges back. Deterministic under the
/// split seed.
inline std::vector<TrialResult> runTrials(const Digraph& g, const CVGrid& grid,
                                          const SplitSpec& spec,
                                          DistanceMethod dm = DistanceMethod::ShortestPath) {
  grid.validate();
  std::vector<TrialResult> results;
  results.reserve(static_cast<std::size_t>(grid.trials) * 2);
  for (int trial = 0; trial < grid.trials; ++trial) {
    SplitSpec trial_spec = spec;
    trial_spec.seed = deriveSeed(spec.seed, static_cast<std::uint64_t>(trial));
    const EdgeSplit split = removeEdges(g, trial_spec);
    const std::uint64_t cv_seed = deriveSeed(trial_spec.seed, 0x10000);

    for (ScoreMethod method : {ScoreMethod::LocalRooted, ScoreMethod::NonlocalRooted}) {
      const GridChoice choice = crossValidate(split.train, grid, method, dm, cv_seed);
      const auto scored = scoreNonedges(split.train, method, choice.alpha.value_or(1.0),
                                        choice.c, dm);
      results.push_back({trial, method, choice.c, choice.alpha,
                         predictionAccuracy(scored, split.removed)});
    }
  }
  return results;
}

struct MethodSummary {
  double median = 0;
  double q1 = 0;
  double q3 = 0;
};

inline MethodSummary summarizeAccuracies(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("no accuracies to summarize");
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
  };
  return MethodSummary{at(0.5), at(0.25), at(0.75)};
}

inline MethodSummary summarize(const std::vector<TrialResult>& results, ScoreMethod method) {
  std::vector<double> acc;
  for (const auto& r : results)
    if (r.method == method) acc.push_back(r.accuracy);
  return summarizeAccuracies(std::move(acc));
}

}  // namespace nlpr
