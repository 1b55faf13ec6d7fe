#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlpr/types.hpp"

namespace nlpr {

struct Arc {
  int to = 0;
  double weight = 1.0;
};

/// Loop-less directed graph over string-labelled nodes.
///
/// Node identity is the label; internal 0-based indices follow first
/// appearance. Duplicate arcs collapse to one, self-loops are dropped and
/// counted. Immutable after construction, safe to share across threads.
class Digraph {
 public:
  /// Build from ordered arcs over [0, n). When `undirected` is set the arc
  /// list is symmetrized. Weights default to 1; when given they must be > 0.
  Digraph(int n, const std::vector<std::tuple<int, int, double>>& arcs,
          std::vector<std::string> labels = {}, bool undirected = false,
          bool weighted = false)
      : n_(n), undirected_(undirected), weighted_(weighted), labels_(std::move(labels)) {
    if (n_ <= 0) throw std::invalid_argument("node count must be positive");
    if (labels_.empty()) {
      labels_.reserve(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i + 1));
    }
    if (static_cast<int>(labels_.size()) != n_)
      throw std::invalid_argument("label list does not match node count");
    out_.assign(static_cast<std::size_t>(n_), {});
    for (const auto& [u, v, w] : arcs) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("arc endpoint out of range");
      if (u == v) {
        ++loops_dropped_;
        continue;
      }
      if (weighted_ && !(w > 0)) throw std::invalid_argument("edge weight must be positive");
      out_[static_cast<std::size_t>(u)].push_back({v, weighted_ ? w : 1.0});
      if (undirected_) out_[static_cast<std::size_t>(v)].push_back({u, weighted_ ? w : 1.0});
    }
    arc_count_ = 0;
    for (auto& row : out_) {
      std::sort(row.begin(), row.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
      row.erase(std::unique(row.begin(), row.end(),
                            [](const Arc& a, const Arc& b) { return a.to == b.to; }),
                row.end());
      arc_count_ += row.size();
    }
  }

  int nodeCount() const { return n_; }
  /// Number of ordered arcs (an undirected edge contributes two).
  std::size_t arcCount() const { return arc_count_; }
  bool undirected() const { return undirected_; }
  bool weighted() const { return weighted_; }
  std::size_t loopsDropped() const { return loops_dropped_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

  std::span<const Arc> outArcs(int u) const {
    return {out_[static_cast<std::size_t>(u)].data(), out_[static_cast<std::size_t>(u)].size()};
  }

  bool hasArc(int u, int v) const {
    const auto& row = out_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Arc& a, int t) { return a.to < t; });
    return it != row.end() && it->to == v;
  }

  /// All ordered arcs as (from, to), sorted.
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(arc_count_);
    for (int u = 0; u < n_; ++u)
      for (const Arc& a : out_[static_cast<std::size_t>(u)]) result.emplace_back(u, a.to);
    return result;
  }

 private:
  int n_ = 0;
  bool undirected_ = false;
  bool weighted_ = false;
  std::size_t arc_count_ = 0;
  std::size_t loops_dropped_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<Arc>> out_;
};

/// k undirected layers over a shared node set; layer edges are unordered,
/// deduplicated, loop-less. A node belongs to a layer iff it has at least
/// one incident edge there.
class MultilayerGraph {
 public:
  MultilayerGraph(int n, std::vector<std::vector<std::pair<int, int>>> layers,
                  std::vector<std::string> labels = {},
                  std::vector<std::string> layer_names = {})
      : n_(n), labels_(std::move(labels)), layer_names_(std::move(layer_names)) {
    if (n_ <= 0) throw std::invalid_argument("node count must be positive");
    if (layers.empty()) throw std::invalid_argument("at least one layer required");
    if (labels_.empty()) {
      for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i + 1));
    }
    if (static_cast<int>(labels_.size()) != n_)
      throw std::invalid_argument("label list does not match node count");
    if (layer_names_.empty()) {
      for (std::size_t l = 0; l < layers.size(); ++l)
        layer_names_.push_back("layer" + std::to_string(l + 1));
    }
    if (layer_names_.size() != layers.size())
      throw std::invalid_argument("layer name list does not match layer count");
    member_.assign(layers.size(), std::vector<char>(static_cast<std::size_t>(n_), 0));
    layers_.reserve(layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
      std::vector<std::pair<int, int>> edges;
      for (auto [i, j] : layers[l]) {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
          throw std::invalid_argument("layer edge endpoint out of range");
        if (i == j) continue;  // loop-less in every layer
        edges.emplace_back(std::min(i, j), std::max(i, j));
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      for (auto [i, j] : edges) {
        member_[l][static_cast<std::size_t>(i)] = 1;
        member_[l][static_cast<std::size_t>(j)] = 1;
      }
      layers_.push_back(std::move(edges));
    }
  }

  int nodeCount() const { return n_; }
  int layerCount() const { return static_cast<int>(layers_.size()); }
  const std::vector<std::pair<int, int>>& layerEdges(int l) const {
    return layers_.at(static_cast<std::size_t>(l));
  }
  /// Incidence-based membership: node i has an edge in layer l.
  bool memberOf(int node, int layer) const {
    return member_.at(static_cast<std::size_t>(layer))[static_cast<std::size_t>(node)] != 0;
  }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::string>& layerNames() const { return layer_names_; }

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::string> layer_names_;
  std::vector<std::vector<std::pair<int, int>>> layers_;
  std::vector<std::vector<char>> member_;
};

namespace detail {

inline std::vector<std::string> internLabels(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    std::unordered_map<std::string, int>& index) {
  std::vector<std::string> labels;
  for (const auto& [a, b] : pairs) {
    for (const std::string* s : {&a, &b}) {
      if (index.emplace(*s, static_cast<int>(labels.size())).second) labels.push_back(*s);
    }
  }
  return labels;
}

}  // namespace detail

/// Build a Digraph from labelled pairs; nodes are the distinct labels in
/// first-appearance order. Undirected input inserts both orientations.
inline Digraph fromEdgeList(const std::vector<std::pair<std::string, std::string>>& pairs,
                            bool directed) {
  if (pairs.empty()) throw std::invalid_argument("empty edge list");
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels = detail::internLabels(pairs, index);
  std::vector<std::tuple<int, int, double>> arcs;
  arcs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) arcs.emplace_back(index.at(a), index.at(b), 1.0);
  return Digraph(static_cast<int>(labels.size()), arcs, std::move(labels), !directed);
}

/// Weighted variant; weights must be positive and duplicate edges collapse
/// (first occurrence wins).
inline Digraph fromWeightedEdgeList(
    const std::vector<std::tuple<std::string, std::string, double>>& rows, bool directed) {
  if (rows.empty()) throw std::invalid_argument("empty edge list");
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(rows.size());
  for (const auto& [a, b, w] : rows) pairs.emplace_back(a, b);
  std::unordered_map<std::string, int> index;
  std::vector<std::string> labels = detail::internLabels(pairs, index);
  std::vector<std::tuple<int, int, double>> arcs;
  arcs.reserve(rows.size());
  for (const auto& [a, b, w] : rows) arcs.emplace_back(index.at(a), index.at(b), w);
  return Digraph(static_cast<int>(labels.size()), arcs, std::move(labels), !directed, true);
}

/// Out-degrees (arc counts, or outgoing weight sums on weighted graphs).
inline Vector outDegrees(const Digraph& g) {
  Vector d = Vector::Zero(g.nodeCount());
  for (int u = 0; u < g.nodeCount(); ++u) {
    double sum = 0;
    for (const Arc& a : g.outArcs(u)) sum += g.weighted() ? a.weight : 1.0;
    d[u] = sum;
  }
  return d;
}

/// Union of all layers as an undirected Digraph sharing the node labels.
inline Digraph aggregate(const MultilayerGraph& m) {
  std::vector<std::tuple<int, int, double>> arcs;
  for (int l = 0; l < m.layerCount(); ++l)
    for (auto [i, j] : m.layerEdges(l)) arcs.emplace_back(i, j, 1.0);
  return Digraph(m.nodeCount(), arcs, m.labels(), /*undirected=*/true);
}

/// True iff every ordered pair of nodes is joined by a directed path.
inline bool isStronglyConnected(const Digraph& g) {
  const int n = g.nodeCount();
  std::vector<std::vector<int>> in(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (const Arc& a : g.outArcs(u)) in[static_cast<std::size_t>(a.to)].push_back(u);

  auto reachesAll = [n](auto&& neighbors) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : neighbors(u)) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };

  std::vector<int> fwd;
  bool forward = reachesAll([&](int u) {
    fwd.clear();
    for (const Arc& a : g.outArcs(u)) fwd.push_back(a.to);
    return fwd;
  });
  if (!forward) return false;
  return reachesAll([&](int u) { return in[static_cast<std::size_t>(u)]; });
}

/// Edge units for sampling: ordered arcs on directed graphs, unordered
/// pairs (i < j) on undirected ones.
inline std::vector<std::pair<int, int>> edgeUnits(const Digraph& g) {
  std::vector<std::pair<int, int>> units;
  for (int u = 0; u < g.nodeCount(); ++u)
    for (const Arc& a : g.outArcs(u))
      if (!g.undirected() || u < a.to) units.emplace_back(u, a.to);
  return units;
}

/// Copy of g with the given edge units removed (both orientations on
/// undirected graphs). Labels and directedness are preserved.
inline Digraph withUnitsRemoved(const Digraph& g, std::span<const std::pair<int, int>> units) {
  std::vector<std::pair<int, int>> sorted(units.begin(), units.end());
  if (g.undirected()) {
    for (auto& [a, b] : sorted)
      if (a > b) std::swap(a, b);
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::tuple<int, int, double>> arcs;
  arcs.reserve(g.arcCount());
  for (int u = 0; u < g.nodeCount(); ++u) {
    for (const Arc& a : g.outArcs(u)) {
      if (g.undirected() && u > a.to) continue;  // symmetrized by the constructor
      std::pair<int, int> key{u, a.to};
      if (std::binary_search(sorted.begin(), sorted.end(), key)) continue;
      arcs.emplace_back(u, a.to, a.weight);
    }
  }
  return Digraph(g.nodeCount(), arcs, g.labels(), g.undirected(), g.weighted());
}

}  // namespace nlpr
