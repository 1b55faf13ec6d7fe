#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "nlpr/graph.hpp"
#include "nlpr/rng.hpp"

namespace nlpr {

// Seeded synthetic graphs used by the experiment harnesses and tests.
// Nodes are labelled "1".."n".

inline Digraph cycleGraph(int n, bool directed = false) {
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n, 1.0);
  return Digraph(n, arcs, {}, !directed);
}

/// Undirected n-cycle plus one directed chord; `from`/`to` are 1-based node
/// numbers matching the generated labels.
inline Digraph cycleWithChord(int n, int from, int to) {
  if (from < 1 || from > n || to < 1 || to > n)
    throw std::invalid_argument("chord endpoint outside 1..n");
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    arcs.emplace_back(i, j, 1.0);
    arcs.emplace_back(j, i, 1.0);
  }
  arcs.emplace_back(from - 1, to - 1, 1.0);
  return Digraph(n, arcs, {}, /*undirected=*/false);
}

inline Digraph pathGraph(int n, bool directed = true) {
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1, 1.0);
  return Digraph(n, arcs, {}, !directed);
}

inline Digraph completeDigraph(int n) {
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) arcs.emplace_back(i, j, 1.0);
  return Digraph(n, arcs);
}

/// G(n, p); each (ordered or unordered) pair drawn independently in a fixed
/// row-major order, so a seed pins the instance.
inline Digraph erdosRenyi(int n, double p, std::uint64_t seed, bool directed = false) {
  std::mt19937_64 rng(seed);
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (uniformReal(rng) < p) arcs.emplace_back(i, j, 1.0);
    }
  }
  return Digraph(n, arcs, {}, !directed);
}

/// Watts-Strogatz small world: ring lattice with k/2 neighbours per side,
/// each right-edge rewired with probability beta (duplicate and loop targets
/// are re-drawn). k must be even and < n.
inline Digraph wattsStrogatz(int n, int k, double beta, std::uint64_t seed) {
  if (k % 2 != 0 || k >= n) throw std::invalid_argument("watts-strogatz needs even k < n");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  auto connect = [&](int a, int b, bool on) {
    adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = on;
    adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = on;
  };
  for (int u = 0; u < n; ++u)
    for (int off = 1; off <= k / 2; ++off) connect(u, (u + off) % n, true);
  for (int u = 0; u < n; ++u) {
    for (int off = 1; off <= k / 2; ++off) {
      int v = (u + off) % n;
      if (uniformReal(rng) >= beta) continue;
      if (!adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) continue;
      int w = -1;
      for (int tries = 0; tries < 8 * n; ++tries) {
        int candidate = static_cast<int>(uniformIndex(rng, static_cast<std::uint64_t>(n)));
        if (candidate != u && !adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(candidate)]) {
          w = candidate;
          break;
        }
      }
      if (w < 0) continue;  // node saturated, keep the lattice edge
      connect(u, v, false);
      connect(u, w, true);
    }
  }
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) arcs.emplace_back(i, j, 1.0);
  return Digraph(n, arcs, {}, /*undirected=*/true);
}

/// Planar triangulation of a jittered rows x cols point grid: axis-aligned
/// grid edges plus the shorter diagonal of each cell. Delaunay-like average
/// degree (~6 in the interior) without a full flip algorithm.
inline Digraph jitteredTriangulation(int rows, int cols, std::uint64_t seed) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("triangulation needs a 2x2 grid at least");
  std::mt19937_64 rng(seed);
  const int n = rows * cols;
  std::vector<double> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t id = static_cast<std::size_t>(r * cols + c);
      px[id] = c + 0.6 * (uniformReal(rng) - 0.5);
      py[id] = r + 0.6 * (uniformReal(rng) - 0.5);
    }
  }
  auto dist2 = [&](int a, int b) {
    const double dx = px[static_cast<std::size_t>(a)] - px[static_cast<std::size_t>(b)];
    const double dy = py[static_cast<std::size_t>(a)] - py[static_cast<std::size_t>(b)];
    return dx * dx + dy * dy;
  };
  std::vector<std::tuple<int, int, double>> arcs;
  auto at = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) arcs.emplace_back(at(r, c), at(r, c + 1), 1.0);
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) arcs.emplace_back(at(r, c), at(r + 1, c), 1.0);
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const int a = at(r, c), b = at(r, c + 1), d = at(r + 1, c), e = at(r + 1, c + 1);
      if (dist2(a, e) <= dist2(b, d))
        arcs.emplace_back(a, e, 1.0);
      else
        arcs.emplace_back(b, d, 1.0);
    }
  }
  return Digraph(n, arcs, {}, /*undirected=*/true);
}

}  // namespace nlpr
