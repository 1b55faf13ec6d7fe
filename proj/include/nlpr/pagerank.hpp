#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nlpr/distance.hpp"
#include "nlpr/graph.hpp"
#include "nlpr/smoothing.hpp"
#include "nlpr/solver.hpp"
#include "nlpr/transition.hpp"

namespace nlpr {

enum class DistanceMethod { None, ShortestPath, Logarithmic, Metro };

inline const char* name(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::None: return "none";
    case DistanceMethod::ShortestPath: return "sp";
    case DistanceMethod::Logarithmic: return "log";
    case DistanceMethod::Metro: return "metro";
  }
  return "?";
}

inline DistanceMethod distanceMethodFromName(const std::string& s) {
  if (s == "none") return DistanceMethod::None;
  if (s == "sp") return DistanceMethod::ShortestPath;
  if (s == "log") return DistanceMethod::Logarithmic;
  if (s == "metro") return DistanceMethod::Metro;
  throw std::invalid_argument("unknown distance method: " + s);
}

struct PagerankOptions {
  DistanceMethod distance = DistanceMethod::None;
  SmoothingFamily smoothing = SmoothingFamily::powerLaw(1.0);
  double c = 0.85;
  std::optional<Vector> teleport;
  PowerIterationOptions solve;
};

inline Matrix distanceMatrixFor(const Digraph& g, DistanceMethod m) {
  switch (m) {
    case DistanceMethod::ShortestPath: return shortestPathAllPairs(g);
    case DistanceMethod::Logarithmic: return logarithmicDistance(g);
    default: throw std::invalid_argument("distance method needs a plain graph distance");
  }
}

/// The full centrality pipeline on a digraph: distance (unless local),
/// transition, teleportation, stationary solve, labelled result.
inline RankVector computePagerank(const Digraph& g, const PagerankOptions& opt) {
  StochasticMatrix base;
  std::optional<double> alpha;
  if (opt.distance == DistanceMethod::None) {
    base = localTransition(g);
  } else if (opt.distance == DistanceMethod::Metro) {
    throw std::invalid_argument("metro distance requires a multilayer graph");
  } else {
    base = nonlocalTransition(distanceMatrixFor(g, opt.distance), opt.smoothing);
    alpha = opt.smoothing.alpha;
  }
  GoogleMatrix G = googleMatrix(std::move(base), opt.c, opt.teleport);
  Vector s = stationaryDistribution(G, opt.solve);
  return makeRankVector(std::move(s), g.labels(), name(opt.distance),
                        alpha ? name(opt.smoothing.kind) : "", alpha, opt.c);
}

/// Multilayer overload: metro distance runs on the layer structure, every
/// other method runs on the aggregate graph.
inline RankVector computePagerank(const MultilayerGraph& m, const PagerankOptions& opt) {
  if (opt.distance != DistanceMethod::Metro) return computePagerank(aggregate(m), opt);
  StochasticMatrix base = nonlocalTransition(metroDistance(m), opt.smoothing);
  GoogleMatrix G = googleMatrix(std::move(base), opt.c, opt.teleport);
  Vector s = stationaryDistribution(G, opt.solve);
  return makeRankVector(std::move(s), m.labels(), name(opt.distance),
                        name(opt.smoothing.kind), opt.smoothing.alpha, opt.c);
}

}  // namespace nlpr
