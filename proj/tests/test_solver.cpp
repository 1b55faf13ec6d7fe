#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlpr/distance.hpp"
#include "nlpr/graphgen.hpp"
#include "nlpr/pagerank.hpp"
#include "nlpr/rng.hpp"
#include "nlpr/solver.hpp"
#include "nlpr/transition.hpp"
#include "oracles.hpp"

using namespace nlpr;

TEST_CASE("undirected cycle is uniform for local and nonlocal walks") {
  const Digraph g = cycleGraph(100);
  const Vector uniform = Vector::Constant(100, 0.01);
  SUBCASE("local") {
    const Vector s = stationaryDistribution(googleMatrix(localTransition(g), 0.85));
    CHECK((s - uniform).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("nonlocal power-law alpha 2") {
    const Matrix d = shortestPathAllPairs(g);
    const Vector s = stationaryDistribution(
        googleMatrix(nonlocalTransition(d, SmoothingFamily::powerLaw(2.0)), 0.85));
    CHECK((s - uniform).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("complete digraph is uniform by symmetry") {
  const Vector s = stationaryDistribution(googleMatrix(localTransition(completeDigraph(7)), 0.85));
  CHECK((s - Vector::Constant(7, 1.0 / 7)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("3-node path matches the dense linear-solve oracle") {
  const GoogleMatrix G = googleMatrix(localTransition(pathGraph(3)), 0.85);
  const Vector s = stationaryDistribution(G);
  const Vector oracle = oracles::stationaryLinearSolve(G.dense());
  CHECK((s - oracle).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("power iteration matches the dense eigendecomposition oracle on small graphs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 10 + static_cast<int>(seed * 3 % 41);
    const Digraph g = erdosRenyi(n, 0.15, seed, seed % 2 == 0);
    const GoogleMatrix G = googleMatrix(localTransition(g), 0.85);
    const Vector s = stationaryDistribution(G);
    CHECK((s - oracles::stationaryEigenSolve(G.dense())).lpNorm<1>() <= 1e-8);
  }
}

TEST_CASE("library dense solve agrees with the power iteration") {
  const Digraph g = erdosRenyi(30, 0.1, 5, true);
  const GoogleMatrix G = googleMatrix(localTransition(g), 0.85);
  CHECK((stationaryDistribution(G) - stationaryDenseSolve(G)).lpNorm<1>() <= 1e-10);
}

TEST_CASE("result is invariant under positive rescaling of the start vector") {
  const Digraph g = erdosRenyi(25, 0.15, 9, false);
  const GoogleMatrix G = googleMatrix(localTransition(g), 0.85);
  const Vector base = stationaryDistribution(G);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    PowerIterationOptions opt;
    Vector start(G.rows());
    for (Index i = 0; i < start.size(); ++i) start[i] = 0.05 + uniformReal(rng);
    opt.start = start * (0.1 + 10 * uniformReal(rng));
    CHECK((stationaryDistribution(G, opt) - base).lpNorm<1>() <= 1e-10);
  }
}

TEST_CASE("teleport-dominated chain returns the teleport distribution") {
  Vector v(4);
  v << 0.4, 0.3, 0.2, 0.1;
  const GoogleMatrix G = googleMatrix(localTransition(cycleGraph(4)), 1e-12, v);
  const Vector s = stationaryDistribution(G);
  CHECK((s - v).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("non-convergence carries the last residual") {
  // c = 1 on a 2-periodic chain with an asymmetric start never settles
  const Digraph g = fromEdgeList({{"a", "b"}}, /*directed=*/false);
  GoogleMatrix G = googleMatrix(localTransition(g), 1.0);
  PowerIterationOptions opt;
  Vector start(2);
  start << 0.3, 0.7;
  opt.start = start;
  opt.max_iter = 50;
  CHECK_THROWS_WITH_AS(stationaryDistribution(G, opt),
                       "power iteration did not converge within 50 sweeps (residual 0.800000)",
                       std::runtime_error);
}

TEST_CASE("rank vector validation and deterministic tie-break") {
  Vector s(3);
  s << 0.25, 0.5, 0.25;
  const RankVector r = makeRankVector(s, {"b", "a", "c"}, "none", "", {}, 0.85);
  CHECK(rankedLabels(r) == std::vector<std::string>{"a", "b", "c"});  // tie b/c by label

  Vector bad = Vector::Constant(3, 0.5);
  CHECK_THROWS_AS(makeRankVector(bad, {"a", "b", "c"}, "none", "", {}, 0.85),
                  std::runtime_error);
}

TEST_CASE("resolvent at tiny c is the identity, similarity twice it") {
  const StochasticMatrix P = localTransition(erdosRenyi(12, 0.3, 3, true));
  const double c = 1e-13;
  const SimilarityMatrix S = rootedSimilarity(P, c);
  CHECK((S.s - 2.0 * Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("similarity is exactly symmetric") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Digraph g = erdosRenyi(20, 0.2, 60 + seed, seed % 2 == 0);
    const SimilarityMatrix S = rootedSimilarity(localTransition(g), 0.6);
    CHECK(S.s == S.s.transpose().eval());
  }
}

TEST_CASE("3-node path resolvent matches the truncated Neumann series") {
  const StochasticMatrix P = localTransition(pathGraph(3));
  const SimilarityMatrix S = rootedSimilarity(P, 0.5);
  const Matrix x = oracles::neumannResolvent(P.p, 0.5, 200);
  CHECK((S.s - (x + x.transpose())).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("columns of the resolvent transpose sum to one") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Digraph g = erdosRenyi(18, 0.2, 80 + seed, seed % 2 == 1);
    for (double c : {0.3, 0.85}) {
      const Matrix x = rootedResolvent(localTransition(g), c);
      CHECK((x.transpose() * Vector::Ones(18) - Vector::Ones(18)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("rooted similarity rejects c outside (0,1)") {
  const StochasticMatrix P = localTransition(cycleGraph(4));
  CHECK_THROWS_AS(rootedSimilarity(P, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rootedSimilarity(P, 0.0), std::invalid_argument);
}
