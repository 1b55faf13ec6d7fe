#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "nlpr/analysis.hpp"
#include "nlpr/graphgen.hpp"
#include "nlpr/rng.hpp"
#include "oracles.hpp"

using namespace nlpr;

TEST_CASE("ergodicity coefficient extremes") {
  CHECK(ergodicityCoefficient(Matrix::Constant(5, 5, 0.2)) == 0.0);
  Matrix perm = Matrix::Zero(4, 4);
  perm(0, 1) = perm(1, 2) = perm(2, 3) = perm(3, 0) = 1.0;
  CHECK(ergodicityCoefficient(perm) == 1.0);
}

TEST_CASE("pairwise-row formula matches the matrix-norm form of the definition") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    Matrix m(5, 5);
    for (Index i = 0; i < 5; ++i) {
      for (Index j = 0; j < 5; ++j) m(i, j) = uniformReal(rng) + 1e-3;
      m.row(i) /= m.row(i).sum();
    }
    CHECK(ergodicityCoefficient(m) == doctest::Approx(oracles::tau1ColumnNormForm(m)).epsilon(1e-13));
  }
}

TEST_CASE("condition number from tau") {
  CHECK(conditionNumberFromTau(0.0) == 1.0);
  CHECK(conditionNumberFromTau(0.5) == 2.0);
  CHECK_THROWS_WITH_AS(conditionNumberFromTau(1.0), "chain not ergodic in norm-1",
                       std::runtime_error);
}

TEST_CASE("teleportation bounds tau and the condition number") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Digraph g = erdosRenyi(25, 0.08, seed, seed % 2 == 0);
    const double c = 0.85;
    const GoogleMatrix G = googleMatrix(localTransition(g), c);
    const double tau = ergodicityCoefficient(G);
    CHECK(tau >= 0.0);
    CHECK(tau <= 1.0);
    CHECK(tau <= c * ergodicityCoefficient(G.base.p) + 1e-14);
    CHECK(tau <= c + 1e-14);
    CHECK(conditionNumber(G) <= 1.0 / (1.0 - c) + 1e-10);
  }
}

TEST_CASE("every non-Perron eigenvalue modulus is below tau_1") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int n = 8 + static_cast<int>(seed * 3);
    const Digraph g = erdosRenyi(n, 0.2, 30 + seed, seed % 2 == 1);
    const Matrix G = googleMatrix(localTransition(g), 0.85).dense();
    const double tau = ergodicityCoefficient(G);
    const Eigen::VectorXcd eig = Eigen::EigenSolver<Matrix>(G).eigenvalues();
    for (Index i = 0; i < eig.size(); ++i) {
      if (std::abs(eig[i] - std::complex<double>(1, 0)) < 1e-8) continue;
      CHECK(std::abs(eig[i]) <= tau + 1e-10);
    }
  }
}

TEST_CASE("perturbation bound") {
  SUBCASE("identical chains") {
    const GoogleMatrix G = googleMatrix(localTransition(cycleGraph(10)), 0.85);
    const PerturbationReport r = perturbationBoundCheck(G, G);
    CHECK(r.lhs <= 1e-12);
    CHECK(r.rhs <= 1e-12);
    CHECK(r.satisfied);
  }
  SUBCASE("cycle against chord-perturbed cycle") {
    const GoogleMatrix G = googleMatrix(localTransition(cycleGraph(100)), 0.85);
    const GoogleMatrix Gbar = googleMatrix(localTransition(cycleWithChord(100, 40, 1)), 0.85);
    const PerturbationReport r = perturbationBoundCheck(G, Gbar);
    CHECK(r.satisfied);
    CHECK(r.lhs > 0.0);
  }
  SUBCASE("random single-arc edits") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
      const Digraph g = erdosRenyi(30, 0.15, 400 + static_cast<std::uint64_t>(t), true);
      auto arcs = g.arcs();
      std::vector<std::tuple<int, int, double>> edited;
      for (auto [u, v] : arcs) edited.emplace_back(u, v, 1.0);
      if (t % 2 == 0 && !edited.empty()) {
        edited.erase(edited.begin() + static_cast<long>(uniformIndex(rng, edited.size())));
      } else {
        const int u = static_cast<int>(uniformIndex(rng, 30));
        const int v = static_cast<int>(uniformIndex(rng, 30));
        if (u != v) edited.emplace_back(u, v, 1.0);
      }
      const GoogleMatrix G = googleMatrix(localTransition(g), 0.85);
      const GoogleMatrix Gbar = googleMatrix(localTransition(Digraph(30, edited)), 0.85);
      CHECK(perturbationBoundCheck(G, Gbar).satisfied);
    }
  }
}

TEST_CASE("kendall tau basics") {
  Vector a(4), b(4);
  a << 1, 2, 3, 4;
  b << 1, 3, 2, 4;
  CHECK(kendallTauB(a, a) == 1.0);
  Vector rev = a.reverse();
  CHECK(kendallTauB(a, rev) == -1.0);
  CHECK(kendallTauB(a, b) == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(kendallTauB(a, b) == kendallTauB(b, a));
}

TEST_CASE("kendall tau is invariant under strictly increasing transforms") {
  std::mt19937_64 rng(5);
  Vector a(20), b(20);
  for (Index i = 0; i < 20; ++i) {
    a[i] = uniformReal(rng);
    b[i] = uniformReal(rng);
  }
  const double base = kendallTauB(a, b);
  const Vector a_cubed = a.array().pow(3.0);
  const Vector b_exp = b.array().exp();
  CHECK(kendallTauB(a_cubed, b) == base);
  CHECK(kendallTauB(a, b_exp) == base);
}

TEST_CASE("kendall tau on rank vectors aligns by label") {
  Vector sa(3), sb(3);
  sa << 0.5, 0.3, 0.2;
  sb << 0.3, 0.5, 0.2;
  const RankVector a{sa, {"x", "y", "z"}, {}, "none", "", 0.85};
  const RankVector b{sb, {"y", "x", "z"}, {}, "none", "", 0.85};  // same data, permuted
  CHECK(kendallTau(a, b) == 1.0);
  const RankVector wrong{sb, {"y", "x", "w"}, {}, "none", "", 0.85};
  CHECK_THROWS_AS(kendallTau(a, wrong), std::invalid_argument);
}

TEST_CASE("intersection similarity") {
  SUBCASE("identical lists give zeros") {
    const Vector isim = intersectionSimilarity({"a", "b", "c"}, {"a", "b", "c"}, 3);
    CHECK(isim.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("disjoint lists give ones") {
    const Vector isim = intersectionSimilarity({"a", "b"}, {"c", "d"}, 2);
    CHECK(isim == Vector::Ones(2));
  }
  SUBCASE("hand-worked example (1, 0.5, 1/3)") {
    const Vector isim = intersectionSimilarity({"a", "b", "c"}, {"b", "a", "c"}, 3);
    CHECK(isim[0] == 1.0);
    CHECK(isim[1] == 0.5);
    CHECK(isim[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("first entry is always 0 or 1") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
      RankedList p, q;
      for (int i = 0; i < 6; ++i) {
        p.push_back("n" + std::to_string(i));
        q.push_back("n" + std::to_string(uniformIndex(rng, 12)));
      }
      std::sort(q.begin(), q.end());
      q.erase(std::unique(q.begin(), q.end()), q.end());
      shuffleVec(q, rng);
      const Vector isim = intersectionSimilarity(p, q, 1);
      CHECK((isim[0] == 0.0 || isim[0] == 1.0));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(intersectionSimilarity({"a", "a"}, {"b", "c"}, 2), std::invalid_argument);
    CHECK_THROWS_AS(intersectionSimilarity({"a", "b"}, {"b", "c"}, 3), std::invalid_argument);
  }
}

TEST_CASE("inverse participation ratio") {
  RankVector uniform{Vector::Constant(8, 0.125), {}, {}, "none", "", 0.85};
  CHECK(inverseParticipationRatio(uniform) == doctest::Approx(0.125).epsilon(1e-15));
  Vector e = Vector::Zero(5);
  e[2] = 1.0;
  CHECK(inverseParticipationRatio({e, {}, {}, "none", "", 0.85}) == 1.0);
  Vector mixed(3);
  mixed << 0.5, 0.25, 0.25;
  CHECK(inverseParticipationRatio({mixed, {}, {}, "none", "", 0.85}) == 0.375);
}

TEST_CASE("ergodicity sweep converges to the local coefficient at large alpha") {
  const Digraph g = erdosRenyi(30, 0.15, 77, false);
  const auto rows = ergodicitySweep(g, {40.0, 60.0}, SmoothingKind::PowerLaw, 0.85);
  for (const auto& row : rows) CHECK(std::abs(row.difference) <= 1e-6);
}

TEST_CASE("tau_1 of the nonlocal chain stays below the local one on random graphs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const Digraph g = t % 2 == 0 ? erdosRenyi(40, 0.05, 600 + static_cast<std::uint64_t>(t))
                                 : wattsStrogatz(40, 4, 0.2, 600 + static_cast<std::uint64_t>(t));
    const double alpha = 10.0 * uniformReal(rng) + 1e-3;
    for (const SmoothingKind kind : {SmoothingKind::PowerLaw, SmoothingKind::Exponential}) {
      const auto rows = ergodicitySweep(g, {alpha}, kind, 0.85);
      CHECK(rows[0].tau_nonlocal <= rows[0].tau_local + 1e-12);
    }
  }
}
