#pragma once

#include <Eigen/Dense>

#include <limits>

namespace nlpr {

template <class Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Col = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = Dense<double>;
using Vector = Col<double>;
using Index = Eigen::Index;

/// Unreachable / undefined distances are carried as IEEE +infinity, so
/// min, comparison and finite+inf arithmetic behave as expected.
template <class Scalar = double>
constexpr Scalar inf() {
  return std::numeric_limits<Scalar>::infinity();
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Maximum absolute row sum of a matrix. This is the operator norm acting on
/// row vectors measured in the 1-norm, the convention used throughout the
/// Markov-chain perturbation bounds here (a row-stochastic matrix has norm 1).
template <class Derived>
typename Derived::Scalar norm1RowMax(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace nlpr
