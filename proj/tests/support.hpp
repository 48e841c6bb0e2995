#pragma once

// Independent oracles and random generators shared by the test programs.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>

#include "auxetica/framework.hpp"

namespace testing_support {

using auxetica::LinearMapd;
using auxetica::SymMatrixd;

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("AUXETICA_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

inline std::mt19937 make_rng(std::uint64_t salt) { return std::mt19937(static_cast<std::uint32_t>(base_seed() ^ (salt * 0x9E3779B9u))); }

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

inline SymMatrixd random_sym(std::mt19937& rng, int d, double scale = 1.0) {
  const Eigen::MatrixXd a = random_matrix(rng, d, d, scale);
  return SymMatrixd::symmetrized((a + a.transpose()) / 2);
}

// Positive semidefinite with the requested rank.
inline SymMatrixd random_psd(std::mt19937& rng, int d, int rank) {
  const Eigen::MatrixXd b = random_matrix(rng, d, rank);
  return SymMatrixd::symmetrized(b * b.transpose());
}

inline LinearMapd random_invertible(std::mt19937& rng, int d) {
  for (;;) {
    LinearMapd m = LinearMapd::Identity(d, d) + random_matrix(rng, d, d, 0.4);
    if (std::abs(m.determinant()) > 0.2) return m;
  }
}

inline LinearMapd rotation2(double a) {
  LinearMapd r(2, 2);
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

// Eigen's self-adjoint solver, independent of the library's Jacobi sweeps.
inline Eigen::VectorXd oracle_eigenvalues(const SymMatrixd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double oracle_min_eig(const SymMatrixd& m) { return oracle_eigenvalues(m)(0); }

inline double oracle_operator_norm(const Eigen::MatrixXd& t) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
  return svd.singularValues()(0);
}

inline Eigen::MatrixXd oracle_gram(const LinearMapd& lattice) { return lattice.transpose() * lattice; }

// Leading principal minors all positive (Sylvester).
inline bool oracle_sylvester_pd(const Eigen::MatrixXd& m) {
  for (int k = 1; k <= m.rows(); ++k)
    if (!(m.topLeftCorner(k, k).determinant() > 0)) return false;
  return true;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support
