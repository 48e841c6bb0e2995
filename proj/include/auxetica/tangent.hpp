#pragma once

// Linearized edge-length constraints, tangent spaces modulo Euclidean motions
// and the differential of the Gram map.

#include <Eigen/Dense>

#include <vector>

#include "auxetica/framework.hpp"

namespace auxetica {

/// Velocity of every vertex representative and of the lattice basis.
struct TangentVector {
  Eigen::MatrixXd vertex_vel;  // d x n
  LinearMapd lattice_vel;      // d x d

  /// Stacked as (vertex 0 coords, vertex 1 coords, ..., lattice column-major).
  Eigen::VectorXd flat() const;
  static TangentVector unflatten(const Eigen::VectorXd& x, int dim, int n);
};

/// Flattened configuration (positions then lattice), matching the column
/// layout of constraint_jacobian.
Eigen::VectorXd configuration_vector(const PeriodicFramework& f);
PeriodicFramework with_configuration(const PeriodicFramework& f, const Eigen::VectorXd& x);

/// Squared edge vector length minus squared bar length, one entry per edge.
Eigen::VectorXd constraint_residuals(const PeriodicFramework& f);

/// Jacobian of the constraints |p(v) + Lambda gamma - p(u)|^2 = L^2 with
/// respect to (positions, lattice): m rows, d n + d^2 columns.
Eigen::MatrixXd constraint_jacobian(const PeriodicFramework& f);

/// Columns span the infinitesimal isometries: translations and rotations
/// acting jointly on positions and lattice.
Eigen::MatrixXd trivial_motions(const PeriodicFramework& f);

struct TangentSpace {
  std::vector<TangentVector> basis;  // orthonormal in the flat coordinates
  Eigen::MatrixXd flat_basis;        // columns = basis vectors, flattened
  bool singular_point = false;       // kernel dimension is numerically ambiguous
};

/// Orthonormal basis of ker(J) intersected with the orthogonal complement of
/// the trivial motions.
TangentSpace tangent_space(const PeriodicFramework& f);

/// Numerical rank with relative threshold on singular values.
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// Derivative of Lambda^T Lambda along t: dL^T L + L^T dL.
SymMatrixd gram_differential(const PeriodicFramework& f, const TangentVector& t);

}  // namespace auxetica
