#pragma once

// Integral curves of direction fields on the deformation space: RK4 steps
// followed by Gauss-Newton projection back onto the edge-length constraints.

#include <optional>
#include <vector>

#include "auxetica/cone.hpp"
#include "auxetica/path.hpp"

namespace auxetica {

enum class SelectorKind { AuxeticWitness, ConvexCombination, KernelOneDof };

struct DirectionSelector {
  SelectorKind kind = SelectorKind::AuxeticWitness;
  /// ConvexCombination: each ray is the one-dof mechanism obtained by adding
  /// these bars to the current framework.
  std::vector<std::vector<EdgeOrbit>> rays;
  std::vector<double> weights;
  /// KernelOneDof: the pair whose distance must increase. When empty, the pair
  /// with the largest initial rate among radius-1 pairs is used.
  std::optional<VertexPair> pair;

  static DirectionSelector auxetic_witness() { return {}; }
  static DirectionSelector convex_combination(std::vector<std::vector<EdgeOrbit>> rays, std::vector<double> weights);
  static DirectionSelector kernel_one_dof(std::optional<VertexPair> pair = std::nullopt);
};

struct IntegrateOptions {
  int steps = 50;
  double h = 1e-2;
  /// Gauss-Newton stopping threshold on max |edge^2 - L^2| / L^2.
  double projection_tol = 1e-10;
  int max_projection_iterations = 25;
  ConeOptions cone;
};

/// Samples are taken at tau = 0, h, ..., steps h. AuxeticWitness follows the
/// tangent maximizing the smallest eigenvalue of d omega, parametrized by
/// arclength of the Gram curve (Frobenius norm); the other selectors move at
/// unit speed in the flat coordinates of configuration_vector.
DeformationPath integrate_trajectory(const PeriodicFramework& f, const DirectionSelector& selector,
                                     const IntegrateOptions& options = {});

/// Gauss-Newton projection onto the constraint set; throws StepFailure on
/// divergence.
PeriodicFramework project_to_constraints(const PeriodicFramework& f, double tau, double tol = 1e-10,
                                         int max_iterations = 25);

}  // namespace auxetica
