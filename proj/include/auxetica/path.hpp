#pragma once

// One-parameter deformations and the four path predicates: PSD Gram tangents,
// lattice contraction, expansiveness and unit-cell volume.

#include <functional>
#include <optional>
#include <vector>

#include "auxetica/framework.hpp"

namespace auxetica {

struct PathSample {
  double tau = 0.0;
  Eigen::MatrixXd positions;
  LinearMapd lattice;
  /// d omega / d tau when known in closed form.
  std::optional<SymMatrixd> gram_velocity;
};

/// Sampled deformation of `framework0`: tau strictly increasing, every sample
/// keeps the bar lengths of framework0.
struct DeformationPath {
  PeriodicFramework framework0;
  std::vector<PathSample> samples;

  PeriodicFramework framework_at(std::size_t k) const;
  std::vector<double> taus() const;
};

/// Closed-form family tau -> placement on [tau_begin, tau_end].
struct PathGenerator {
  PeriodicFramework framework0;
  double tau_begin = 0.0;
  double tau_end = 1.0;
  std::function<PathSample(double)> at;
  /// Analytic d omega / d tau; empty when the family has none.
  std::function<SymMatrixd(double)> gram_velocity;
};

/// Samples `count` equally spaced parameters. Gram velocities come from the
/// analytic derivative when available, otherwise from a five-point stencil on
/// the generator with step (sample spacing)/10.
DeformationPath sample_path(const PathGenerator& gen, int count = 200);

/// Lattice-only path: one vertex orbit, no bars.
DeformationPath lattice_path(const std::vector<double>& taus, const std::vector<LinearMapd>& lattices);

std::vector<Violation> validate_path(const DeformationPath& p, double rel_tol = 1e-8);
void require_valid_path(const DeformationPath& p, double rel_tol = 1e-8);

/// Same placements traversed backwards (tau -> -tau).
DeformationPath reversed(const DeformationPath& p);

/// The path seen on sublattice_relax(framework0, basis).
DeformationPath relax_path(const DeformationPath& p, const IntMatrix& basis);

std::vector<SymMatrixd> gram_curve(const DeformationPath& p);

/// Central differences, one-sided at the two ends.
std::vector<SymMatrixd> finite_difference_velocities(const std::vector<double>& taus,
                                                     const std::vector<SymMatrixd>& omegas);

/// Analytic velocities where every sample has one, finite differences otherwise.
std::vector<SymMatrixd> gram_velocities(const DeformationPath& p);

enum class PathVerdict { Auxetic, BoundaryAuxetic, NotAuxetic };

const char* to_string(PathVerdict v);

struct PsdCheck {
  PathVerdict verdict = PathVerdict::Auxetic;
  double tau_star = 0.0;     // first failing tau for NotAuxetic
  double min_eigenvalue = 0.0;  // smallest eigenvalue seen over all tangents
};

PsdCheck check_gram_velocities(const std::vector<double>& taus, const std::vector<SymMatrixd>& velocities,
                               double tol = kDefaultConeTol);

PsdCheck check_path_psd(const DeformationPath& p, double tol = kDefaultConeTol);

struct ContractionCheck {
  bool auxetic = true;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double norm = 0.0;  // operator norm at the violating pair, or the largest seen
};

/// All sampled pairs tau1 < tau2: Lambda(tau1) Lambda(tau2)^{-1} must be a contraction.
ContractionCheck check_path_contraction(const DeformationPath& p, double tol = kDefaultConeTol);

struct ExpansiveCheck {
  bool expansive = true;
  VertexPair pair;
  double tau_star = 0.0;
};

ExpansiveCheck check_expansive(const DeformationPath& p, int radius, double tol = 1e-9);

struct VolumeCheck {
  bool non_decreasing = true;
  double tau_star = 0.0;
};

VolumeCheck check_volume(const DeformationPath& p);

}  // namespace auxetica
