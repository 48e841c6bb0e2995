#pragma once

// The infinitesimal auxetic cone: tangent vectors whose Gram differential is
// positive semidefinite.

#include <cstdint>
#include <optional>
#include <vector>

#include "auxetica/tangent.hpp"

namespace auxetica {

enum class ConeVerdict { TrivialOnly, NontrivialBoundary, StrictInterior };

const char* to_string(ConeVerdict v);

struct ConeReport {
  ConeVerdict verdict = ConeVerdict::TrivialOnly;
  std::optional<TangentVector> witness;  // unit length in flat coordinates
  std::optional<SymMatrixd> witness_gram_velocity;
  std::optional<std::vector<TangentVector>> extremal_rays;
  int tangent_dim = 0;
  int image_dim = 0;
  /// Best min-eigenvalue of a unit image matrix, and of a unit matrix
  /// orthogonal to the image (the dual certificate).
  double primal_value = 0.0;
  double dual_value = 0.0;
  bool singular_point = false;
};

struct ConeOptions {
  double tol = kDefaultConeTol;
  /// Total number of ascent iterations shared by all starts.
  int budget = 20000;
  std::uint64_t seed = 1;
  /// Optional polyhedral sub-cone; every ray must lie in the auxetic cone.
  std::vector<TangentVector> extremal_rays;
};

/// Thrown when neither a positive definite image matrix nor a positive
/// definite dual certificate is found and the best values are not both
/// within tolerance of zero.
class Undecided : public Error {
 public:
  Undecided(const std::string& what, TangentVector best, double best_value)
      : Error(what), best_(std::move(best)), best_value_(best_value) {}
  const TangentVector& best_candidate() const { return best_; }
  double best_value() const { return best_value_; }

 private:
  TangentVector best_;
  double best_value_;
};

ConeReport auxetic_cone(const PeriodicFramework& f, const ConeOptions& options = {});

struct MaxMinEig {
  Eigen::VectorXd x;  // unit coefficient vector
  double value = 0.0;  // lambda_min(sum x_i A_i)
};

struct AscentOptions {
  int starts = 8;
  int budget = 20000;
  std::uint64_t seed = 1;
  /// Deterministic starting points tried before the random ones.
  std::vector<Eigen::VectorXd> warm_starts;
};

/// Maximizes the smallest eigenvalue of sum_i x_i A_i over the unit sphere
/// |x| = 1 by multi-start ascent on a log-sum-exp smoothing whose sharpness
/// is raised in stages. Result is deterministic for a fixed seed.
MaxMinEig max_min_eigenvalue(const std::vector<SymMatrixd>& family, const AscentOptions& options);

}  // namespace auxetica
