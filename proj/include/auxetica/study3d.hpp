#pragma once

// The four-dof Pyramid3D case study: its quartic deformation hypersurface in
// Gram coordinates a = (a11, a22, a33, a13, a23) (a12 = 0), the Cayley-cubic
// nodes and the extremal rays of the expansive cone.

#include <array>
#include <cstdint>

#include "auxetica/framework.hpp"

namespace auxetica {

using Vector5d = Eigen::Matrix<double, 5, 1>;

struct StudyPoint {
  Vector5d a = Vector5d::Zero();
  double r2 = 9.0 / 5.0;
};

/// a(0) = (8/5, 8/5, 8/5, 4/5, 4/5) with r^2 = 9/5.
StudyPoint initial_study_point();

/// Gram coordinates of a three-dimensional framework; a12 must vanish.
StudyPoint study_point(const PeriodicFramework& f, double r2 = 9.0 / 5.0);

/// The symmetric matrix [[v11, 0, v13], [0, v22, v23], [v13, v23, v33]].
SymMatrixd study_matrix(const Vector5d& v);

struct ProjectivePoint5 {
  Vector5d v;

  /// Largest |entry| scaled to 1, first entry above 1e-12 in magnitude positive.
  static ProjectivePoint5 canonical(const Vector5d& v);
};

/// Max-norm distance between canonical representatives.
double projective_distance(const Vector5d& x, const Vector5d& y);

double quartic_f(const StudyPoint& p);

/// (f11, f22, f33, f13, f23).
Vector5d quartic_gradient(const StudyPoint& p);

/// Rank-one points of the two boundary conics in the gradient-orthogonal
/// hyperplane. Throws ComplexNodes when a radicand is negative.
std::array<ProjectivePoint5, 4> cayley_nodes(const StudyPoint& p);

/// Tangents of the four one-dof mechanisms (Pyramid3D plus three of the four
/// extra bars), in the order (-f33:0:f11:0:0), (-f33:0:f11+f13:-f33:0),
/// (0:-f33:f22:0:0), (0:-f33:f22+f23:0:-f33).
std::array<ProjectivePoint5, 4> expansive_rays(const StudyPoint& p);

struct InclusionReport {
  int grid_points = 0;
  double grid_min_eigenvalue = 0.0;  // smallest over the barycentric grid
  double node_max_abs_min_eigenvalue = 0.0;
  int outside_samples = 0;
  int outside_not_psd = 0;
};

class InclusionViolation : public Error {
 public:
  InclusionViolation(const std::string& what, const Vector5d& witness) : Error(what), witness_(witness) {}
  const Vector5d& witness() const { return witness_; }

 private:
  Vector5d witness_;
};

/// Checks that convex combinations of the rays (barycentric grid with step
/// 1/density) are PSD, that the nodes lie on the PSD boundary, and that
/// random gradient-orthogonal directions outside the spectrahedron are not
/// PSD. Outside is decided without eigenvalues: det along the segment from an
/// interior point vanishes before reaching the direction. Throws
/// InclusionViolation on the first failure.
InclusionReport cone_inclusion_check(const StudyPoint& p, int density = 10, int outside_samples = 1000,
                                     std::uint64_t seed = 1);

/// Newton iteration along the gradient onto f = 0.
StudyPoint project_to_surface(const StudyPoint& p, double tol = 1e-12, int max_iterations = 50);

}  // namespace auxetica
