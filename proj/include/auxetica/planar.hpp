#pragma once

// Planar periodic frameworks: pointedness, crossings, faces, periodic pointed
// pseudo-triangulations and the honeycomb deformation surface.

#include <cstdint>
#include <vector>

#include "auxetica/framework.hpp"

namespace auxetica {

struct VertexStar {
  std::vector<Eigen::Vector2d> directions;
};

/// Edge directions leaving vertex orbit `v`, one per incident edge end.
VertexStar vertex_star(const PeriodicFramework& f, int v);

/// Pointed iff some cyclic angular gap exceeds pi + 1e-9 (alignment at
/// exactly pi is not pointed). A star with fewer than two directions is
/// pointed.
bool is_pointed(const VertexStar& star);
bool is_pointed(const PeriodicFramework& f);

/// No two edge segments meet except at a shared endpoint. Every translate
/// whose bounding box can reach a segment is tested, so `radius` only widens
/// the search.
bool is_noncrossing(const PeriodicFramework& f, int radius = 1);

struct FaceCorner {
  int vertex = 0;
  IntVector gamma;     // translate of the vertex representative
  double angle = 0.0;  // interior angle in (0, 2 pi]
};

struct FaceWalk {
  std::vector<FaceCorner> corners;
  int convex_corners = 0;  // corners with angle < pi
  bool closed = true;      // the walk returns to the same translate
  bool pseudo_triangle = false;
};

/// Faces of the periodic planar graph, one per orbit, traversed with the face
/// on the left. Throws InvalidInput for crossing frameworks.
std::vector<FaceWalk> classify_faces(const PeriodicFramework& f);

bool is_ppt(const PeriodicFramework& f);

struct GeneratorOptions {
  int candidate_radius = 2;
  int max_radius = 4;
  std::vector<EdgeOrbit> initial_edges;
};

/// All edge orbits (u <= v, |gamma|_inf <= radius, canonical, no self-loops)
/// in deterministic order.
std::vector<EdgeOrbit> candidate_edges(int n, int radius);

/// Whether adding `e` keeps f pointed at its endpoints and non-crossing.
bool is_insertable(const PeriodicFramework& f, const EdgeOrbit& e);

/// Random greedy insertion of pointed, non-crossing edge orbits until none
/// fits. Candidate orders come from a std::mt19937_64 reseeded per step.
PeriodicFramework generate_ppt(const LinearMapd& lattice, const Eigen::MatrixXd& points, std::uint64_t seed,
                               const GeneratorOptions& options = {});

/// Distinct completions of f to a pseudo-triangulation using extra edges with
/// |gamma|_inf <= candidate_radius; complete only relative to that radius.
std::vector<PeriodicFramework> enumerate_refinements(const PeriodicFramework& f, int candidate_radius = 2);

/// Edge orbits of f sorted, for comparing frameworks on the same placement.
std::vector<EdgeOrbit> canonical_edge_set(const PeriodicFramework& f);

// Equal-edge honeycomb: the white vertex is the circumcenter of the period
// triangle (0, lambda_1, lambda_2), s is the squared edge length.

double honeycomb_surface(double a11, double a12, double a22, double s);

struct HoneycombPoint {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
  double s = 0.0;
};

/// The point of the surface over (a11, a12, a22): s is the squared circumradius.
HoneycombPoint honeycomb_point(double a11, double a12, double a22);

enum class HoneycombVerdict { Nontrivial, TrivialOnly, Boundary };

const char* to_string(HoneycombVerdict v);

struct HoneycombTest {
  HoneycombVerdict verdict = HoneycombVerdict::TrivialOnly;
  double f11 = 0.0;
  double f12 = 0.0;
  double f22 = 0.0;
  double discriminant = 0.0;
};

HoneycombTest honeycomb_auxetic_test(const HoneycombPoint& pt, double tol = 1e-9);

enum class TriangleShape { Acute, Right, Obtuse };

/// Shape of the triangle (0, lambda_1, lambda_2) with Gram entries a.
TriangleShape period_triangle_shape(double a11, double a12, double a22, double tol = 1e-9);

}  // namespace auxetica
