#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "auxetica/symcone.hpp"

namespace auxetica {

using IntVector = Eigen::VectorXi;
using IntMatrix = Eigen::MatrixXi;

/// Edge orbit of a periodic graph: joins the representative of vertex orbit
/// `u` to the representative of orbit `v` translated by the period `gamma`.
struct EdgeOrbit {
  int u = 0;
  int v = 0;
  IntVector gamma;
  double length = 0.0;
};

/// Orientation-normalized copy: u <= v, and for u == v the period is
/// lexicographically positive. (u, v, g) and (v, u, -g) name the same orbit.
EdgeOrbit canonical(EdgeOrbit e);

/// Same orbit regardless of stored orientation; lengths are not compared.
bool same_orbit(const EdgeOrbit& a, const EdgeOrbit& b);

bool lex_less(const IntVector& a, const IntVector& b);

struct QuotientGraph {
  int dim = 0;
  int n_vertex_orbits = 0;
  std::vector<EdgeOrbit> edges;
};

/// A d-periodic bar-and-joint framework: quotient graph, one position per
/// vertex orbit (columns of `positions`) and a lattice basis (columns of
/// `lattice` are the period generators).
struct PeriodicFramework {
  QuotientGraph graph;
  Eigen::MatrixXd positions;
  LinearMapd lattice;

  int dim() const { return graph.dim; }
  int n() const { return graph.n_vertex_orbits; }
  int m() const { return static_cast<int>(graph.edges.size()); }

  /// p(v) + Lambda * gamma.
  Eigen::VectorXd point(int v, const IntVector& gamma) const;

  /// p(v) + Lambda * gamma - p(u) for edge orbit e.
  Eigen::VectorXd edge_vector(int e) const;
  Eigen::VectorXd edge_vector(const EdgeOrbit& e) const;
};

/// Builds a framework whose bar lengths are read off the placement.
PeriodicFramework make_framework(const LinearMapd& lattice, const Eigen::MatrixXd& positions,
                                 const std::vector<EdgeOrbit>& edges);

/// Returns `f` with extra edge orbits; their lengths are measured in `f`.
PeriodicFramework with_edges(const PeriodicFramework& f, const std::vector<EdgeOrbit>& extra);

/// Same graph, new placement; bar lengths are kept from `f`.
PeriodicFramework with_placement(const PeriodicFramework& f, const Eigen::MatrixXd& positions,
                                 const LinearMapd& lattice);

enum class ViolationKind {
  DimensionMismatch,
  NonFinite,
  DegenerateLattice,
  BadVertexIndex,
  SelfLoop,
  NonPositiveLength,
  DuplicateEdge,
  EdgeLengthMismatch,
};

struct Violation {
  ViolationKind kind;
  int index = -1;  // offending edge or vertex, -1 when not applicable
  std::string message;
};

std::string to_string(ViolationKind kind);

std::vector<Violation> validate(const PeriodicFramework& f, double rel_tol = 1e-9);

/// Throws InvalidInput listing every violation.
void require_valid(const PeriodicFramework& f, double rel_tol = 1e-9);

/// Lattice Gram matrix Lambda^T Lambda.
SymMatrixd gram(const PeriodicFramework& f);

/// Dimension of the local deformation space (assuming a smooth point):
/// d n + d^2 - rank(J) - d(d+1)/2.
int dof(const PeriodicFramework& f);

/// The same infinite framework seen with the sublattice of periods spanned by
/// the columns of `basis` (an integer matrix of nonzero determinant). New
/// vertex orbit index = old_orbit * |det basis| + coset index.
PeriodicFramework sublattice_relax(const PeriodicFramework& f, const IntMatrix& basis);

/// Integer coset representatives of Z^d / basis Z^d, in a fixed order.
std::vector<IntVector> coset_representatives(const IntMatrix& basis);

struct VertexPair {
  int u = 0;
  int v = 0;
  IntVector gamma;
};

struct PairDistance {
  VertexPair pair;
  double distance = 0.0;
};

/// Distances |p(v) + Lambda gamma - p(u)| over pairs with u <= v and
/// ||gamma||_inf <= radius. Pairs within one orbit keep only the
/// lexicographically positive gamma. Ordered lexicographically by (u, v, gamma).
std::vector<PairDistance> pairwise_distances(const PeriodicFramework& f, int radius);

std::vector<VertexPair> distance_pairs(int dim, int n_vertex_orbits, int radius);

/// All integer vectors of length `dim` with entries in [-radius, radius], in
/// lexicographic order.
std::vector<IntVector> integer_box(int dim, int radius);

}  // namespace auxetica
