#include "auxetica/framework.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>

#include "auxetica/tangent.hpp"

namespace auxetica {

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

namespace {

bool lex_positive(const IntVector& g) {
  for (int i = 0; i < g.size(); ++i) {
    if (g(i) > 0) return true;
    if (g(i) < 0) return false;
  }
  return false;
}

std::string describe_edge(int index, const EdgeOrbit& e) {
  std::ostringstream os;
  os << "edge " << index << " (" << e.u << " -> " << e.v << ", gamma [";
  for (int i = 0; i < e.gamma.size(); ++i) os << (i ? "," : "") << e.gamma(i);
  os << "])";
  return os.str();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

EdgeOrbit canonical(EdgeOrbit e) {
  if (e.u > e.v || (e.u == e.v && !lex_positive(e.gamma) && e.gamma.any())) {
    std::swap(e.u, e.v);
    e.gamma = -e.gamma;
  }
  return e;
}

bool same_orbit(const EdgeOrbit& a, const EdgeOrbit& b) {
  const EdgeOrbit ca = canonical(a), cb = canonical(b);
  return ca.u == cb.u && ca.v == cb.v && ca.gamma == cb.gamma;
}

Eigen::VectorXd PeriodicFramework::point(int v, const IntVector& gamma) const {
  return positions.col(v) + lattice * gamma.cast<double>();
}

Eigen::VectorXd PeriodicFramework::edge_vector(const EdgeOrbit& e) const {
  return point(e.v, e.gamma) - positions.col(e.u);
}

Eigen::VectorXd PeriodicFramework::edge_vector(int e) const { return edge_vector(graph.edges.at(e)); }

PeriodicFramework make_framework(const LinearMapd& lattice, const Eigen::MatrixXd& positions,
                                 const std::vector<EdgeOrbit>& edges) {
  PeriodicFramework f;
  f.graph.dim = static_cast<int>(lattice.rows());
  f.graph.n_vertex_orbits = static_cast<int>(positions.cols());
  f.positions = positions;
  f.lattice = lattice;
  for (const EdgeOrbit& e : edges) {
    EdgeOrbit c = canonical(e);
    c.length = f.edge_vector(c).norm();
    f.graph.edges.push_back(c);
  }
  return f;
}

PeriodicFramework with_edges(const PeriodicFramework& f, const std::vector<EdgeOrbit>& extra) {
  PeriodicFramework g = f;
  for (const EdgeOrbit& e : extra) {
    EdgeOrbit c = canonical(e);
    c.length = f.edge_vector(c).norm();
    g.graph.edges.push_back(c);
  }
  return g;
}

PeriodicFramework with_placement(const PeriodicFramework& f, const Eigen::MatrixXd& positions,
                                 const LinearMapd& lattice) {
  PeriodicFramework g = f;
  g.positions = positions;
  g.lattice = lattice;
  return g;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DimensionMismatch: return "DimensionMismatch";
    case ViolationKind::NonFinite: return "NonFinite";
    case ViolationKind::DegenerateLattice: return "DegenerateLattice";
    case ViolationKind::BadVertexIndex: return "BadVertexIndex";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::NonPositiveLength: return "NonPositiveLength";
    case ViolationKind::DuplicateEdge: return "DuplicateEdge";
    case ViolationKind::EdgeLengthMismatch: return "EdgeLengthMismatch";
  }
  return "Unknown";
}

std::vector<Violation> validate(const PeriodicFramework& f, double rel_tol) {
  std::vector<Violation> out;
  const int d = f.dim();
  if (d < 1 || d > kMaxSymDim || f.lattice.rows() != d || f.lattice.cols() != d || f.positions.rows() != d ||
      f.positions.cols() != f.n() || f.n() < 1) {
    out.push_back({ViolationKind::DimensionMismatch, -1, "dimensions of positions/lattice do not match the graph"});
    return out;
  }
  if (!f.lattice.allFinite() || !f.positions.allFinite()) {
    out.push_back({ViolationKind::NonFinite, -1, "non-finite coordinate"});
    return out;
  }
  double col_norms = 1.0;
  for (int j = 0; j < d; ++j) col_norms *= f.lattice.col(j).norm();
  if (col_norms == 0.0 || std::abs(f.lattice.determinant()) <= 1e-12 * col_norms) {
    out.push_back({ViolationKind::DegenerateLattice, -1, "lattice basis is singular"});
  }

  for (int i = 0; i < f.m(); ++i) {
    const EdgeOrbit& e = f.graph.edges[i];
    if (e.u < 0 || e.u >= f.n() || e.v < 0 || e.v >= f.n()) {
      out.push_back({ViolationKind::BadVertexIndex, i, describe_edge(i, e) + " references a missing vertex orbit"});
      continue;
    }
    if (e.gamma.size() != d) {
      out.push_back({ViolationKind::DimensionMismatch, i, describe_edge(i, e) + " has a period of wrong length"});
      continue;
    }
    if (e.u == e.v && !e.gamma.any()) {
      out.push_back({ViolationKind::SelfLoop, i, describe_edge(i, e) + " joins a vertex to itself"});
      continue;
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      out.push_back({ViolationKind::NonPositiveLength, i, describe_edge(i, e) + " has non-positive length"});
      continue;
    }
    for (int j = 0; j < i; ++j) {
      if (same_orbit(e, f.graph.edges[j])) {
        out.push_back({ViolationKind::DuplicateEdge, i, describe_edge(i, e) + " repeats edge " + std::to_string(j)});
        break;
      }
    }
    const double actual = f.edge_vector(e).norm();
    if (std::abs(actual - e.length) > rel_tol * e.length) {
      std::ostringstream os;
      os << describe_edge(i, e) << " has length " << actual << " but bar length " << e.length;
      out.push_back({ViolationKind::EdgeLengthMismatch, i, os.str()});
    }
  }
  return out;
}

void require_valid(const PeriodicFramework& f, double rel_tol) {
  const auto violations = validate(f, rel_tol);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid framework:";
  for (const auto& v : violations) os << "\n  " << to_string(v.kind) << ": " << v.message;
  throw InvalidInput(os.str());
}

SymMatrixd gram(const PeriodicFramework& f) {
  return SymMatrixd::symmetrized(f.lattice.transpose() * f.lattice);
}

int dof(const PeriodicFramework& f) {
  require_valid(f);
  const int d = f.dim();
  const int rank = numerical_rank(constraint_jacobian(f));
  return d * f.n() + d * d - rank - d * (d + 1) / 2;
}

std::vector<IntVector> coset_representatives(const IntMatrix& basis) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d) throw DimensionError("sublattice basis must be square");
  const Eigen::MatrixXd b = basis.cast<double>();
  const long det = std::lround(b.determinant());
  if (det == 0) throw InvalidInput("sublattice basis has zero determinant");
  const Eigen::MatrixXi adj = (static_cast<double>(det) * b.inverse()).array().round().cast<int>();

  IntVector lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo(i) = 0;
    hi(i) = 0;
    for (int j = 0; j < d; ++j) {
      lo(i) += std::min(0, basis(i, j));
      hi(i) += std::max(0, basis(i, j));
    }
  }
  std::vector<IntVector> reps;
  IntVector x = lo;
  while (true) {
    const IntVector y = adj * x;
    bool inside = true;
    for (int i = 0; i < d && inside; ++i) {
      const long yi = y(i);
      inside = det > 0 ? (yi >= 0 && yi < det) : (yi <= 0 && yi > det);
    }
    if (inside) reps.push_back(x);
    int k = d - 1;
    while (k >= 0 && x(k) == hi(k)) {
      x(k) = lo(k);
      --k;
    }
    if (k < 0) break;
    ++x(k);
  }
  std::sort(reps.begin(), reps.end(), [](const IntVector& a, const IntVector& c) {
    if (!a.any() != !c.any()) return !a.any();
    return lex_less(a, c);
  });
  if (static_cast<long>(reps.size()) != std::labs(det)) throw std::logic_error("coset enumeration mismatch");
  return reps;
}

PeriodicFramework sublattice_relax(const PeriodicFramework& f, const IntMatrix& basis) {
  const int d = f.dim();
  if (basis.rows() != d || basis.cols() != d) throw DimensionError("sublattice basis has the wrong size");
  const std::vector<IntVector> reps = coset_representatives(basis);
  const int k = static_cast<int>(reps.size());
  const Eigen::MatrixXd b = basis.cast<double>();
  const long det = std::lround(b.determinant());
  const Eigen::MatrixXi adj = (static_cast<double>(det) * b.inverse()).array().round().cast<int>();

  // z = basis * delta + reps[j] with reps[j] the coset representative of z.
  auto reduce = [&](const IntVector& z, int& coset, IntVector& delta) {
    const IntVector y = adj * z;
    delta.resize(d);
    for (int i = 0; i < d; ++i) delta(i) = static_cast<int>(floor_div(y(i), det));
    const IntVector rep = z - basis * delta;
    for (int j = 0; j < k; ++j) {
      if (reps[j] == rep) {
        coset = j;
        return;
      }
    }
    throw std::logic_error("coset reduction failed");
  };

  PeriodicFramework g;
  g.graph.dim = d;
  g.graph.n_vertex_orbits = f.n() * k;
  g.lattice = f.lattice * b;
  g.positions.resize(d, g.n());
  for (int v = 0; v < f.n(); ++v)
    for (int i = 0; i < k; ++i) g.positions.col(v * k + i) = f.point(v, reps[i]);

  for (const EdgeOrbit& e : f.graph.edges) {
    for (int i = 0; i < k; ++i) {
      int j = 0;
      IntVector delta;
      reduce(reps[i] + e.gamma, j, delta);
      EdgeOrbit ne{e.u * k + i, e.v * k + j, delta, e.length};
      g.graph.edges.push_back(canonical(ne));
    }
  }
  return g;
}

std::vector<IntVector> integer_box(int dim, int radius) {
  std::vector<IntVector> out;
  if (radius < 0) return out;
  IntVector x = IntVector::Constant(dim, -radius);
  while (true) {
    out.push_back(x);
    int k = dim - 1;
    while (k >= 0 && x(k) == radius) {
      x(k) = -radius;
      --k;
    }
    if (k < 0) break;
    ++x(k);
  }
  return out;
}

std::vector<VertexPair> distance_pairs(int dim, int n_vertex_orbits, int radius) {
  if (radius < 0) throw InvalidInput("pairwise_distances: negative radius");
  const std::vector<IntVector> box = integer_box(dim, radius);
  std::vector<VertexPair> out;
  for (int u = 0; u < n_vertex_orbits; ++u)
    for (int v = u; v < n_vertex_orbits; ++v)
      for (const IntVector& g : box) {
        if (u == v && !lex_positive(g)) continue;
        out.push_back({u, v, g});
      }
  return out;
}

std::vector<PairDistance> pairwise_distances(const PeriodicFramework& f, int radius) {
  std::vector<PairDistance> out;
  for (VertexPair& p : distance_pairs(f.dim(), f.n(), radius)) {
    const double dist = (f.point(p.v, p.gamma) - f.positions.col(p.u)).norm();
    out.push_back({std::move(p), dist});
  }
  return out;
}

}  // namespace auxetica
