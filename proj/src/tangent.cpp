#include "auxetica/tangent.hpp"

#include <Eigen/SVD>

namespace auxetica {

namespace {

// Scales each nonzero row to unit length; the kernel is unchanged and the
// singular value threshold becomes independent of bar lengths.
Eigen::MatrixXd normalized_rows(Eigen::MatrixXd a) {
  for (int i = 0; i < a.rows(); ++i) {
    const double nrm = a.row(i).norm();
    if (nrm > 0) a.row(i) /= nrm;
  }
  return a;
}

}  // namespace

Eigen::VectorXd TangentVector::flat() const {
  const int d = static_cast<int>(lattice_vel.rows());
  const int n = static_cast<int>(vertex_vel.cols());
  Eigen::VectorXd x(d * n + d * d);
  x.head(d * n) = Eigen::Map<const Eigen::VectorXd>(vertex_vel.data(), d * n);
  x.tail(d * d) = Eigen::Map<const Eigen::VectorXd>(lattice_vel.data(), d * d);
  return x;
}

TangentVector TangentVector::unflatten(const Eigen::VectorXd& x, int dim, int n) {
  if (x.size() != dim * n + dim * dim) throw DimensionError("tangent vector has the wrong length");
  TangentVector t;
  t.vertex_vel = Eigen::Map<const Eigen::MatrixXd>(x.data(), dim, n);
  t.lattice_vel = Eigen::Map<const Eigen::MatrixXd>(x.data() + dim * n, dim, dim);
  return t;
}

Eigen::VectorXd configuration_vector(const PeriodicFramework& f) {
  return TangentVector{f.positions, f.lattice}.flat();
}

PeriodicFramework with_configuration(const PeriodicFramework& f, const Eigen::VectorXd& x) {
  const TangentVector c = TangentVector::unflatten(x, f.dim(), f.n());
  return with_placement(f, c.vertex_vel, c.lattice_vel);
}

Eigen::VectorXd constraint_residuals(const PeriodicFramework& f) {
  Eigen::VectorXd r(f.m());
  for (int e = 0; e < f.m(); ++e) {
    const double len = f.graph.edges[e].length;
    r(e) = f.edge_vector(e).squaredNorm() - len * len;
  }
  return r;
}

Eigen::MatrixXd constraint_jacobian(const PeriodicFramework& f) {
  const int d = f.dim(), n = f.n();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(f.m(), d * n + d * d);
  for (int e = 0; e < f.m(); ++e) {
    const EdgeOrbit& edge = f.graph.edges[e];
    const Eigen::VectorXd w = 2.0 * f.edge_vector(edge);
    jac.block(e, d * edge.v, 1, d) += w.transpose();
    jac.block(e, d * edge.u, 1, d) -= w.transpose();
    for (int j = 0; j < d; ++j) jac.block(e, d * n + d * j, 1, d) += edge.gamma(j) * w.transpose();
  }
  return jac;
}

Eigen::MatrixXd trivial_motions(const PeriodicFramework& f) {
  const int d = f.dim(), n = f.n();
  const int count = d * (d + 1) / 2;
  Eigen::MatrixXd out(d * n + d * d, count);
  int col = 0;
  for (int i = 0; i < d; ++i) {
    TangentVector t{Eigen::MatrixXd::Zero(d, n), LinearMapd::Zero(d, d)};
    t.vertex_vel.row(i).setOnes();
    out.col(col++) = t.flat();
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      LinearMapd omega = LinearMapd::Zero(d, d);
      omega(i, j) = 1.0;
      omega(j, i) = -1.0;
      out.col(col++) = TangentVector{omega * f.positions, omega * f.lattice}.flat();
    }
  return out;
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(normalized_rows(a));
  const Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

TangentSpace tangent_space(const PeriodicFramework& f) {
  const int d = f.dim(), n = f.n();
  const int cols = d * n + d * d;
  const Eigen::MatrixXd jac = constraint_jacobian(f);
  const Eigen::MatrixXd triv = trivial_motions(f);
  Eigen::MatrixXd stacked(jac.rows() + triv.cols(), cols);
  stacked << normalized_rows(jac), normalized_rows(triv.transpose());

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  int rank = 0;
  bool ambiguous = false;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-9 * top) {
      ++rank;
      if (s(i) < 1e-6 * top) ambiguous = true;
    }
  }

  TangentSpace ts;
  ts.singular_point = ambiguous;
  ts.flat_basis = svd.matrixV().rightCols(cols - rank);
  for (int k = 0; k < ts.flat_basis.cols(); ++k)
    ts.basis.push_back(TangentVector::unflatten(ts.flat_basis.col(k), d, n));
  return ts;
}

SymMatrixd gram_differential(const PeriodicFramework& f, const TangentVector& t) {
  return SymMatrixd::symmetrized(t.lattice_vel.transpose() * f.lattice + f.lattice.transpose() * t.lattice_vel);
}

}  // namespace auxetica
