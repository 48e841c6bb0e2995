#pragma once

// Symmetric-matrix kernel: packed symmetric storage, cyclic Jacobi spectra,
// positive semidefinite cone membership, operator norms and the Minkowski
// classification of 2x2 symmetric matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "auxetica/errors.hpp"

namespace auxetica {

template <typename Scalar>
using LinearMap = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr int kMaxSymDim = 8;
inline constexpr double kDefaultConeTol = 1e-9;

/// Real symmetric d x d matrix stored as its upper triangle (row by row), so
/// that symmetry holds by construction.
template <typename Scalar>
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(int dim) : dim_(dim), packed_(packed_size(dim), Scalar(0)) {
    if (dim < 1 || dim > kMaxSymDim) throw DimensionError("SymMatrix dimension must be in [1, 8]");
  }

  static SymMatrix identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static SymMatrix diagonal(const Vector<Scalar>& diag) {
    SymMatrix m(static_cast<int>(diag.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = diag(i);
    return m;
  }

  /// Reads the upper triangle of a square matrix; the lower triangle is ignored.
  template <typename Derived>
  static SymMatrix from_upper(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() != a.cols()) throw DimensionError("SymMatrix::from_upper needs a square matrix");
    SymMatrix m(static_cast<int>(a.rows()));
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j) m(i, j) = a(i, j);
    return m;
  }

  /// Symmetric part (A + A^T) / 2.
  template <typename Derived>
  static SymMatrix symmetrized(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() != a.cols()) throw DimensionError("SymMatrix::symmetrized needs a square matrix");
    SymMatrix m(static_cast<int>(a.rows()));
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j) m(i, j) = (a(i, j) + a(j, i)) / Scalar(2);
    return m;
  }

  /// Inverse of upper_entries(): values in row-major upper-triangle order.
  static SymMatrix from_upper_entries(int dim, const std::vector<Scalar>& entries) {
    SymMatrix m(dim);
    if (entries.size() != m.packed_.size()) throw DimensionError("wrong number of upper-triangle entries");
    m.packed_ = entries;
    return m;
  }

  int dim() const { return dim_; }

  Scalar& operator()(int i, int j) { return packed_[index(i, j)]; }
  Scalar operator()(int i, int j) const { return packed_[index(i, j)]; }

  const std::vector<Scalar>& upper_entries() const { return packed_; }

  LinearMap<Scalar> dense() const {
    LinearMap<Scalar> a(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) a(i, j) = (*this)(i, j);
    return a;
  }

  bool all_finite() const {
    return std::all_of(packed_.begin(), packed_.end(), [](Scalar x) { return std::isfinite(static_cast<double>(x)); });
  }

  Scalar trace() const {
    Scalar t(0);
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  Scalar frobenius_norm() const {
    Scalar s(0);
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) s += (i == j ? Scalar(1) : Scalar(2)) * (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < packed_.size(); ++k) packed_[k] += o.packed_[k];
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < packed_.size(); ++k) packed_[k] -= o.packed_[k];
    return *this;
  }
  SymMatrix& operator*=(Scalar s) {
    for (auto& x : packed_) x *= s;
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(Scalar s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator*(SymMatrix a, Scalar s) { return a *= s; }
  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.dim_ == b.dim_ && a.packed_ == b.packed_;
  }

 private:
  static std::size_t packed_size(int d) { return d < 1 ? 0 : static_cast<std::size_t>(d * (d + 1) / 2); }

  std::size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i * dim_ - i * (i - 1) / 2 + (j - i));
  }

  void check_same(const SymMatrix& o) const {
    if (o.dim_ != dim_) throw DimensionError("SymMatrix dimension mismatch");
  }

  int dim_ = 0;
  std::vector<Scalar> packed_;
};

template <typename Scalar>
struct SymEigen {
  Vector<Scalar> values;     // ascending
  LinearMap<Scalar> vectors;  // column k belongs to values(k)
};

/// Eigen-decomposition by cyclic Jacobi rotations. Iterates until the
/// off-diagonal Frobenius norm drops below 1e-14 of the matrix norm.
template <typename Scalar>
SymEigen<Scalar> eig_sym_vectors(const SymMatrix<Scalar>& m) {
  if (!m.all_finite()) throw InvalidInput("eig_sym: non-finite entries");
  const int d = m.dim();
  LinearMap<Scalar> a = m.dense();
  LinearMap<Scalar> v = LinearMap<Scalar>::Identity(d, d);

  const Scalar scale = std::max(m.frobenius_norm(), std::numeric_limits<Scalar>::min());
  const Scalar threshold = Scalar(1e-14) * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    Scalar off(0);
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += Scalar(2) * a(p, q) * a(p, q);
    if (std::sqrt(off) <= threshold) break;
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * a(p, q));
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (int k = 0; k < d; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  SymEigen<Scalar> out{Vector<Scalar>(d), LinearMap<Scalar>(d, d)};
  for (int k = 0; k < d; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

template <typename Scalar>
Vector<Scalar> eig_sym(const SymMatrix<Scalar>& m) {
  return eig_sym_vectors(m).values;
}

template <typename Scalar>
Scalar min_eigenvalue(const SymMatrix<Scalar>& m) {
  return eig_sym(m)(0);
}

enum class PsdStatus { PositiveDefinite, PositiveSemidefiniteBoundary, NotPSD };

template <typename Scalar>
PsdStatus psd_status(const SymMatrix<Scalar>& m, Scalar tol = Scalar(kDefaultConeTol)) {
  if (tol < 0) throw InvalidInput("psd_status: negative tolerance");
  const Scalar lo = min_eigenvalue(m);
  if (lo > tol) return PsdStatus::PositiveDefinite;
  if (lo >= -tol) return PsdStatus::PositiveSemidefiniteBoundary;
  return PsdStatus::NotPSD;
}

/// Largest singular value, sqrt(lambda_max(T^T T)).
template <typename Derived>
typename Derived::Scalar operator_norm(const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  if (!t.allFinite()) throw InvalidInput("operator_norm: non-finite entries");
  const LinearMap<Scalar> gram = t.transpose() * t;
  const Vector<Scalar> ev = eig_sym(SymMatrix<Scalar>::symmetrized(gram));
  return std::sqrt(std::max(ev(ev.size() - 1), Scalar(0)));
}

template <typename Derived>
bool is_contraction(const Eigen::MatrixBase<Derived>& t, typename Derived::Scalar tol = 0) {
  if (tol < 0) throw InvalidInput("is_contraction: negative tolerance");
  return operator_norm(t) <= typename Derived::Scalar(1) + tol;
}

/// Unique positive semidefinite square root. Eigenvalues within the default
/// cone tolerance below zero are clamped to zero.
template <typename Scalar>
SymMatrix<Scalar> psd_sqrt(const SymMatrix<Scalar>& m, Scalar tol = Scalar(kDefaultConeTol)) {
  const SymEigen<Scalar> e = eig_sym_vectors(m);
  if (e.values(0) < -tol) throw DomainError("psd_sqrt: matrix is not positive semidefinite");
  const Vector<Scalar> roots = e.values.cwiseMax(Scalar(0)).cwiseSqrt();
  const LinearMap<Scalar> r = e.vectors * roots.asDiagonal() * e.vectors.transpose();
  return SymMatrix<Scalar>::symmetrized(r);
}

enum class MinkowskiClass { FutureTimelike, PastTimelike, Lightlike, Spacelike, Zero };

/// Causal type of a 2x2 symmetric matrix under the quadratic form
/// det(A) = a11 a22 - a12^2 of signature (2,1).
template <typename Scalar>
MinkowskiClass minkowski_classify(const SymMatrix<Scalar>& m, Scalar tol = Scalar(1e-12)) {
  if (m.dim() != 2) throw DimensionError("minkowski_classify needs a 2x2 matrix");
  const Scalar norm2 = m.frobenius_norm() * m.frobenius_norm();
  if (std::sqrt(norm2) <= tol) return MinkowskiClass::Zero;
  const Scalar det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  if (std::abs(det) <= tol * std::max(Scalar(1), norm2)) return MinkowskiClass::Lightlike;
  if (det < 0) return MinkowskiClass::Spacelike;
  return m(0, 0) > 0 ? MinkowskiClass::FutureTimelike : MinkowskiClass::PastTimelike;
}

/// Vectorization that is an isometry from the trace inner product <A,B> =
/// tr(AB) to the Euclidean one: off-diagonal entries are scaled by sqrt(2).
template <typename Scalar>
Vector<Scalar> to_isometric_vector(const SymMatrix<Scalar>& m) {
  const int d = m.dim();
  Vector<Scalar> v(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) v(k++) = (i == j ? Scalar(1) : std::sqrt(Scalar(2))) * m(i, j);
  return v;
}

template <typename Derived>
SymMatrix<typename Derived::Scalar> from_isometric_vector(int dim, const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  SymMatrix<Scalar> m(dim);
  if (v.size() != dim * (dim + 1) / 2) throw DimensionError("isometric vector has the wrong length");
  int k = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m(i, j) = v(k++) / (i == j ? Scalar(1) : std::sqrt(Scalar(2)));
  return m;
}

using SymMatrixd = SymMatrix<double>;
using LinearMapd = LinearMap<double>;

}  // namespace auxetica
