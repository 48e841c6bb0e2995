#include "auxetica/cone.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace auxetica {

const char* to_string(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::TrivialOnly: return "TrivialOnly";
    case ConeVerdict::NontrivialBoundary: return "NontrivialBoundary";
    case ConeVerdict::StrictInterior: return "StrictInterior";
  }
  return "Unknown";
}

namespace {

SymMatrixd combine(const std::vector<SymMatrixd>& family, const Eigen::VectorXd& x) {
  SymMatrixd m(family.front().dim());
  for (std::size_t i = 0; i < family.size(); ++i) m = m + x(static_cast<Eigen::Index>(i)) * family[i];
  return m;
}

struct Smoothed {
  double value;  // -(1/beta) log sum exp(-beta lambda_j)
  double exact;  // lambda_min
  Eigen::VectorXd grad;
};

Smoothed smoothed_min_eig(const std::vector<SymMatrixd>& family, const Eigen::VectorXd& x, double beta) {
  const SymEigen<double> e = eig_sym_vectors(combine(family, x));
  const double lo = e.values(0);
  Eigen::VectorXd w(e.values.size());
  for (int j = 0; j < w.size(); ++j) w(j) = std::exp(-beta * (e.values(j) - lo));
  const double total = w.sum();
  w /= total;
  Smoothed s{lo - std::log(total) / beta, lo, Eigen::VectorXd::Zero(x.size())};
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Eigen::MatrixXd a = family[i].dense();
    double g = 0.0;
    for (int j = 0; j < w.size(); ++j) g += w(j) * e.vectors.col(j).dot(a * e.vectors.col(j));
    s.grad(static_cast<Eigen::Index>(i)) = g;
  }
  return s;
}

MaxMinEig ascend(const std::vector<SymMatrixd>& family, Eigen::VectorXd x, int iterations) {
  x.normalize();
  MaxMinEig best{x, min_eigenvalue(combine(family, x))};
  const double betas[] = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e8, 1e10, 1e12};
  const int per_stage = std::max(10, iterations / static_cast<int>(std::size(betas)));
  for (double beta : betas) {
    double step = 0.5;
    Smoothed cur = smoothed_min_eig(family, x, beta);
    for (int it = 0; it < per_stage && step > 1e-14; ++it) {
      Eigen::VectorXd g = cur.grad - cur.grad.dot(x) * x;
      if (g.norm() < 1e-15) break;
      Eigen::VectorXd trial = (x + step * g / g.norm()).normalized();
      Smoothed next = smoothed_min_eig(family, trial, beta);
      if (next.value > cur.value) {
        x = trial;
        cur = next;
        step = std::min(1.0, step * 1.5);
        if (cur.exact > best.value) best = {x, cur.exact};
      } else {
        step *= 0.5;
      }
    }
  }
  return best;
}

// Orthonormal columns spanning the complement of span(a) in R^rows.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& a, int rank) {
  const int rows = static_cast<int>(a.rows());
  if (a.cols() == 0 || rank == 0) return Eigen::MatrixXd::Identity(rows, rows);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(rows - rank);
}

struct ImageDecision {
  ConeVerdict verdict;
  Eigen::VectorXd x;  // coefficients in the image basis (empty for TrivialOnly)
  double primal = 0.0;
  double dual = 0.0;
  bool decided = true;
};

// Exact decision for a line spanned by one unit matrix.
ImageDecision decide_line(const SymMatrixd& m, double tol) {
  const Eigen::VectorXd ev = eig_sym(m);
  const double lo = ev(0), hi = ev(ev.size() - 1);
  ImageDecision out{ConeVerdict::TrivialOnly, Eigen::VectorXd(), std::max(lo, -hi), -std::numeric_limits<double>::infinity()};
  const double sign = lo >= -hi ? 1.0 : -1.0;
  const double best = sign > 0 ? lo : -hi;
  if (best > tol) {
    out.verdict = ConeVerdict::StrictInterior;
  } else if (best >= -tol) {
    out.verdict = ConeVerdict::NontrivialBoundary;
  } else {
    // Indefinite: the line meets the cone only at 0.
    out.dual = 0.0;
    return out;
  }
  out.x = Eigen::VectorXd::Constant(1, sign);
  return out;
}

// Exact decision for a plane in Sym(2): det(x A + y B) is a binary quadratic
// form whose signature is (1,1), (0,2) or degenerate, because det has
// Lorentzian signature on Sym(2).
ImageDecision decide_plane_2x2(const SymMatrixd& a, const SymMatrixd& b, double tol) {
  auto det = [](const SymMatrixd& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1); };
  Eigen::Matrix2d q;
  const double mixed = a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0) - 2 * a(0, 1) * b(0, 1);
  q << det(a), mixed / 2, mixed / 2, det(b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
  const double top = es.eigenvalues()(1);
  ImageDecision out;
  out.x = es.eigenvectors().col(1);
  const SymMatrixd m = out.x(0) * a + out.x(1) * b;
  if (m.trace() < 0) out.x = -out.x;
  out.primal = min_eigenvalue(out.x(0) * a + out.x(1) * b);
  if (top > tol) {
    out.verdict = ConeVerdict::StrictInterior;
  } else if (top >= -tol) {
    out.verdict = ConeVerdict::NontrivialBoundary;
  } else {
    out.verdict = ConeVerdict::TrivialOnly;
    out.x = Eigen::VectorXd();
  }
  return out;
}

}  // namespace

MaxMinEig max_min_eigenvalue(const std::vector<SymMatrixd>& family, const AscentOptions& options) {
  if (family.empty()) throw InvalidInput("max_min_eigenvalue: empty family");
  const int k = static_cast<int>(family.size());
  double scale = 0.0;
  for (const auto& a : family) scale = std::max(scale, a.frobenius_norm());
  if (scale == 0.0) return {Eigen::VectorXd::Unit(k, 0), 0.0};
  std::vector<SymMatrixd> unit;
  for (const auto& a : family) unit.push_back((1.0 / scale) * a);

  std::vector<Eigen::VectorXd> starts;
  for (const auto& w : options.warm_starts)
    if (w.size() == k && w.norm() > 0) starts.push_back(w);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const int random_starts = std::max(1, options.starts);
  for (int s = 0; s < random_starts; ++s) {
    Eigen::VectorXd x(k);
    for (int i = 0; i < k; ++i) x(i) = normal(rng);
    if (x.norm() == 0) x(0) = 1;
    starts.push_back(x);
  }
  const int per_start = std::max(50, options.budget / static_cast<int>(starts.size()));

  MaxMinEig best{Eigen::VectorXd(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : starts) {
    MaxMinEig r = k == 1 ? MaxMinEig{s.normalized(), min_eigenvalue(combine(unit, s.normalized()))}
                         : ascend(unit, s, per_start);
    if (r.value > best.value) best = r;  // ties keep the earlier start
  }
  best.value *= scale;
  return best;
}

ConeReport auxetic_cone(const PeriodicFramework& f, const ConeOptions& options) {
  require_valid(f);
  const int d = f.dim();
  const double tol = options.tol;
  const TangentSpace ts = tangent_space(f);
  const int k = static_cast<int>(ts.basis.size());

  ConeReport report;
  report.tangent_dim = k;
  report.singular_point = ts.singular_point;
  for (const TangentVector& ray : options.extremal_rays) {
    if (psd_status(gram_differential(f, ray), tol) == PsdStatus::NotPSD)
      throw InvalidInput("auxetic_cone: supplied extremal ray is not in the auxetic cone");
  }
  if (!options.extremal_rays.empty()) report.extremal_rays = options.extremal_rays;
  if (k == 0) return report;

  // Gram images of the tangent basis, isometrically vectorized.
  const int sym_dim = d * (d + 1) / 2;
  Eigen::MatrixXd g(sym_dim, k);
  for (int i = 0; i < k; ++i) g.col(i) = to_isometric_vector(gram_differential(f, ts.basis[i]));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * std::max(1.0, sv(0))) ++rank;
  report.image_dim = rank;

  // A tangent whose image vanishes (if any) is a boundary witness.
  std::optional<Eigen::VectorXd> kernel_tangent;
  if (rank < k) kernel_tangent = ts.flat_basis * svd.matrixV().col(rank);

  const Eigen::MatrixXd image = svd.matrixU().leftCols(rank);
  std::vector<SymMatrixd> image_basis;
  for (int i = 0; i < rank; ++i) image_basis.push_back(from_isometric_vector(d, image.col(i)));

  ImageDecision decision{ConeVerdict::TrivialOnly, Eigen::VectorXd(), 0.0, 0.0};
  if (rank == 0) {
    decision.primal = 0.0;
  } else if (rank == sym_dim) {
    decision.verdict = ConeVerdict::StrictInterior;
    decision.x = image.transpose() * to_isometric_vector(SymMatrixd::identity(d));
    decision.x.normalize();
    decision.primal = min_eigenvalue(from_isometric_vector(d, image * decision.x));
    decision.dual = -std::numeric_limits<double>::infinity();
  } else if (rank == 1) {
    decision = decide_line(image_basis[0], tol);
  } else if (d == 2 && rank == 2) {
    decision = decide_plane_2x2(image_basis[0], image_basis[1], tol);
  } else {
    AscentOptions primal_opts;
    primal_opts.starts = 8 * k;
    primal_opts.budget = options.budget / 2;
    primal_opts.seed = options.seed;
    primal_opts.warm_starts.push_back(image.transpose() * to_isometric_vector(SymMatrixd::identity(d)));
    const MaxMinEig primal = max_min_eigenvalue(image_basis, primal_opts);
    decision.primal = primal.value;
    decision.x = primal.x;
    if (primal.value > tol) {
      decision.verdict = ConeVerdict::StrictInterior;
    } else {
      const Eigen::MatrixXd comp = orthogonal_complement(image, rank);
      std::vector<SymMatrixd> comp_basis;
      for (int i = 0; i < comp.cols(); ++i) comp_basis.push_back(from_isometric_vector(d, comp.col(i)));
      AscentOptions dual_opts = primal_opts;
      dual_opts.starts = 8 * static_cast<int>(comp_basis.size());
      dual_opts.seed = options.seed + 1;
      dual_opts.warm_starts = {comp.transpose() * to_isometric_vector(SymMatrixd::identity(d))};
      const MaxMinEig dual = max_min_eigenvalue(comp_basis, dual_opts);
      decision.dual = dual.value;
      if (dual.value > tol) {
        decision.verdict = ConeVerdict::TrivialOnly;
        decision.x = Eigen::VectorXd();
      } else if (std::abs(primal.value) <= tol && std::abs(dual.value) <= tol) {
        decision.verdict = ConeVerdict::NontrivialBoundary;
      } else if (!kernel_tangent) {
        const Eigen::VectorXd coeffs = svd.matrixV().leftCols(rank) *
                                       (sv.head(rank).cwiseInverse().asDiagonal() * primal.x);
        throw Undecided("auxetic_cone: no certified verdict within the iteration budget",
                        TangentVector::unflatten((ts.flat_basis * coeffs).normalized(), d, f.n()), primal.value);
      } else {
        decision.verdict = ConeVerdict::TrivialOnly;
        decision.x = Eigen::VectorXd();
      }
    }
  }
  report.primal_value = decision.primal;
  report.dual_value = decision.dual;

  Eigen::VectorXd witness_flat;
  if (decision.verdict == ConeVerdict::TrivialOnly) {
    if (!kernel_tangent) return report;
    report.verdict = ConeVerdict::NontrivialBoundary;
    witness_flat = *kernel_tangent;
  } else {
    report.verdict = decision.verdict;
    // Tangent coefficients c with G c = image x (least squares via the SVD).
    const Eigen::VectorXd coeffs =
        svd.matrixV().leftCols(rank) * (sv.head(rank).cwiseInverse().asDiagonal() * decision.x);
    witness_flat = ts.flat_basis * coeffs;
  }
  witness_flat.normalize();
  report.witness = TangentVector::unflatten(witness_flat, d, f.n());
  report.witness_gram_velocity = gram_differential(f, *report.witness);
  // Verified on the unit-norm image, the scale the verdict was decided on.
  const double norm = report.witness_gram_velocity->frobenius_norm();
  const SymMatrixd unit = norm > 1e-12 ? (1.0 / norm) * *report.witness_gram_velocity : *report.witness_gram_velocity;
  const PsdStatus status = psd_status(unit, tol);
  if (status == PsdStatus::NotPSD ||
      (report.verdict == ConeVerdict::StrictInterior && status != PsdStatus::PositiveDefinite)) {
    throw Undecided("auxetic_cone: witness failed re-verification", *report.witness,
                    min_eigenvalue(*report.witness_gram_velocity));
  }
  return report;
}

}  // namespace auxetica
