#include "auxetica/integrate.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace auxetica {

DirectionSelector DirectionSelector::convex_combination(std::vector<std::vector<EdgeOrbit>> rays,
                                                        std::vector<double> weights) {
  DirectionSelector s;
  s.kind = SelectorKind::ConvexCombination;
  s.rays = std::move(rays);
  s.weights = std::move(weights);
  return s;
}

DirectionSelector DirectionSelector::kernel_one_dof(std::optional<VertexPair> pair) {
  DirectionSelector s;
  s.kind = SelectorKind::KernelOneDof;
  s.pair = std::move(pair);
  return s;
}

namespace {

double relative_residual(const PeriodicFramework& f) {
  const Eigen::VectorXd r = constraint_residuals(f);
  double worst = 0.0;
  for (int e = 0; e < f.m(); ++e) {
    const double len = f.graph.edges[e].length;
    worst = std::max(worst, std::abs(r(e)) / (len * len));
  }
  return worst;
}

double pair_rate(const PeriodicFramework& f, const TangentVector& t, const VertexPair& p) {
  const Eigen::VectorXd w = f.point(p.v, p.gamma) - f.positions.col(p.u);
  const Eigen::VectorXd dw = t.vertex_vel.col(p.v) + t.lattice_vel * p.gamma.cast<double>() - t.vertex_vel.col(p.u);
  return 2.0 * w.dot(dw);
}

// Evaluates the unit direction field; `ref` holds the previous direction(s)
// and fixes orientations by continuity.
class DirectionField {
 public:
  DirectionField(const DirectionSelector& s, const IntegrateOptions& o) : sel_(s), opts_(o) {
    if (s.kind == SelectorKind::ConvexCombination) {
      if (s.rays.empty() || s.rays.size() != s.weights.size())
        throw InvalidInput("integrate: convex combination needs one weight per ray");
      for (double w : s.weights)
        if (!(w >= 0)) throw InvalidInput("integrate: convex combination weights must be nonnegative");
      ray_refs_.resize(s.rays.size());
    }
  }

  Eigen::VectorXd operator()(const PeriodicFramework& f, double tau) {
    switch (sel_.kind) {
      case SelectorKind::AuxeticWitness: return witness(f, tau);
      case SelectorKind::ConvexCombination: return combination(f, tau);
      case SelectorKind::KernelOneDof: return kernel(f, tau);
    }
    return {};
  }

  /// Commits the direction used for the accepted step.
  void commit(const Eigen::VectorXd& dir, const std::vector<Eigen::VectorXd>& rays) {
    ref_ = dir;
    if (!rays.empty()) ray_refs_ = rays;
  }

  const std::vector<Eigen::VectorXd>& last_rays() const { return last_rays_; }

 private:
  Eigen::VectorXd witness(const PeriodicFramework& f, double tau) {
    const TangentSpace ts = tangent_space(f);
    const int k = static_cast<int>(ts.basis.size());
    if (k == 0) {
      if (tau == 0.0) throw NoAuxeticDirection("framework has no nontrivial infinitesimal motion");
      throw StepFailure("deformation space lost its tangent directions", tau);
    }
    std::vector<SymMatrixd> family;
    for (const auto& t : ts.basis) family.push_back(gram_differential(f, t));
    AscentOptions a;
    a.seed = opts_.cone.seed;
    if (ref_.size()) {
      a.warm_starts.push_back(ts.flat_basis.transpose() * ref_.normalized());
      a.starts = 2;
      a.budget = 1000;
    } else {
      a.starts = 8 * k;
      a.budget = opts_.cone.budget;
    }
    const MaxMinEig best = max_min_eigenvalue(family, a);
    if (!(best.value > opts_.cone.tol)) {
      if (tau == 0.0) throw NoAuxeticDirection("no tangent with positive definite Gram velocity");
      throw StepFailure("direction field left the interior of the auxetic cone", tau);
    }
    // Unit speed of the Gram curve.
    const Eigen::VectorXd dir = ts.flat_basis * best.x;
    return dir / gram_differential(f, TangentVector::unflatten(dir, f.dim(), f.n())).frobenius_norm();
  }

  Eigen::VectorXd one_dof_direction(const PeriodicFramework& f, double tau) {
    const TangentSpace ts = tangent_space(f);
    if (ts.basis.size() != 1) {
      std::ostringstream os;
      os << "expected a one-dof mechanism, found " << ts.basis.size() << " degrees of freedom";
      if (tau == 0.0) throw InvalidInput(os.str());
      throw StepFailure(os.str(), tau);
    }
    return ts.flat_basis.col(0);
  }

  Eigen::VectorXd combination(const PeriodicFramework& f, double tau) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(configuration_vector(f).size());
    last_rays_.clear();
    for (std::size_t i = 0; i < sel_.rays.size(); ++i) {
      Eigen::VectorXd r = one_dof_direction(with_edges(f, sel_.rays[i]), tau);
      if (ray_refs_[i].size()) {
        if (r.dot(ray_refs_[i]) < 0) r = -r;
      } else {
        // Initial orientation: the sign whose Gram velocity is closer to PSD.
        const SymMatrixd g = gram_differential(f, TangentVector::unflatten(r, f.dim(), f.n()));
        const Eigen::VectorXd ev = eig_sym(g);
        const double plus = ev(0), minus = -ev(ev.size() - 1);
        if (minus > plus || (minus == plus && g.trace() < 0)) r = -r;
      }
      last_rays_.push_back(r);
      total += sel_.weights[i] * r;
    }
    if (total.norm() < 1e-14) throw StepFailure("convex combination of rays vanished", tau);
    return total.normalized();
  }

  Eigen::VectorXd kernel(const PeriodicFramework& f, double tau) {
    Eigen::VectorXd r = one_dof_direction(f, tau);
    if (ref_.size()) {
      if (r.dot(ref_) < 0) r = -r;
      return r;
    }
    const TangentVector t = TangentVector::unflatten(r, f.dim(), f.n());
    if (!sel_.pair) {
      double best = -1.0;
      for (const VertexPair& p : distance_pairs(f.dim(), f.n(), 1)) {
        const double dist2 = (f.point(p.v, p.gamma) - f.positions.col(p.u)).squaredNorm();
        const double rate = std::abs(pair_rate(f, t, p)) / dist2;
        if (rate > best + 1e-12) {
          best = rate;
          sel_.pair = p;
        }
      }
    }
    if (pair_rate(f, t, *sel_.pair) < 0) r = -r;
    return r;
  }

  DirectionSelector sel_;
  IntegrateOptions opts_;
  Eigen::VectorXd ref_;
  std::vector<Eigen::VectorXd> ray_refs_;
  std::vector<Eigen::VectorXd> last_rays_;
};

}  // namespace

PeriodicFramework project_to_constraints(const PeriodicFramework& f, double tau, double tol, int max_iterations) {
  PeriodicFramework cur = f;
  double res = relative_residual(cur);
  for (int it = 0; it < max_iterations && res >= tol; ++it) {
    const Eigen::VectorXd r = constraint_residuals(cur);
    const Eigen::VectorXd dx = -Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(constraint_jacobian(cur)).solve(r);
    const Eigen::VectorXd x = configuration_vector(cur);
    bool accepted = false;
    for (double alpha = 1.0; alpha > 1e-4; alpha /= 2) {
      PeriodicFramework trial = with_configuration(cur, x + alpha * dx);
      if (constraint_residuals(trial).norm() < r.norm()) {
        cur = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) throw StepFailure("constraint projection stalled", tau);
    res = relative_residual(cur);
  }
  if (!(res < tol)) throw StepFailure("constraint projection did not converge", tau);
  return cur;
}

DeformationPath integrate_trajectory(const PeriodicFramework& f, const DirectionSelector& selector,
                                     const IntegrateOptions& options) {
  require_valid(f);
  if (options.steps < 1) throw InvalidInput("integrate: steps must be positive");
  if (!(options.h > 0)) throw InvalidInput("integrate: step size must be positive");
  if (selector.kind != SelectorKind::ConvexCombination && dof(f) < 1) {
    if (selector.kind == SelectorKind::AuxeticWitness)
      throw NoAuxeticDirection("framework is rigid (no degrees of freedom)");
    throw InvalidInput("integrate: framework is rigid (no degrees of freedom)");
  }

  DirectionField field(selector, options);
  DeformationPath path;
  path.framework0 = f;
  path.samples.push_back({0.0, f.positions, f.lattice, std::nullopt});

  PeriodicFramework cur = f;
  const double h = options.h;
  for (int step = 0; step < options.steps; ++step) {
    const double tau = step * h;
    const Eigen::VectorXd x = configuration_vector(cur);
    const Eigen::VectorXd k1 = field(cur, tau);
    const std::vector<Eigen::VectorXd> rays = field.last_rays();
    field.commit(k1, rays);
    const Eigen::VectorXd k2 = field(with_configuration(cur, x + 0.5 * h * k1), tau + 0.5 * h);
    const Eigen::VectorXd k3 = field(with_configuration(cur, x + 0.5 * h * k2), tau + 0.5 * h);
    const Eigen::VectorXd k4 = field(with_configuration(cur, x + h * k3), tau + h);
    const Eigen::VectorXd next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cur = project_to_constraints(with_configuration(cur, next), tau + h, options.projection_tol,
                                 options.max_projection_iterations);
    path.samples.push_back({tau + h, cur.positions, cur.lattice, std::nullopt});
  }
  return path;
}

}  // namespace auxetica
