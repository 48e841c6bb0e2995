#include "auxetica/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace auxetica {

PeriodicFramework DeformationPath::framework_at(std::size_t k) const {
  const PathSample& s = samples.at(k);
  return with_placement(framework0, s.positions, s.lattice);
}

std::vector<double> DeformationPath::taus() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.tau);
  return out;
}

DeformationPath sample_path(const PathGenerator& gen, int count) {
  if (count < 2) throw InvalidInput("sample_path: need at least 2 samples");
  if (!(gen.tau_end > gen.tau_begin)) throw InvalidInput("sample_path: empty parameter range");
  const double spacing = (gen.tau_end - gen.tau_begin) / (count - 1);
  const double h = spacing / 10.0;

  auto omega_at = [&](double tau) {
    const PathSample s = gen.at(tau);
    return SymMatrixd::symmetrized(s.lattice.transpose() * s.lattice);
  };

  DeformationPath p;
  p.framework0 = gen.framework0;
  for (int k = 0; k < count; ++k) {
    const double tau = k + 1 == count ? gen.tau_end : gen.tau_begin + k * spacing;
    PathSample s = gen.at(tau);
    s.tau = tau;
    if (gen.gram_velocity) {
      s.gram_velocity = gen.gram_velocity(tau);
    } else {
      // Five-point stencil; the generator may be evaluated slightly outside
      // its declared range.
      SymMatrixd v = omega_at(tau - 2 * h) - 8.0 * omega_at(tau - h) + 8.0 * omega_at(tau + h) - omega_at(tau + 2 * h);
      s.gram_velocity = (1.0 / (12.0 * h)) * v;
    }
    p.samples.push_back(std::move(s));
  }
  return p;
}

DeformationPath lattice_path(const std::vector<double>& taus, const std::vector<LinearMapd>& lattices) {
  if (taus.size() != lattices.size() || taus.empty()) throw InvalidInput("lattice_path: size mismatch");
  const int d = static_cast<int>(lattices.front().rows());
  DeformationPath p;
  p.framework0 = make_framework(lattices.front(), Eigen::MatrixXd::Zero(d, 1), {});
  for (std::size_t k = 0; k < taus.size(); ++k)
    p.samples.push_back({taus[k], Eigen::MatrixXd::Zero(d, 1), lattices[k], std::nullopt});
  return p;
}

std::vector<Violation> validate_path(const DeformationPath& p, double rel_tol) {
  std::vector<Violation> out = validate(p.framework0);
  if (p.samples.size() < 2) out.push_back({ViolationKind::DimensionMismatch, -1, "path needs at least 2 samples"});
  for (std::size_t k = 0; k < p.samples.size(); ++k) {
    if (k > 0 && !(p.samples[k].tau > p.samples[k - 1].tau)) {
      out.push_back({ViolationKind::DimensionMismatch, static_cast<int>(k), "path parameter not strictly increasing"});
    }
    for (Violation v : validate(p.framework_at(k), rel_tol)) {
      std::ostringstream os;
      os << "sample " << k << " (tau=" << p.samples[k].tau << "): " << v.message;
      v.message = os.str();
      out.push_back(std::move(v));
    }
  }
  return out;
}

void require_valid_path(const DeformationPath& p, double rel_tol) {
  const auto violations = validate_path(p, rel_tol);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid deformation path:";
  for (const auto& v : violations) os << "\n  " << to_string(v.kind) << ": " << v.message;
  throw InvalidInput(os.str());
}

DeformationPath reversed(const DeformationPath& p) {
  DeformationPath r;
  r.framework0 = p.framework0;
  for (auto it = p.samples.rbegin(); it != p.samples.rend(); ++it) {
    PathSample s = *it;
    s.tau = -s.tau;
    if (s.gram_velocity) s.gram_velocity = -1.0 * *s.gram_velocity;
    r.samples.push_back(std::move(s));
  }
  if (!r.samples.empty()) r.framework0 = with_placement(p.framework0, r.samples[0].positions, r.samples[0].lattice);
  return r;
}

DeformationPath relax_path(const DeformationPath& p, const IntMatrix& basis) {
  DeformationPath r;
  r.framework0 = sublattice_relax(p.framework0, basis);
  const Eigen::MatrixXd b = basis.cast<double>();
  for (std::size_t k = 0; k < p.samples.size(); ++k) {
    const PeriodicFramework relaxed = sublattice_relax(p.framework_at(k), basis);
    PathSample s{p.samples[k].tau, relaxed.positions, relaxed.lattice, std::nullopt};
    if (p.samples[k].gram_velocity) {
      s.gram_velocity = SymMatrixd::symmetrized(b.transpose() * p.samples[k].gram_velocity->dense() * b);
    }
    r.samples.push_back(std::move(s));
  }
  return r;
}

std::vector<SymMatrixd> gram_curve(const DeformationPath& p) {
  std::vector<SymMatrixd> out;
  for (const auto& s : p.samples) out.push_back(SymMatrixd::symmetrized(s.lattice.transpose() * s.lattice));
  return out;
}

std::vector<SymMatrixd> finite_difference_velocities(const std::vector<double>& taus,
                                                     const std::vector<SymMatrixd>& omegas) {
  const std::size_t n = taus.size();
  if (n < 2 || omegas.size() != n) throw InvalidInput("finite differences need at least 2 samples");
  std::vector<SymMatrixd> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lo = k == 0 ? 0 : k - 1;
    const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
    out.push_back((1.0 / (taus[hi] - taus[lo])) * (omegas[hi] - omegas[lo]));
  }
  return out;
}

std::vector<SymMatrixd> gram_velocities(const DeformationPath& p) {
  const bool analytic = !p.samples.empty() && std::all_of(p.samples.begin(), p.samples.end(), [](const PathSample& s) {
    return s.gram_velocity.has_value();
  });
  if (analytic) {
    std::vector<SymMatrixd> out;
    for (const auto& s : p.samples) out.push_back(*s.gram_velocity);
    return out;
  }
  return finite_difference_velocities(p.taus(), gram_curve(p));
}

const char* to_string(PathVerdict v) {
  switch (v) {
    case PathVerdict::Auxetic: return "Auxetic";
    case PathVerdict::BoundaryAuxetic: return "BoundaryAuxetic";
    case PathVerdict::NotAuxetic: return "NotAuxetic";
  }
  return "Unknown";
}

PsdCheck check_gram_velocities(const std::vector<double>& taus, const std::vector<SymMatrixd>& velocities,
                               double tol) {
  PsdCheck out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  bool boundary = false;
  for (std::size_t k = 0; k < velocities.size(); ++k) {
    const double lo = min_eigenvalue(velocities[k]);
    out.min_eigenvalue = std::min(out.min_eigenvalue, lo);
    const PsdStatus status = psd_status(velocities[k], tol);
    if (status == PsdStatus::NotPSD) {
      out.verdict = PathVerdict::NotAuxetic;
      out.tau_star = taus[k];
      return out;
    }
    if (status == PsdStatus::PositiveSemidefiniteBoundary) boundary = true;
  }
  out.verdict = boundary ? PathVerdict::BoundaryAuxetic : PathVerdict::Auxetic;
  return out;
}

PsdCheck check_path_psd(const DeformationPath& p, double tol) {
  require_valid_path(p);
  return check_gram_velocities(p.taus(), gram_velocities(p), tol);
}

ContractionCheck check_path_contraction(const DeformationPath& p, double tol) {
  require_valid_path(p);
  const std::size_t n = p.samples.size();
  std::vector<LinearMapd> inverses;
  inverses.reserve(n);
  for (const auto& s : p.samples) {
    Eigen::FullPivLU<LinearMapd> lu(s.lattice);
    if (!lu.isInvertible()) throw InvalidInput("check_path_contraction: singular lattice");
    inverses.push_back(lu.inverse());
  }
  ContractionCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double nrm = operator_norm(LinearMapd(p.samples[i].lattice * inverses[j]));
      out.norm = std::max(out.norm, nrm);
      if (nrm > 1.0 + tol) {
        out.auxetic = false;
        out.tau1 = p.samples[i].tau;
        out.tau2 = p.samples[j].tau;
        out.norm = nrm;
        return out;
      }
    }
  }
  return out;
}

ExpansiveCheck check_expansive(const DeformationPath& p, int radius, double tol) {
  if (radius < 1) throw InvalidInput("check_expansive: radius must be at least 1");
  require_valid_path(p);
  const std::vector<VertexPair> pairs = distance_pairs(p.framework0.dim(), p.framework0.n(), radius);
  auto distances = [&](std::size_t k) {
    const PeriodicFramework f = p.framework_at(k);
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& pr : pairs) out.push_back((f.point(pr.v, pr.gamma) - f.positions.col(pr.u)).norm());
    return out;
  };
  ExpansiveCheck out;
  std::vector<double> prev = distances(0);
  for (std::size_t k = 1; k < p.samples.size(); ++k) {
    std::vector<double> cur = distances(k);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (cur[i] < prev[i] - tol * std::max(1.0, prev[i])) {
        out.expansive = false;
        out.pair = pairs[i];
        out.tau_star = p.samples[k].tau;
        return out;
      }
    }
    prev = std::move(cur);
  }
  return out;
}

VolumeCheck check_volume(const DeformationPath& p) {
  require_valid_path(p);
  VolumeCheck out;
  double prev = std::abs(p.samples[0].lattice.determinant());
  for (std::size_t k = 1; k < p.samples.size(); ++k) {
    const double cur = std::abs(p.samples[k].lattice.determinant());
    if (cur < prev * (1.0 - 1e-10)) {
      out.non_decreasing = false;
      out.tau_star = p.samples[k].tau;
      return out;
    }
    prev = cur;
  }
  return out;
}

}  // namespace auxetica
