#include "auxetica/study3d.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <random>

namespace auxetica {

namespace {

struct Terms {
  double x;      // a33 - a13 - a23 + 1 - r^2
  double delta;  // det omega
  double w;      // 4 - a11 - a22
};

Terms terms(const StudyPoint& p) {
  const Vector5d& a = p.a;
  return {a(2) - a(3) - a(4) + 1 - p.r2, a(0) * a(1) * a(2) - a(1) * a(3) * a(3) - a(0) * a(4) * a(4),
          4 - a(0) - a(1)};
}

double det_study(const Vector5d& v) { return v(0) * v(1) * v(2) - v(1) * v(3) * v(3) - v(0) * v(4) * v(4); }

// Whether det(c + t (v - c)) vanishes for some t in (0, 1]. The cubic is
// interpolated at four points and its real roots found from the companion
// matrix.
bool segment_leaves_cone(const Vector5d& c, const Vector5d& v) {
  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = det_study(c + (i / 3.0) * (v - c));
  // Newton form -> monomial coefficients of p(t) = k0 + k1 t + k2 t^2 + k3 t^3.
  const double h = 1.0 / 3.0;
  const double d1[3] = {(y[1] - y[0]) / h, (y[2] - y[1]) / h, (y[3] - y[2]) / h};
  const double d2[2] = {(d1[1] - d1[0]) / (2 * h), (d1[2] - d1[1]) / (2 * h)};
  const double d3 = (d2[1] - d2[0]) / (3 * h);
  // p(t) = y0 + d1[0] t + d2[0] t (t - h) + d3 t (t - h)(t - 2h)
  const double k3 = d3;
  const double k2 = d2[0] - 3 * h * d3;
  const double k1 = d1[0] - h * d2[0] + 2 * h * h * d3;
  const double k0 = y[0];
  if (y[3] <= 0) return true;
  const double scale = std::max({std::abs(k0), std::abs(k1), std::abs(k2), std::abs(k3)});
  std::vector<double> roots;
  if (std::abs(k3) > 1e-14 * scale) {
    Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
    comp(1, 0) = 1;
    comp(2, 1) = 1;
    comp(0, 2) = -k0 / k3;
    comp(1, 2) = -k1 / k3;
    comp(2, 2) = -k2 / k3;
    const Eigen::Vector3cd ev = comp.eigenvalues();
    for (int i = 0; i < 3; ++i)
      if (std::abs(ev(i).imag()) <= 1e-9 * std::max(1.0, std::abs(ev(i)))) roots.push_back(ev(i).real());
  } else if (std::abs(k2) > 1e-14 * scale) {
    const double disc = k1 * k1 - 4 * k2 * k0;
    if (disc >= 0) {
      roots.push_back((-k1 + std::sqrt(disc)) / (2 * k2));
      roots.push_back((-k1 - std::sqrt(disc)) / (2 * k2));
    }
  } else if (std::abs(k1) > 0) {
    roots.push_back(-k0 / k1);
  }
  for (double t : roots)
    if (t > 0 && t <= 1) return true;
  return false;
}

}  // namespace

StudyPoint initial_study_point() {
  StudyPoint p;
  p.a << 8.0 / 5, 8.0 / 5, 8.0 / 5, 4.0 / 5, 4.0 / 5;
  return p;
}

StudyPoint study_point(const PeriodicFramework& f, double r2) {
  if (f.dim() != 3) throw DimensionError("study_point needs a 3-dimensional framework");
  const SymMatrixd g = gram(f);
  if (std::abs(g(0, 1)) > 1e-9 * g.frobenius_norm()) throw InvalidInput("study_point: a12 is not zero");
  StudyPoint p;
  p.a << g(0, 0), g(1, 1), g(2, 2), g(0, 2), g(1, 2);
  p.r2 = r2;
  return p;
}

SymMatrixd study_matrix(const Vector5d& v) {
  SymMatrixd m(3);
  m(0, 0) = v(0);
  m(1, 1) = v(1);
  m(2, 2) = v(2);
  m(0, 2) = v(3);
  m(1, 2) = v(4);
  return m;
}

ProjectivePoint5 ProjectivePoint5::canonical(const Vector5d& v) {
  const double big = v.cwiseAbs().maxCoeff();
  if (!(big > 0)) throw InvalidInput("projective point must be nonzero");
  Vector5d w = v / big;
  for (int i = 0; i < 5; ++i) {
    if (std::abs(w(i)) > 1e-12) {
      if (w(i) < 0) w = -w;
      break;
    }
  }
  return {w};
}

double projective_distance(const Vector5d& x, const Vector5d& y) {
  return (ProjectivePoint5::canonical(x).v - ProjectivePoint5::canonical(y).v).cwiseAbs().maxCoeff();
}

double quartic_f(const StudyPoint& p) {
  const Terms t = terms(p);
  return p.a(0) * p.a(1) * t.x * t.x - t.delta * t.w;
}

Vector5d quartic_gradient(const StudyPoint& p) {
  const Terms t = terms(p);
  const double a11 = p.a(0), a22 = p.a(1), a33 = p.a(2), a13 = p.a(3), a23 = p.a(4);
  Vector5d g;
  g(0) = a22 * t.x * t.x - (a22 * a33 - a23 * a23) * t.w + t.delta;
  g(1) = a11 * t.x * t.x - (a11 * a33 - a13 * a13) * t.w + t.delta;
  g(2) = 2 * a11 * a22 * t.x - a11 * a22 * t.w;
  g(3) = -2 * a11 * a22 * t.x + 2 * a22 * a13 * t.w;
  g(4) = -2 * a11 * a22 * t.x + 2 * a11 * a23 * t.w;
  return g;
}

std::array<ProjectivePoint5, 4> cayley_nodes(const StudyPoint& p) {
  const Vector5d g = quartic_gradient(p);
  const double f11 = g(0), f22 = g(1), f33 = g(2), f13 = g(3), f23 = g(4);
  const double rad13 = f13 * f13 - 4 * f11 * f33;
  const double rad23 = f23 * f23 - 4 * f22 * f33;
  if (rad13 < 0 || rad23 < 0) throw ComplexNodes("cayley_nodes: negative radicand, nodes are not real");
  const double d13 = std::sqrt(rad13), d23 = std::sqrt(rad23);
  Vector5d n1, n2, n3, n4;
  n1 << -f33 * (d13 - f13), 0, f11 * (d13 + f13), -2 * f11 * f33, 0;
  n2 << -f33 * (d13 + f13), 0, f11 * (d13 - f13), 2 * f11 * f33, 0;
  n3 << 0, -f33 * (d23 - f23), f22 * (d23 + f23), 0, -2 * f22 * f33;
  n4 << 0, -f33 * (d23 + f23), f22 * (d23 - f23), 0, 2 * f22 * f33;
  return {ProjectivePoint5::canonical(n1), ProjectivePoint5::canonical(n2), ProjectivePoint5::canonical(n3),
          ProjectivePoint5::canonical(n4)};
}

std::array<ProjectivePoint5, 4> expansive_rays(const StudyPoint& p) {
  const Vector5d g = quartic_gradient(p);
  const double f11 = g(0), f22 = g(1), f33 = g(2), f13 = g(3), f23 = g(4);
  Vector5d r1, r2, r3, r4;
  r1 << -f33, 0, f11, 0, 0;
  r2 << -f33, 0, f11 + f13, -f33, 0;
  r3 << 0, -f33, f22, 0, 0;
  r4 << 0, -f33, f22 + f23, 0, -f33;
  return {ProjectivePoint5::canonical(r1), ProjectivePoint5::canonical(r2), ProjectivePoint5::canonical(r3),
          ProjectivePoint5::canonical(r4)};
}

InclusionReport cone_inclusion_check(const StudyPoint& p, int density, int outside_samples, std::uint64_t seed) {
  if (density < 1) throw InvalidInput("cone_inclusion_check: density must be positive");
  InclusionReport report;
  const auto rays = expansive_rays(p);
  const auto nodes = cayley_nodes(p);

  report.grid_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= density; ++i)
    for (int j = 0; i + j <= density; ++j)
      for (int k = 0; i + j + k <= density; ++k) {
        const int l = density - i - j - k;
        const Vector5d v = (i * rays[0].v + j * rays[1].v + k * rays[2].v + l * rays[3].v) / density;
        const double lo = min_eigenvalue(study_matrix(v));
        ++report.grid_points;
        report.grid_min_eigenvalue = std::min(report.grid_min_eigenvalue, lo);
        if (lo < -kDefaultConeTol) throw InclusionViolation("convex combination of expansive rays is not PSD", v);
      }

  for (const auto& n : nodes) {
    const double lo = min_eigenvalue(study_matrix(n.v));
    report.node_max_abs_min_eigenvalue = std::max(report.node_max_abs_min_eigenvalue, std::abs(lo));
    if (std::abs(lo) >= kDefaultConeTol) throw InclusionViolation("node is not on the PSD boundary", n.v);
  }

  // Random directions of the gradient-orthogonal hyperplane lying outside
  // the spectrahedron, seen from the barycenter of the rays.
  const Vector5d normal = quartic_gradient(p).normalized();
  Vector5d center = Vector5d::Zero();
  for (const auto& r : rays) center += r.v;
  center /= 4;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  int attempts = 0;
  while (report.outside_samples < outside_samples) {
    if (++attempts > 1000 * std::max(1, outside_samples))
      throw Error("cone_inclusion_check: could not sample outside directions");
    Vector5d v;
    for (int i = 0; i < 5; ++i) v(i) = gauss(rng);
    v -= v.dot(normal) * normal;
    v *= center.norm() / v.norm();
    if (!segment_leaves_cone(center, v)) continue;
    // Skip directions within a hair of the boundary.
    if (!segment_leaves_cone(center, center + (1 - 1e-6) * (v - center))) continue;
    ++report.outside_samples;
    if (psd_status(study_matrix(v)) != PsdStatus::NotPSD)
      throw InclusionViolation("direction outside the spectrahedron tests PSD", v);
    ++report.outside_not_psd;
  }
  return report;
}

StudyPoint project_to_surface(const StudyPoint& p, double tol, int max_iterations) {
  StudyPoint q = p;
  for (int it = 0; it < max_iterations; ++it) {
    const double val = quartic_f(q);
    if (std::abs(val) < tol) return q;
    const Vector5d g = quartic_gradient(q);
    const double g2 = g.squaredNorm();
    if (!(g2 > 0)) break;
    q.a -= (val / g2) * g;
  }
  if (std::abs(quartic_f(q)) < tol) return q;
  throw Error("project_to_surface: Newton iteration did not converge");
}

}  // namespace auxetica
