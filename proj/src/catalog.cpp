#include "auxetica/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

namespace auxetica {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;
using std::numbers::pi;

IntVector iv(std::initializer_list<int> xs) {
  IntVector v(static_cast<int>(xs.size()));
  int i = 0;
  for (int x : xs) v(i++) = x;
  return v;
}

Matrix3d tilt(double theta) {
  Matrix3d t;
  t << std::cos(theta), 0, std::sin(theta), 0, 1, 0, -std::sin(theta), 0, std::cos(theta);
  return t;
}

Matrix3d rotation_z(double angle) {
  Matrix3d r;
  r << std::cos(angle), -std::sin(angle), 0, std::sin(angle), std::cos(angle), 0, 0, 0, 1;
  return r;
}

// Corner-sharing regular tetrahedra (edge 2 sqrt 2, inscribed in cubes of
// side 2) arranged with a k-fold screw axis along e3. Each tetrahedron is the
// prototype tilted by theta about e2 and then turned by 2 pi j / k. Corner 1 of
// tetrahedron j is corner 4 of tetrahedron j+1, and the pair (corner 2 of j,
// corner 3 of j+1) is joined by the period Q^j lambda_1. Generators: lambda_1,
// lambda_2 = Q lambda_1 (horizontal) and lambda_3 (vertical, one screw turn).
PeriodicFramework helical_tetrahedra(int k, double theta, const std::vector<IntVector>& turned_lambda1) {
  const std::array<Vector3d, 4> proto = {Vector3d(-1, 1, -1), Vector3d(1, -1, -1), Vector3d(1, 1, 1),
                                         Vector3d(-1, -1, 1)};
  const Matrix3d t = tilt(theta);
  auto corner = [&](int j, int i) -> Vector3d { return rotation_z(2 * pi * j / k) * t * proto[i]; };

  std::vector<Vector3d> centers(k + 1, Vector3d::Zero());
  for (int j = 0; j < k; ++j) centers[j + 1] = centers[j] + corner(j, 0) - corner(j + 1, 3);

  Matrix3d lattice;
  lattice.col(0) = centers[1] + corner(1, 2) - corner(0, 1);
  lattice.col(1) = rotation_z(2 * pi / k) * lattice.col(0);
  lattice.col(2) = centers[k];

  // Orbits: top corners o_j = corner 1 of tetrahedron j, side corners s_j =
  // corner 2 of tetrahedron j.
  Eigen::MatrixXd positions(3, 2 * k);
  for (int j = 0; j < k; ++j) {
    positions.col(j) = centers[j] + corner(j, 0);
    positions.col(k + j) = centers[j] + corner(j, 1);
  }

  const IntVector e3 = iv({0, 0, 1});
  std::vector<EdgeOrbit> edges;
  for (int j = 0; j < k; ++j) {
    std::array<std::pair<int, IntVector>, 4> refs;
    refs[0] = {j, IntVector::Zero(3)};
    refs[1] = {k + j, IntVector::Zero(3)};
    refs[2] = j == 0 ? std::pair<int, IntVector>{2 * k - 1, IntVector(turned_lambda1[k - 1] - e3)}
                     : std::pair<int, IntVector>{k + j - 1, turned_lambda1[j - 1]};
    refs[3] = j == 0 ? std::pair<int, IntVector>{k - 1, IntVector(-e3)}
                     : std::pair<int, IntVector>{j - 1, IntVector::Zero(3)};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        edges.push_back({refs[a].first, refs[b].first, refs[b].second - refs[a].second, 0.0});
  }
  return make_framework(lattice, positions, edges);
}

double param(const CatalogId& id, const std::string& key) {
  auto it = id.params.find(key);
  if (it != id.params.end()) return it->second;
  return default_params(id.tag).at(key);
}

void check_params(const CatalogId& id) {
  const auto defaults = default_params(id.tag);
  for (const auto& [key, value] : id.params) {
    if (!defaults.count(key)) throw InvalidInput("catalog " + to_string(id.tag) + ": unknown parameter '" + key + "'");
    if (!std::isfinite(value)) throw InvalidInput("catalog " + to_string(id.tag) + ": parameter '" + key + "' is not finite");
  }
}

double tilt_param(const CatalogId& id) {
  const double theta = param(id, "theta");
  if (!(std::abs(theta) < pi / 2)) throw InvalidInput("tilt angle theta must lie in (-pi/2, pi/2)");
  return theta;
}

PeriodicFramework honeycomb_equal_edge(double a11, double a12, double a22) {
  const double det = a11 * a22 - a12 * a12;
  if (!(a11 > 0 && a22 > 0 && det > 0)) throw InvalidInput("honeycomb: period Gram matrix must be positive definite");
  Eigen::Matrix2d lattice;
  lattice << std::sqrt(a11), a12 / std::sqrt(a11), 0, std::sqrt(det / a11);
  // Circumcenter of the period triangle (0, lambda_1, lambda_2).
  Eigen::Matrix2d rows;
  rows << lattice.col(0).transpose(), lattice.col(1).transpose();
  const Eigen::Vector2d center = rows.inverse() * Eigen::Vector2d(a11 / 2, a22 / 2);
  Eigen::MatrixXd positions(2, 2);
  positions << 0, center(0), 0, center(1);
  return make_framework(lattice, positions,
                        {{0, 1, iv({0, 0}), 0}, {0, 1, iv({-1, 0}), 0}, {0, 1, iv({0, -1}), 0}});
}

PeriodicFramework reentrant_honeycomb(const CatalogId& id) {
  Eigen::Matrix2d lattice;
  lattice << param(id, "width"), 0, 0, param(id, "height");
  Eigen::MatrixXd positions(2, 2);
  positions << 0, param(id, "x"), 0, param(id, "y");
  return make_framework(lattice, positions,
                        {{0, 1, iv({0, 0}), 0}, {0, 1, iv({-1, 0}), 0}, {0, 1, iv({0, -1}), 0}});
}

// Four pinwheel vertices in a square cell joined by seven bars: pointed at
// every vertex, non-crossing, two degrees of freedom.
PeriodicFramework missing_rib_equivalent() {
  Eigen::MatrixXd positions(2, 4);
  positions << 0.1, 0.6, 0.9, 0.4, 0.4, 0.1, 0.6, 0.9;
  return make_framework(Eigen::Matrix2d::Identity(), positions,
                        {{0, 1, iv({0, 0}), 0},
                         {0, 1, iv({1, 0}), 0},
                         {0, 2, iv({0, 0}), 0},
                         {0, 3, iv({0, 0}), 0},
                         {1, 2, iv({-1, -1}), 0},
                         {1, 3, iv({-1, -1}), 0},
                         {1, 3, iv({0, -1}), 0}});
}

// Orbit 0 (black) sits at the lattice points, orbit 1 (white) is joined to
// the listed black translates.
PeriodicFramework two_orbit_design(const Matrix3d& lattice, const Vector3d& black, const Vector3d& white,
                                   const std::vector<IntVector>& targets) {
  Eigen::MatrixXd positions(3, 2);
  positions.col(0) = black;
  positions.col(1) = white;
  std::vector<EdgeOrbit> edges;
  for (const IntVector& g : targets) edges.push_back({1, 0, g, 0.0});
  return make_framework(lattice, positions, edges);
}

PeriodicFramework pyramid3d(const CatalogId& id) {
  const double r2 = param(id, "r2");
  if (!(r2 > 0)) throw InvalidInput("Pyramid3D: r2 must be positive");
  const double a1 = std::sqrt(2.0 / 5.0);
  const Vector3d alpha(a1, a1, -1 / std::sqrt(5.0));
  const Vector3d beta(a1, a1, alpha(2) + std::sqrt(r2));
  Matrix3d lattice;
  lattice.col(0) = Vector3d(2 * alpha(0), 0, 0);
  lattice.col(1) = Vector3d(0, 2 * alpha(1), 0);
  lattice.col(2) = beta;
  return two_orbit_design(lattice, Vector3d::Zero(), alpha,
                          {iv({0, 0, 0}), iv({1, 0, 0}), iv({1, 1, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
}

std::array<Vector3d, 4> regular_tetrahedron(double circumradius) {
  const double s = circumradius / std::sqrt(3.0);
  return {Vector3d(s, s, s), Vector3d(s, -s, -s), Vector3d(-s, s, -s), Vector3d(-s, -s, s)};
}

PeriodicFramework tetra3d() {
  const auto v = regular_tetrahedron(1.0);
  Matrix3d lattice;
  for (int i = 0; i < 3; ++i) lattice.col(i) = v[i + 1] - v[0];
  return two_orbit_design(lattice, v[0], Vector3d::Zero(),
                          {iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
}

PeriodicFramework prism3d() {
  // Uniform prism (height = side) inscribed in the unit sphere.
  const double side = std::sqrt(12.0 / 7.0);
  const double rho = side / std::sqrt(3.0);
  std::array<Vector3d, 3> t;
  for (int i = 0; i < 3; ++i) t[i] = Vector3d(rho * std::cos(2 * pi * i / 3), rho * std::sin(2 * pi * i / 3), -side / 2);
  Matrix3d lattice;
  lattice.col(0) = t[1] - t[0];
  lattice.col(1) = t[2] - t[0];
  lattice.col(2) = Vector3d(0, 0, side);
  return two_orbit_design(lattice, t[0], Vector3d::Zero(),
                          {iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1})});
}

PeriodicFramework cube3d() {
  const double side = 2.0 / std::sqrt(3.0);
  std::vector<IntVector> targets;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) targets.push_back(iv({x, y, z}));
  return two_orbit_design(side * Matrix3d::Identity(), Vector3d::Constant(-side / 2), Vector3d::Zero(), targets);
}

PeriodicFramework doubled_pyramid3d() {
  // Regular square pyramid, apex at the origin; the white vertex sits halfway
  // up the axis at unit distance from the first ceiling.
  const double s = std::sqrt(0.4);
  const double h = s * std::sqrt(2.0);
  Matrix3d lattice;
  lattice.col(0) = Vector3d(s, s, h);
  lattice.col(1) = Vector3d(-s, s, h);
  lattice.col(2) = Vector3d(-s, -s, h);
  // First ceiling v1..v4 (v4 = v1 - v2 + v3), then the midpoints v_i + v_{i+1}
  // of the doubled square.
  return two_orbit_design(lattice, Vector3d::Zero(), Vector3d(0, 0, h / 2),
                          {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, -1, 1}), iv({1, 1, 0}), iv({0, 1, 1}),
                           iv({1, -1, 2}), iv({2, -1, 1})});
}

PeriodicFramework doubled_tetra3d() {
  const auto w = regular_tetrahedron(1.0);
  Matrix3d lattice;
  for (int i = 0; i < 3; ++i) lattice.col(i) = w[i + 1] - w[0];
  return two_orbit_design(lattice, Vector3d::Zero(), -w[0],
                          {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({1, 1, 0}), iv({0, 1, 1}), iv({1, 0, 1})});
}

const std::vector<IntVector>& quartz_turns() {
  static const std::vector<IntVector> turns = {iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, -1, 0})};
  return turns;
}

const std::vector<IntVector>& cristobalite_turns() {
  static const std::vector<IntVector> turns = {iv({1, 0, 0}), iv({0, 1, 0}), iv({-1, 0, 0}), iv({0, -1, 0})};
  return turns;
}

}  // namespace

std::vector<CatalogTag> all_catalog_tags() {
  return {CatalogTag::QuartzBeta,         CatalogTag::CristobaliteBeta,          CatalogTag::HoneycombEqualEdge,
          CatalogTag::ReentrantHoneycomb, CatalogTag::ReentrantHoneycombRelaxed, CatalogTag::MissingRibEquivalent,
          CatalogTag::Pyramid3D,          CatalogTag::Tetra3D,                   CatalogTag::Prism3D,
          CatalogTag::Cube3D,             CatalogTag::DoubledPyramid3D,          CatalogTag::DoubledTetra3D};
}

std::string to_string(CatalogTag tag) {
  switch (tag) {
    case CatalogTag::QuartzBeta: return "QuartzBeta";
    case CatalogTag::CristobaliteBeta: return "CristobaliteBeta";
    case CatalogTag::HoneycombEqualEdge: return "HoneycombEqualEdge";
    case CatalogTag::ReentrantHoneycomb: return "ReentrantHoneycomb";
    case CatalogTag::ReentrantHoneycombRelaxed: return "ReentrantHoneycombRelaxed";
    case CatalogTag::MissingRibEquivalent: return "MissingRibEquivalent";
    case CatalogTag::Pyramid3D: return "Pyramid3D";
    case CatalogTag::Tetra3D: return "Tetra3D";
    case CatalogTag::Prism3D: return "Prism3D";
    case CatalogTag::Cube3D: return "Cube3D";
    case CatalogTag::DoubledPyramid3D: return "DoubledPyramid3D";
    case CatalogTag::DoubledTetra3D: return "DoubledTetra3D";
  }
  return "Unknown";
}

CatalogTag parse_catalog_tag(const std::string& name) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  for (CatalogTag tag : all_catalog_tags())
    if (lower(to_string(tag)) == lower(name)) return tag;
  throw InvalidInput("unknown catalog id '" + name + "'");
}

std::map<std::string, double> default_params(CatalogTag tag) {
  switch (tag) {
    case CatalogTag::QuartzBeta:
    case CatalogTag::CristobaliteBeta: return {{"theta", 0.0}};
    case CatalogTag::HoneycombEqualEdge: return {{"a11", 1.0}, {"a12", -0.75}, {"a22", 1.0}};
    case CatalogTag::ReentrantHoneycomb:
    case CatalogTag::ReentrantHoneycombRelaxed: return {{"width", 2.0}, {"height", 2.0}, {"x", 1.0}, {"y", -0.5}};
    case CatalogTag::Pyramid3D: return {{"r2", 9.0 / 5.0}};
    default: return {};
  }
}

PeriodicFramework catalog(const CatalogId& id) {
  check_params(id);
  PeriodicFramework f;
  switch (id.tag) {
    case CatalogTag::QuartzBeta: f = helical_tetrahedra(3, tilt_param(id), quartz_turns()); break;
    case CatalogTag::CristobaliteBeta: f = helical_tetrahedra(4, tilt_param(id), cristobalite_turns()); break;
    case CatalogTag::HoneycombEqualEdge:
      f = honeycomb_equal_edge(param(id, "a11"), param(id, "a12"), param(id, "a22"));
      break;
    case CatalogTag::ReentrantHoneycomb: f = reentrant_honeycomb(id); break;
    case CatalogTag::ReentrantHoneycombRelaxed: {
      IntMatrix basis(2, 2);
      basis << 1, 0, 0, 2;
      f = sublattice_relax(reentrant_honeycomb(id), basis);
      break;
    }
    case CatalogTag::MissingRibEquivalent: f = missing_rib_equivalent(); break;
    case CatalogTag::Pyramid3D: f = pyramid3d(id); break;
    case CatalogTag::Tetra3D: f = tetra3d(); break;
    case CatalogTag::Prism3D: f = prism3d(); break;
    case CatalogTag::Cube3D: f = cube3d(); break;
    case CatalogTag::DoubledPyramid3D: f = doubled_pyramid3d(); break;
    case CatalogTag::DoubledTetra3D: f = doubled_tetra3d(); break;
  }
  require_valid(f);
  return f;
}

SymMatrixd quartz_gram(double theta) {
  const double w = 1 + std::sqrt(3.0) * std::cos(theta);
  SymMatrixd g(3);
  g(0, 0) = 4 * w * w;
  g(0, 1) = -2 * w * w;
  g(1, 1) = 4 * w * w;
  g(2, 2) = 36 * std::cos(theta) * std::cos(theta);
  return g;
}

SymMatrixd quartz_gram_derivative(double theta) {
  const double w = 1 + std::sqrt(3.0) * std::cos(theta);
  const double dw2 = -2 * w * std::sqrt(3.0) * std::sin(theta);
  SymMatrixd g(3);
  g(0, 0) = 4 * dw2;
  g(0, 1) = -2 * dw2;
  g(1, 1) = 4 * dw2;
  g(2, 2) = -72 * std::cos(theta) * std::sin(theta);
  return g;
}

SymMatrixd cristobalite_gram(double theta) {
  const double w = 1 + std::cos(theta);
  SymMatrixd g(3);
  g(0, 0) = 8 * w * w;
  g(1, 1) = 8 * w * w;
  g(2, 2) = 64 * std::cos(theta) * std::cos(theta);
  return g;
}

SymMatrixd cristobalite_gram_derivative(double theta) {
  const double w = 1 + std::cos(theta);
  SymMatrixd g(3);
  g(0, 0) = -16 * w * std::sin(theta);
  g(1, 1) = -16 * w * std::sin(theta);
  g(2, 2) = -128 * std::cos(theta) * std::sin(theta);
  return g;
}

namespace {

PathGenerator tilt_path(CatalogTag tag, double theta_from, double theta_to, SymMatrixd (*derivative)(double)) {
  PathGenerator gen;
  gen.framework0 = catalog(CatalogId{tag, {{"theta", theta_from}}});
  gen.tau_begin = 0.0;
  gen.tau_end = 1.0;
  const double rate = theta_to - theta_from;
  gen.at = [=](double tau) {
    const PeriodicFramework f = catalog(CatalogId{tag, {{"theta", theta_from + rate * tau}}});
    return PathSample{tau, f.positions, f.lattice, std::nullopt};
  };
  gen.gram_velocity = [=](double tau) { return rate * derivative(theta_from + rate * tau); };
  return gen;
}

}  // namespace

PathGenerator quartz_path(double theta_from, double theta_to) {
  return tilt_path(CatalogTag::QuartzBeta, theta_from, theta_to, &quartz_gram_derivative);
}

PathGenerator cristobalite_path(double theta_from, double theta_to) {
  return tilt_path(CatalogTag::CristobaliteBeta, theta_from, theta_to, &cristobalite_gram_derivative);
}

std::vector<EdgeOrbit> pyramid_extra_edges() {
  return {canonical({1, 0, iv({1, 0, 1}), 0}), canonical({1, 0, iv({-1, 0, 1}), 0}),
          canonical({1, 0, iv({0, 1, 1}), 0}), canonical({1, 0, iv({0, -1, 1}), 0})};
}

PeriodicFramework pyramid_mechanism(int omitted) {
  if (omitted < 0 || omitted > 3) throw InvalidInput("pyramid_mechanism: omitted bar index must be in [0, 4)");
  std::vector<EdgeOrbit> extra = pyramid_extra_edges();
  extra.erase(extra.begin() + omitted);
  return with_edges(catalog(CatalogTag::Pyramid3D), extra);
}

}  // namespace auxetica
