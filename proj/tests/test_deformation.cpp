#include <gtest/gtest.h>

#include <cmath>

#include "auxetica/catalog.hpp"
#include "auxetica/cone.hpp"
#include "auxetica/integrate.hpp"
#include "auxetica/path.hpp"
#include "auxetica/planar.hpp"
#include "auxetica/tangent.hpp"
#include "support.hpp"

using namespace auxetica;
using namespace testing_support;

namespace {

// Hand derivative of the quartz Gram matrix in theta.
Eigen::Matrix3d quartz_dgram_oracle(double theta) {
  const double w = 1 + std::sqrt(3.0) * std::cos(theta);
  const double dw2 = -2 * std::sqrt(3.0) * std::sin(theta) * w;
  Eigen::Matrix3d m;
  m << 4 * dw2, -2 * dw2, 0, -2 * dw2, 4 * dw2, 0, 0, 0, -72 * std::cos(theta) * std::sin(theta);
  return m;
}

DeformationPath linear_lattice_path(const std::function<LinearMapd(double)>& lattice, double t0, double t1, int n) {
  std::vector<double> taus;
  std::vector<LinearMapd> ls;
  for (int k = 0; k < n; ++k) {
    const double t = t0 + (t1 - t0) * k / (n - 1);
    taus.push_back(t);
    ls.push_back(lattice(t));
  }
  return lattice_path(taus, ls);
}

PeriodicFramework random_ppt(std::uint64_t seed, int n) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  const LinearMapd lattice = random_invertible(rng, 2);
  Eigen::MatrixXd pts(2, n);
  for (int v = 0; v < n; ++v) pts.col(v) = lattice * Eigen::Vector2d(uniform(rng, 0, 1), uniform(rng, 0, 1));
  return generate_ppt(lattice, pts, seed);
}

// Samples of p up to (excluding) the first one that is no longer a PPT.
DeformationPath ppt_prefix(const DeformationPath& p) {
  DeformationPath out;
  out.framework0 = p.framework0;
  for (std::size_t k = 0; k < p.samples.size(); ++k) {
    if (!is_ppt(p.framework_at(k))) break;
    out.samples.push_back(p.samples[k]);
  }
  return out;
}

bool auxetic_like(PathVerdict v) { return v != PathVerdict::NotAuxetic; }

}  // namespace

TEST(GramDifferential, ZeroLatticeVelocity) {
  const PeriodicFramework f = catalog(CatalogTag::Pyramid3D);
  TangentVector t{Eigen::MatrixXd::Ones(3, f.n()), LinearMapd::Zero(3, 3)};
  EXPECT_LE(max_abs(gram_differential(f, t).dense()), 0.0);
}

TEST(GramDifferential, IdentityVelocityOnIdentityLattice) {
  const PeriodicFramework f = make_framework(LinearMapd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1), {});
  TangentVector t{Eigen::MatrixXd::Zero(2, 1), LinearMapd::Identity(2, 2)};
  EXPECT_LE(max_abs(gram_differential(f, t).dense() - 2 * Eigen::MatrixXd::Identity(2, 2)), 1e-15);
}

TEST(GramDifferential, QuartzDecreasingTiltMatchesClosedForm) {
  const double theta = M_PI / 4, h = 1e-6;
  const auto at = [](double th) { return catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", th}}}); };
  const PeriodicFramework f = at(theta), fp = at(theta + h), fm = at(theta - h);
  // theta decreasing: velocity is minus the theta derivative.
  TangentVector t{-(fp.positions - fm.positions) / (2 * h), -(fp.lattice - fm.lattice) / (2 * h)};
  EXPECT_LE(max_abs(gram_differential(f, t).dense() + quartz_dgram_oracle(theta)), 1e-7);
  EXPECT_LE(max_abs(quartz_gram_derivative(theta).dense() - quartz_dgram_oracle(theta)), 1e-12);
}

TEST(GramDifferential, MatchesFiniteDifferencesOfGram) {
  for (CatalogTag tag : all_catalog_tags()) {
    const PeriodicFramework f = catalog(tag);
    const TangentSpace ts = tangent_space(f);
    const Eigen::VectorXd x = configuration_vector(f);
    for (std::size_t i = 0; i < ts.basis.size(); ++i) {
      const double h = 1e-6;
      const Eigen::VectorXd dx = ts.flat_basis.col(static_cast<Eigen::Index>(i));
      const Eigen::MatrixXd fd =
          (gram(with_configuration(f, x + h * dx)).dense() - gram(with_configuration(f, x - h * dx)).dense()) / (2 * h);
      EXPECT_LE(max_abs(fd - gram_differential(f, ts.basis[i]).dense()), 1e-5) << to_string(tag);
    }
  }
}

TEST(CheckPathPsd, QuartzForwardReversedConstant) {
  const DeformationPath q = sample_path(quartz_path(M_PI / 3, 0.05), 200);
  EXPECT_EQ(check_path_psd(q).verdict, PathVerdict::Auxetic);
  const PsdCheck r = check_path_psd(reversed(q));
  EXPECT_EQ(r.verdict, PathVerdict::NotAuxetic);
  const DeformationPath c = linear_lattice_path([](double) { return LinearMapd::Identity(2, 2); }, 0, 1, 10);
  EXPECT_EQ(check_path_psd(c).verdict, PathVerdict::BoundaryAuxetic);
}

TEST(CheckPathPsd, InvalidPathRejected) {
  DeformationPath q = sample_path(quartz_path(M_PI / 3, 0.05), 20);
  q.samples[3].tau = q.samples[2].tau;
  EXPECT_THROW(check_path_psd(q), InvalidInput);
  q = sample_path(quartz_path(M_PI / 3, 0.05), 20);
  q.samples[5].lattice *= 1.01;
  EXPECT_THROW(check_path_psd(q), InvalidInput);
}

TEST(CheckPathContraction, Examples) {
  EXPECT_TRUE(check_path_contraction(sample_path(cristobalite_path(M_PI / 3, 0.05), 200)).auxetic);
  const auto stretch = linear_lattice_path(
      [](double t) { return LinearMapd(Eigen::Vector2d(1 + t, 1 - t).asDiagonal()); }, 0, 0.5, 20);
  EXPECT_FALSE(check_path_contraction(stretch).auxetic);
  const LinearMapd l0 = (LinearMapd(2, 2) << 1, 0.3, 0, 1.2).finished();
  const auto rot = linear_lattice_path([&](double t) { return LinearMapd(rotation2(t) * l0); }, 0, 2, 30);
  EXPECT_TRUE(check_path_contraction(rot).auxetic);
}

TEST(CheckVolume, Examples) {
  EXPECT_TRUE(check_volume(sample_path(quartz_path(M_PI / 3, 0.05), 200)).non_decreasing);
  const auto shrink = linear_lattice_path([](double t) { return LinearMapd((1 - t) * LinearMapd::Identity(2, 2)); }, 0,
                                          0.5, 10);
  EXPECT_FALSE(check_volume(shrink).non_decreasing);
  const auto shear = linear_lattice_path([](double t) { return (LinearMapd(2, 2) << 1, t, 0, 1).finished(); }, 0, 1, 20);
  EXPECT_TRUE(check_volume(shear).non_decreasing);
  EXPECT_EQ(check_path_psd(shear).verdict, PathVerdict::NotAuxetic);
}

TEST(CheckExpansive, ConstantPath) {
  const PeriodicFramework f = catalog(CatalogTag::ReentrantHoneycomb);
  DeformationPath p;
  p.framework0 = f;
  p.samples = {{0.0, f.positions, f.lattice, std::nullopt}, {1.0, f.positions, f.lattice, std::nullopt}};
  EXPECT_TRUE(check_expansive(p, 2).expansive);
  EXPECT_THROW(check_expansive(p, 0), InvalidInput);
}

TEST(CheckExpansive, PptTrajectoryAndReverse) {
  const PeriodicFramework f = random_ppt(base_seed() + 3, 3);
  IntegrateOptions opts;
  opts.steps = 20;
  const DeformationPath p = ppt_prefix(integrate_trajectory(f, DirectionSelector::kernel_one_dof(), opts));
  ASSERT_GE(p.samples.size(), 2u);
  EXPECT_TRUE(check_expansive(p, 2).expansive);
  EXPECT_FALSE(check_expansive(reversed(p), 2).expansive);
}

TEST(PsdContractionEquivalence, PsdAndContractionAgreeOnCatalogPaths) {
  std::vector<DeformationPath> paths = {
      sample_path(quartz_path(M_PI / 3, 0.05), 60), sample_path(cristobalite_path(M_PI / 3, 0.05), 60),
      reversed(sample_path(quartz_path(M_PI / 3, 0.05), 60)), reversed(sample_path(cristobalite_path(1.2, 0.1), 60))};
  IntegrateOptions opts;
  opts.steps = 15;
  paths.push_back(integrate_trajectory(catalog(CatalogTag::Pyramid3D), DirectionSelector::auxetic_witness(), opts));
  for (const auto& p : paths) {
    EXPECT_EQ(auxetic_like(check_path_psd(p).verdict), check_path_contraction(p).auxetic);
  }
}

TEST(PsdContractionEquivalence, PsdAndContractionAgreeOnRandomLatticePaths) {
  auto rng = make_rng(21);
  int auxetic = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 2;
    // omega(t) = w0 + t P + t^2 Q with Q PSD; P positive definite or clearly indefinite.
    const SymMatrixd w0 = random_psd(rng, d, d) + SymMatrixd::identity(d);
    const bool want = trial % 2 == 0;
    SymMatrixd p = random_psd(rng, d, d);
    p = p * (1 / p.frobenius_norm()) + SymMatrixd::identity(d) * 0.2;
    if (!want) p = p - SymMatrixd::identity(d) * (oracle_eigenvalues(p).sum() / d + 0.3);
    const SymMatrixd q = random_psd(rng, d, 1) * 0.1;
    const Eigen::Vector3d axis = random_matrix(rng, 3, 1).col(0).normalized();
    const double spin = uniform(rng, -2, 2);
    auto lattice = [&](double t) {
      const SymMatrixd w = w0 + p * t + q * (t * t);
      const Eigen::MatrixXd rot =
          d == 2 ? rotation2(spin * t) : Eigen::MatrixXd(Eigen::AngleAxisd(spin * t, axis).toRotationMatrix());
      return LinearMapd(rot * psd_sqrt(w).dense());
    };
    const DeformationPath path = linear_lattice_path(lattice, 0.0, 0.3, 40);
    const bool psd = auxetic_like(check_path_psd(path).verdict);
    EXPECT_EQ(psd, check_path_contraction(path).auxetic) << "trial " << trial;
    EXPECT_EQ(psd, want) << "trial " << trial;
    auxetic += psd;
  }
  EXPECT_EQ(auxetic, 25);
}

TEST(SublatticeStability, QuartzPathStaysAuxetic) {
  const DeformationPath q = sample_path(quartz_path(M_PI / 3, 0.05), 40);
  IntMatrix b = IntMatrix::Identity(3, 3);
  b(0, 0) = 2;
  const DeformationPath r = relax_path(q, b);
  EXPECT_EQ(check_path_psd(r).verdict, PathVerdict::Auxetic);
  EXPECT_TRUE(check_path_contraction(r).auxetic);
}

TEST(AuxeticCone, PyramidStrictInterior) {
  const ConeReport r = auxetic_cone(catalog(CatalogTag::Pyramid3D));
  EXPECT_EQ(r.verdict, ConeVerdict::StrictInterior);
  ASSERT_TRUE(r.witness && r.witness_gram_velocity);
  EXPECT_GT(oracle_min_eig(*r.witness_gram_velocity), 1e-9);
}

TEST(AuxeticCone, HoneycombAcuteAndObtuse) {
  const auto hc = [](double a12) {
    return catalog(CatalogId{CatalogTag::HoneycombEqualEdge, {{"a11", 1.0}, {"a12", a12}, {"a22", 1.0}}});
  };
  EXPECT_EQ(auxetic_cone(hc(0.5)).verdict, ConeVerdict::TrivialOnly);
  EXPECT_NE(auxetic_cone(hc(-0.75)).verdict, ConeVerdict::TrivialOnly);
}

TEST(AuxeticCone, WitnessReverifiedAcrossCatalog) {
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework f = catalog(t);
    ConeReport r;
    try {
      r = auxetic_cone(f);
    } catch (const Undecided&) {
      ADD_FAILURE() << "undecided on " << to_string(t);
      continue;
    }
    EXPECT_EQ(r.witness.has_value(), r.verdict != ConeVerdict::TrivialOnly) << to_string(t);
    if (!r.witness) continue;
    const SymMatrixd g = gram_differential(f, *r.witness);
    EXPECT_LE(max_abs(g.dense() - r.witness_gram_velocity->dense()), 1e-9);
    EXPECT_NE(psd_status(g), PsdStatus::NotPSD) << to_string(t);
    EXPECT_LE(max_abs(constraint_jacobian(f) * r.witness->flat()), 1e-8);
  }
}

TEST(AuxeticCone, DeterministicForFixedSeed) {
  const PeriodicFramework f = catalog(CatalogTag::Pyramid3D);
  ConeOptions o;
  o.seed = 99;
  const ConeReport a = auxetic_cone(f, o), b = auxetic_cone(f, o);
  EXPECT_EQ(a.primal_value, b.primal_value);
  EXPECT_EQ(a.witness->flat(), b.witness->flat());
}

TEST(AuxeticCone, ExtremalRaysMustBeAuxetic) {
  const PeriodicFramework f = catalog(CatalogTag::Pyramid3D);
  const TangentSpace ts = tangent_space(f);
  ConeOptions o;
  TangentVector bad = ts.basis[0];
  if (psd_status(gram_differential(f, bad)) != PsdStatus::NotPSD) {
    bad.vertex_vel = -bad.vertex_vel;
    bad.lattice_vel = -bad.lattice_vel;
  }
  o.extremal_rays = {bad};
  if (psd_status(gram_differential(f, bad)) == PsdStatus::NotPSD) EXPECT_THROW(auxetic_cone(f, o), InvalidInput);
}

TEST(Integrate, PyramidWitnessPathIsAuxetic) {
  const DeformationPath p = integrate_trajectory(catalog(CatalogTag::Pyramid3D), DirectionSelector::auxetic_witness());
  EXPECT_EQ(p.samples.size(), 51u);
  EXPECT_TRUE(validate_path(p, 1e-8).empty());
  EXPECT_EQ(check_path_psd(p).verdict, PathVerdict::Auxetic);
  EXPECT_TRUE(check_volume(p).non_decreasing);
}

TEST(Integrate, RigidFrameworkHasNoAuxeticDirection) {
  const PeriodicFramework f = make_framework(
      LinearMapd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1),
      {{0, 0, (IntVector(2) << 1, 0).finished(), 0}, {0, 0, (IntVector(2) << 0, 1).finished(), 0},
       {0, 0, (IntVector(2) << 1, 1).finished(), 0}});
  EXPECT_THROW(integrate_trajectory(f, DirectionSelector::auxetic_witness()), NoAuxeticDirection);
}

TEST(Integrate, TrivialOnlyConeHasNoAuxeticDirection) {
  const PeriodicFramework f = catalog(CatalogTag::Tetra3D);
  EXPECT_THROW(integrate_trajectory(f, DirectionSelector::auxetic_witness()), NoAuxeticDirection);
}

TEST(Integrate, KernelOneDofRequiresOneDof) {
  EXPECT_THROW(integrate_trajectory(catalog(CatalogTag::ReentrantHoneycomb), DirectionSelector::kernel_one_dof()),
               InvalidInput);
}

TEST(Integrate, ConvexCombinationOfPyramidRays) {
  std::vector<std::vector<EdgeOrbit>> rays;
  const auto extra = pyramid_extra_edges();
  for (int omit = 0; omit < 4; ++omit) {
    std::vector<EdgeOrbit> r = extra;
    r.erase(r.begin() + omit);
    rays.push_back(r);
  }
  IntegrateOptions opts;
  opts.steps = 20;
  const DeformationPath p = integrate_trajectory(
      catalog(CatalogTag::Pyramid3D), DirectionSelector::convex_combination(rays, {0.25, 0.25, 0.25, 0.25}), opts);
  EXPECT_TRUE(validate_path(p, 1e-8).empty());
  EXPECT_TRUE(check_expansive(p, 2).expansive);
  EXPECT_NE(check_path_psd(p).verdict, PathVerdict::NotAuxetic);
  EXPECT_THROW(integrate_trajectory(catalog(CatalogTag::Pyramid3D), DirectionSelector::convex_combination(rays, {1.0})),
               InvalidInput);
}

TEST(Integrate, ProjectionRestoresConstraints) {
  const PeriodicFramework f = catalog(CatalogTag::Pyramid3D);
  auto rng = make_rng(31);
  const Eigen::VectorXd x = configuration_vector(f) + 1e-3 * random_matrix(rng, configuration_vector(f).size(), 1);
  const PeriodicFramework g = project_to_constraints(with_configuration(f, x), 0.0);
  EXPECT_TRUE(validate(g, 1e-10).empty());
}

TEST(ExpansiveImpliesAuxetic, GeneratedPptTrajectories) {
  int checked = 0;
  for (int k = 0; k < 10; ++k) {
    const PeriodicFramework f = random_ppt(base_seed() + 100 + k, 2 + k % 3);
    IntegrateOptions opts;
    opts.steps = 15;
    const DeformationPath p = ppt_prefix(integrate_trajectory(f, DirectionSelector::kernel_one_dof(), opts));
    if (p.samples.size() < 2) continue;
    ++checked;
    const bool expansive = check_expansive(p, 2).expansive;
    EXPECT_TRUE(expansive);
    const PathVerdict v = check_path_psd(p).verdict;
    if (expansive) EXPECT_TRUE(auxetic_like(v));
    if (v == PathVerdict::Auxetic) EXPECT_TRUE(check_volume(p).non_decreasing);
  }
  EXPECT_GE(checked, 7);
}
