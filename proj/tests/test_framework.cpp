#include <gtest/gtest.h>

#include <cmath>

#include "auxetica/catalog.hpp"
#include "auxetica/framework.hpp"
#include "auxetica/tangent.hpp"
#include "support.hpp"

using namespace auxetica;
using namespace testing_support;

namespace {

IntVector iv(std::initializer_list<int> v) {
  IntVector g(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (int x : v) g(i++) = x;
  return g;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k, int index = -2) {
  for (const auto& v : vs)
    if (v.kind == k && (index == -2 || v.index == index)) return true;
  return false;
}

PeriodicFramework triangulated_square() {
  return make_framework(LinearMapd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1),
                        {{0, 0, iv({1, 0}), 0}, {0, 0, iv({0, 1}), 0}, {0, 0, iv({1, 1}), 0}});
}

}  // namespace

TEST(EdgeOrbit, CanonicalOrientation) {
  const EdgeOrbit a = canonical({1, 0, iv({2, -1}), 1.0});
  EXPECT_EQ(a.u, 0);
  EXPECT_EQ(a.v, 1);
  EXPECT_EQ(a.gamma, iv({-2, 1}));
  const EdgeOrbit b = canonical({0, 0, iv({0, -1}), 1.0});
  EXPECT_EQ(b.gamma, iv({0, 1}));
  EXPECT_TRUE(same_orbit({0, 1, iv({1, 0}), 0}, {1, 0, iv({-1, 0}), 0}));
  EXPECT_FALSE(same_orbit({0, 1, iv({1, 0}), 0}, {0, 1, iv({-1, 0}), 0}));
}

TEST(Validate, QuartzIsValid) {
  EXPECT_TRUE(validate(catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", 0.0}}})).empty());
}

TEST(Validate, DegenerateLattice) {
  PeriodicFramework f = triangulated_square();
  f.lattice.col(1) = f.lattice.col(0);
  EXPECT_TRUE(has_kind(validate(f), ViolationKind::DegenerateLattice));
}

TEST(Validate, EdgeLengthMismatchNamesTheEdge) {
  PeriodicFramework f = triangulated_square();
  f.graph.edges[2].length *= 1.1;
  const auto vs = validate(f);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::EdgeLengthMismatch);
  EXPECT_EQ(vs[0].index, 2);
  EXPECT_THROW(require_valid(f), InvalidInput);
}

TEST(Validate, OtherViolations) {
  PeriodicFramework f = triangulated_square();
  f.graph.edges.push_back({0, 0, iv({0, 0}), 1.0});
  EXPECT_TRUE(has_kind(validate(f), ViolationKind::SelfLoop, 3));
  f = triangulated_square();
  f.graph.edges.push_back({0, 0, iv({-1, 0}), 1.0});
  EXPECT_TRUE(has_kind(validate(f), ViolationKind::DuplicateEdge));
  f = triangulated_square();
  f.graph.edges[0].v = 5;
  EXPECT_TRUE(has_kind(validate(f), ViolationKind::BadVertexIndex, 0));
  f = triangulated_square();
  f.positions(0, 0) = INFINITY;
  EXPECT_TRUE(has_kind(validate(f), ViolationKind::NonFinite));
}

TEST(Dof, CatalogCounts) {
  EXPECT_EQ(dof(catalog(CatalogTag::ReentrantHoneycomb)), 2);
  EXPECT_EQ(dof(catalog(CatalogTag::ReentrantHoneycombRelaxed)), 3);
  EXPECT_EQ(dof(catalog(CatalogTag::MissingRibEquivalent)), 2);
  EXPECT_EQ(dof(catalog(CatalogTag::Pyramid3D)), 4);
}

TEST(Dof, RigidTriangulatedSquare) {
  EXPECT_EQ(dof(triangulated_square()), 0);
  EXPECT_EQ(tangent_space(triangulated_square()).basis.size(), 0u);
}

TEST(Dof, InvalidFrameworkRejected) {
  PeriodicFramework f = triangulated_square();
  f.graph.edges[0].length = 3.0;
  EXPECT_THROW(dof(f), InvalidInput);
}

TEST(Catalog, AllEntriesValidWithPositiveDefiniteGram) {
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework f = catalog(t);
    EXPECT_TRUE(validate(f).empty()) << to_string(t);
    EXPECT_EQ(psd_status(gram(f)), PsdStatus::PositiveDefinite) << to_string(t);
    EXPECT_EQ(parse_catalog_tag(to_string(t)), t);
  }
  EXPECT_THROW(parse_catalog_tag("NoSuchThing"), InvalidInput);
}

TEST(Catalog, QuartzGramAtZero) {
  const double c = std::pow(1 + std::sqrt(3.0), 2);
  Eigen::Matrix3d expected;
  expected << 4 * c, -2 * c, 0, -2 * c, 4 * c, 0, 0, 0, 36;
  const PeriodicFramework f = catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", 0.0}}});
  EXPECT_LE(max_abs(gram(f).dense() - expected), 1e-9);
  EXPECT_LE(max_abs(oracle_gram(f.lattice) - expected), 1e-9);
}

TEST(Catalog, CristobaliteGramAtZero) {
  const PeriodicFramework f = catalog(CatalogId{CatalogTag::CristobaliteBeta, {{"theta", 0.0}}});
  EXPECT_LE(max_abs(gram(f).dense() - Eigen::Matrix3d(Eigen::Vector3d(32, 32, 64).asDiagonal())), 1e-9);
}

TEST(Catalog, SilicaGramsMatchClosedFormAlongTheta) {
  for (int k = 1; k <= 100; ++k) {
    const double theta = k * (M_PI / 2) / 101;
    const PeriodicFramework q = catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", theta}}});
    const double w = 1 + std::sqrt(3.0) * std::cos(theta);
    Eigen::Matrix3d eq;
    eq << 4 * w * w, -2 * w * w, 0, -2 * w * w, 4 * w * w, 0, 0, 0, 36 * std::cos(theta) * std::cos(theta);
    EXPECT_LE(max_abs(oracle_gram(q.lattice) - eq), 1e-9) << theta;
    EXPECT_TRUE(validate(q).empty());
    const PeriodicFramework c = catalog(CatalogId{CatalogTag::CristobaliteBeta, {{"theta", theta}}});
    const double v = 1 + std::cos(theta);
    const Eigen::Matrix3d ec = Eigen::Vector3d(8 * v * v, 8 * v * v, 64 * std::cos(theta) * std::cos(theta)).asDiagonal();
    EXPECT_LE(max_abs(oracle_gram(c.lattice) - ec), 1e-9) << theta;
  }
}

TEST(Catalog, PyramidInitialGram) {
  const SymMatrixd g = gram(catalog(CatalogTag::Pyramid3D));
  EXPECT_NEAR(g(0, 0), 8.0 / 5, 1e-12);
  EXPECT_NEAR(g(1, 1), 8.0 / 5, 1e-12);
  EXPECT_NEAR(g(2, 2), 8.0 / 5, 1e-12);
  EXPECT_NEAR(g(0, 2), 4.0 / 5, 1e-12);
  EXPECT_NEAR(g(1, 2), 4.0 / 5, 1e-12);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-12);
}

TEST(Catalog, ParameterChecking) {
  EXPECT_THROW(catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", 2.0}}}), InvalidInput);
  EXPECT_THROW(catalog(CatalogId{CatalogTag::QuartzBeta, {{"bogus", 0.0}}}), InvalidInput);
  EXPECT_THROW(catalog(CatalogId{CatalogTag::QuartzBeta, {{"theta", NAN}}}), InvalidInput);
}

TEST(Gram, IdentityLattice) {
  EXPECT_EQ(gram(triangulated_square()).dense(), Eigen::MatrixXd::Identity(2, 2));
}

TEST(SublatticeRelax, ReentrantIndexTwo) {
  IntMatrix b = IntMatrix::Identity(2, 2);
  b(1, 1) = 2;
  const PeriodicFramework r = sublattice_relax(catalog(CatalogTag::ReentrantHoneycomb), b);
  EXPECT_EQ(r.n(), 4);
  EXPECT_EQ(r.m(), 6);
  EXPECT_TRUE(validate(r).empty());
}

TEST(SublatticeRelax, CubeIndexTwo) {
  IntMatrix b = IntMatrix::Identity(3, 3);
  b(0, 0) = 2;
  const PeriodicFramework c = catalog(CatalogTag::Cube3D);
  const PeriodicFramework r = sublattice_relax(c, b);
  EXPECT_EQ(r.n(), 2 * c.n());
  EXPECT_EQ(r.m(), 2 * c.m());
  EXPECT_TRUE(validate(r).empty());
}

TEST(SublatticeRelax, IdentityKeepsFramework) {
  const PeriodicFramework f = catalog(CatalogTag::MissingRibEquivalent);
  const PeriodicFramework r = sublattice_relax(f, IntMatrix::Identity(2, 2));
  EXPECT_EQ(r.n(), f.n());
  EXPECT_EQ(r.m(), f.m());
  EXPECT_LE(max_abs(r.lattice - f.lattice), 1e-15);
  EXPECT_EQ(dof(r), dof(f));
}

TEST(SublatticeRelax, SingularBasisRejected) {
  IntMatrix b(2, 2);
  b << 1, 2, 2, 4;
  EXPECT_THROW(sublattice_relax(catalog(CatalogTag::ReentrantHoneycomb), b), InvalidInput);
}

TEST(SublatticeRelax, PointSetUnchangedAndDofNeverDrops) {
  auto rng = make_rng(11);
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework f = catalog(t);
    const int d = f.dim();
    IntMatrix b = IntMatrix::Identity(d, d);
    b(rng() % d, rng() % d) += 1;
    if (b.cast<double>().determinant() == 0) b(0, 0) += 1;
    const PeriodicFramework r = sublattice_relax(f, b);
    EXPECT_GE(dof(r), dof(f)) << to_string(t);
    // Every relaxed vertex is an original vertex translated by an integer period.
    for (int v = 0; v < r.n(); ++v) {
      bool found = false;
      for (int u = 0; u < f.n() && !found; ++u) {
        const Eigen::VectorXd c = f.lattice.fullPivLu().solve(r.positions.col(v) - f.positions.col(u));
        found = (c - c.array().round().matrix()).cwiseAbs().maxCoeff() < 1e-9;
      }
      EXPECT_TRUE(found) << to_string(t) << " vertex " << v;
    }
  }
}

TEST(PairwiseDistances, SingleOrbitRadiusZero) {
  const PeriodicFramework f = make_framework(LinearMapd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1), {});
  EXPECT_TRUE(pairwise_distances(f, 0).empty());
}

TEST(PairwiseDistances, SquareLatticeRadiusOne) {
  const PeriodicFramework f = make_framework(LinearMapd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1), {});
  const auto ds = pairwise_distances(f, 1);
  ASSERT_EQ(ds.size(), 4u);
  int ones = 0, roots = 0;
  for (const auto& p : ds) {
    if (std::abs(p.distance - 1) < 1e-14) ++ones;
    if (std::abs(p.distance - std::sqrt(2.0)) < 1e-14) ++roots;
  }
  EXPECT_EQ(ones, 2);
  EXPECT_EQ(roots, 2);
}

TEST(PairwiseDistances, ReentrantCountAndOrder) {
  const auto ds = pairwise_distances(catalog(CatalogTag::ReentrantHoneycomb), 1);
  // (0,0): 4 positive periods, (0,1): 9 periods, (1,1): 4 positive periods.
  ASSERT_EQ(ds.size(), 17u);
  for (std::size_t k = 1; k < ds.size(); ++k) {
    const auto& a = ds[k - 1].pair;
    const auto& b = ds[k].pair;
    EXPECT_TRUE(a.u < b.u || (a.u == b.u && (a.v < b.v || (a.v == b.v && lex_less(a.gamma, b.gamma)))));
  }
}

TEST(ConstraintJacobian, SingleEdgeRow) {
  Eigen::MatrixXd pos(2, 2);
  pos << 0, 1, 0, 0;
  const PeriodicFramework f = make_framework(LinearMapd::Identity(2, 2), pos, {{0, 1, iv({0, 0}), 0}});
  const Eigen::MatrixXd j = constraint_jacobian(f);
  Eigen::RowVectorXd expected = Eigen::RowVectorXd::Zero(8);
  expected(0) = -2;
  expected(2) = 2;
  EXPECT_LE(max_abs(j - expected), 1e-15);
}

TEST(ConstraintJacobian, MatchesFiniteDifferences) {
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework f = catalog(t);
    const Eigen::MatrixXd j = constraint_jacobian(f);
    const Eigen::VectorXd x = configuration_vector(f);
    const double h = 1e-6;
    for (int c = 0; c < x.size(); ++c) {
      Eigen::VectorXd xp = x, xm = x;
      xp(c) += h;
      xm(c) -= h;
      const Eigen::VectorXd fd =
          (constraint_residuals(with_configuration(f, xp)) - constraint_residuals(with_configuration(f, xm))) / (2 * h);
      EXPECT_LE((fd - j.col(c)).cwiseAbs().maxCoeff(), 1e-6) << to_string(t) << " column " << c;
    }
  }
}

TEST(ConstraintJacobian, PyramidRankAndTrivialMotions) {
  const PeriodicFramework f = catalog(CatalogTag::Pyramid3D);
  const Eigen::MatrixXd j = constraint_jacobian(f);
  EXPECT_EQ(numerical_rank(j), 5);
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework g = catalog(t);
    EXPECT_LE(max_abs(constraint_jacobian(g) * trivial_motions(g)), 1e-10) << to_string(t);
  }
}

TEST(TangentSpace, CountsAndOrthonormality) {
  EXPECT_EQ(tangent_space(catalog(CatalogTag::ReentrantHoneycomb)).basis.size(), 2u);
  EXPECT_EQ(tangent_space(catalog(CatalogTag::Pyramid3D)).basis.size(), 4u);
  for (CatalogTag t : all_catalog_tags()) {
    const PeriodicFramework f = catalog(t);
    const TangentSpace ts = tangent_space(f);
    EXPECT_EQ(static_cast<int>(ts.basis.size()), dof(f)) << to_string(t);
    if (ts.basis.empty()) continue;
    const Eigen::MatrixXd b = ts.flat_basis;
    EXPECT_LE(max_abs(b.transpose() * b - Eigen::MatrixXd::Identity(b.cols(), b.cols())), 1e-10);
    EXPECT_LE(max_abs(constraint_jacobian(f) * b), 1e-9);
    EXPECT_LE(max_abs(trivial_motions(f).transpose() * b), 1e-9);
  }
}
