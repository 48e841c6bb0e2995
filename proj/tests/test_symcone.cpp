#include <gtest/gtest.h>

#include "auxetica/symcone.hpp"
#include "support.hpp"

using namespace auxetica;
using namespace testing_support;

namespace {

SymMatrixd sym2(double a, double b, double c) {
  SymMatrixd m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 1) = c;
  return m;
}

SymMatrixd diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) d(i++) = x;
  return SymMatrixd::diagonal(d);
}

}  // namespace

TEST(SymMatrix, StorageIsSymmetricByConstruction) {
  SymMatrixd m(3);
  m(2, 0) = 5.0;
  EXPECT_EQ(m(0, 2), 5.0);
  EXPECT_EQ(m.upper_entries().size(), 6u);
  EXPECT_THROW(SymMatrixd(0), DimensionError);
  EXPECT_THROW(SymMatrixd(9), DimensionError);
}

TEST(EigSym, Identity3) {
  const Eigen::VectorXd e = eig_sym(SymMatrixd::identity(3));
  EXPECT_NEAR((e - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff(), 0.0, 1e-14);
}

TEST(EigSym, DiagonalAscending) {
  const Eigen::VectorXd e = eig_sym(diag({1, -1}));
  EXPECT_DOUBLE_EQ(e(0), -1.0);
  EXPECT_DOUBLE_EQ(e(1), 1.0);
}

TEST(EigSym, CharacteristicPolynomialExample) {
  const Eigen::VectorXd e = eig_sym(sym2(1, 2, 1));
  EXPECT_NEAR(e(0), -1.0, 1e-13);
  EXPECT_NEAR(e(1), 3.0, 1e-13);
}

TEST(EigSym, RejectsNonFinite) {
  SymMatrixd m = SymMatrixd::identity(2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(eig_sym(m), InvalidInput);
}

TEST(EigSym, MatchesOracleOnRandomMatrices) {
  auto rng = make_rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 8;
    const SymMatrixd m = random_sym(rng, d, 3.0);
    const Eigen::VectorXd mine = eig_sym(m);
    const Eigen::VectorXd ref = oracle_eigenvalues(m);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    EXPECT_LE((mine - ref).cwiseAbs().maxCoeff(), 1e-11 * scale) << "d=" << d;
    EXPECT_NEAR(mine.sum(), m.trace(), 1e-10 * scale);
  }
}

TEST(EigSym, EigenvectorsDiagonalize) {
  auto rng = make_rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrixd m = random_sym(rng, 3);
    const auto e = eig_sym_vectors(m);
    const Eigen::MatrixXd recon = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LE(max_abs(recon - m.dense()), 1e-12);
  }
}

TEST(PsdStatus, Examples) {
  EXPECT_EQ(psd_status(SymMatrixd::identity(2), 1e-9), PsdStatus::PositiveDefinite);
  EXPECT_EQ(psd_status(sym2(1, 1, 1), 1e-9), PsdStatus::PositiveSemidefiniteBoundary);
  EXPECT_EQ(psd_status(diag({1, -1}), 1e-9), PsdStatus::NotPSD);
  EXPECT_EQ(psd_status(SymMatrixd(3)), PsdStatus::PositiveSemidefiniteBoundary);
  EXPECT_THROW(psd_status(SymMatrixd::identity(2), -1.0), InvalidInput);
}

TEST(PsdStatus, PositiveDefiniteImpliesSylvesterMinors) {
  auto rng = make_rng(3);
  int pd = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 1 + trial % 4;
    SymMatrixd m = random_sym(rng, d);
    m += SymMatrixd::identity(d) * uniform(rng, 0.0, 2.5);
    const bool sylvester = oracle_sylvester_pd(m.dense());
    if (psd_status(m) == PsdStatus::PositiveDefinite) {
      ++pd;
      EXPECT_TRUE(sylvester);
    }
    if (oracle_min_eig(m) > 1e-6) EXPECT_EQ(psd_status(m), PsdStatus::PositiveDefinite);
  }
  EXPECT_GT(pd, 100);
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(LinearMapd::Identity(3, 3)), 1.0, 1e-14);
  EXPECT_NEAR(operator_norm(Eigen::Matrix2d(Eigen::Vector2d(0.5, 0.25).asDiagonal())), 0.5, 1e-14);
  for (double a : {0.1, 1.0, 2.5, -3.0}) EXPECT_NEAR(operator_norm(rotation2(a)), 1.0, 1e-13);
}

TEST(OperatorNorm, MatchesSvdOracleAndBoundsDeterminant) {
  auto rng = make_rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + trial % 5;
    const Eigen::MatrixXd t = random_matrix(rng, d, d);
    const double ref = oracle_operator_norm(t);
    EXPECT_NEAR(operator_norm(t), ref, 1e-10 * std::max(1.0, ref));
    EXPECT_GE(operator_norm(t) * (1 + 1e-12), std::pow(std::abs(t.determinant()), 1.0 / d));
  }
}

TEST(IsContraction, Examples) {
  EXPECT_TRUE(is_contraction(LinearMapd::Identity(2, 2), 0.0));
  EXPECT_FALSE(is_contraction(Eigen::Matrix2d(Eigen::Vector2d(2, 1).asDiagonal()), 1e-9));
  EXPECT_THROW(is_contraction(LinearMapd::Identity(2, 2), -1.0), InvalidInput);
}

TEST(IsContraction, UnitBallCharacterization) {
  auto rng = make_rng(5);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 2;
    const Eigen::MatrixXd t = random_matrix(rng, d, d, 0.45);
    const SymMatrixd defect = SymMatrixd::symmetrized(Eigen::MatrixXd::Identity(d, d) - t.transpose() * t);
    const double lo = oracle_min_eig(defect);
    if (std::abs(lo) < 1e-7) continue;
    const bool c = is_contraction(t, 1e-12);
    EXPECT_EQ(c, lo > 0);
    (c ? yes : no)++;
  }
  EXPECT_GT(yes, 50);
  EXPECT_GT(no, 50);
}

TEST(PsdSqrt, Examples) {
  EXPECT_LE(max_abs(psd_sqrt(SymMatrixd::identity(3)).dense() - Eigen::MatrixXd::Identity(3, 3)), 1e-14);
  EXPECT_LE(max_abs(psd_sqrt(diag({4, 9})).dense() - Eigen::Matrix2d(Eigen::Vector2d(2, 3).asDiagonal())), 1e-14);
  // Spectral decomposition: eigenvalues 1 on (1,-1)/sqrt2 and 3 on (1,1)/sqrt2.
  Eigen::Matrix2d q;
  q << 1, 1, -1, 1;
  q /= std::sqrt(2.0);
  const Eigen::Matrix2d expected = q * Eigen::Vector2d(1.0, std::sqrt(3.0)).asDiagonal() * q.transpose();
  EXPECT_LE(max_abs(psd_sqrt(sym2(2, 1, 2)).dense() - expected), 1e-13);
  EXPECT_THROW(psd_sqrt(diag({1, -1})), DomainError);
}

TEST(PsdSqrt, SquaresBackOnRandomPsd) {
  auto rng = make_rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 2;
    const SymMatrixd m = random_psd(rng, d, 1 + trial % d);
    const SymMatrixd r = psd_sqrt(m);
    EXPECT_NE(psd_status(r), PsdStatus::NotPSD);
    const Eigen::MatrixXd rr = r.dense() * r.dense();
    EXPECT_LE((rr - m.dense()).norm(), 1e-9 * std::max(1.0, m.dense().norm()));
  }
}

TEST(Minkowski, Examples) {
  EXPECT_EQ(minkowski_classify(SymMatrixd::identity(2)), MinkowskiClass::FutureTimelike);
  EXPECT_EQ(minkowski_classify(diag({1, -1})), MinkowskiClass::Spacelike);
  EXPECT_EQ(minkowski_classify(sym2(1, 1, 1)), MinkowskiClass::Lightlike);
  EXPECT_EQ(minkowski_classify(diag({-1, -2})), MinkowskiClass::PastTimelike);
  EXPECT_EQ(minkowski_classify(SymMatrixd(2)), MinkowskiClass::Zero);
  EXPECT_THROW(minkowski_classify(SymMatrixd::identity(3)), DimensionError);
}

TEST(Minkowski, FutureTimelikeIsPositiveDefinite) {
  auto rng = make_rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const SymMatrixd m = random_sym(rng, 2);
    if (std::abs(oracle_min_eig(m)) < 1e-8) continue;
    EXPECT_EQ(minkowski_classify(m) == MinkowskiClass::FutureTimelike,
              psd_status(m) == PsdStatus::PositiveDefinite);
  }
}

TEST(IsometricVector, PreservesTraceInnerProduct) {
  auto rng = make_rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 4;
    const SymMatrixd a = random_sym(rng, d), b = random_sym(rng, d);
    const double tr = (a.dense() * b.dense()).trace();
    EXPECT_NEAR(to_isometric_vector(a).dot(to_isometric_vector(b)), tr, 1e-12 * std::max(1.0, std::abs(tr)));
    EXPECT_EQ(from_isometric_vector(d, to_isometric_vector(a)).dense().isApprox(a.dense(), 1e-14), true);
  }
}
