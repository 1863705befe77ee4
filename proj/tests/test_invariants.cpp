#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>

#include "chen/invariants.hpp"
#include "test_support.hpp"

using namespace chen;
using chen::testing::random_rotation;
using chen::testing::random_symmetric_cubic;
using chen::testing::uniform;

namespace {

constexpr Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};

class InvariantsProperty : public ::testing::Test {
protected:
    std::mt19937_64 rng{314159};
};

// Ric(i, j) = sum_k R(i, k, k, j); in three dimensions K(u-perp) = tau - Ric(u, u).
Eigen::Matrix3d ricci(const CurvatureTensor& R) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m(i, j) += R(i, k, k, j);
    return m;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

TEST(CubicTensor, FromRawSymmetrisesAndRecordsDeviation) {
    CubicTensor::Components raw{};
    raw[0][0][1] = 1.0;
    raw[0][1][0] = 1.0;
    raw[1][0][0] = 1.3;
    const auto C = CubicTensor::from_raw(raw);
    EXPECT_NEAR(C(0, 0, 1), 3.3 / 3.0, 1e-15);
    EXPECT_NEAR(C(1, 0, 0), C(0, 1, 0), 0.0);
    EXPECT_NEAR(C.symmetry_residual(), 1.3 - 1.1, 1e-14);
}

TEST(MeanCurvature, Examples) {
    EXPECT_EQ(mean_curvature_sq(CubicTensor{}), 0.0);
    const double lam = 0.7;
    EXPECT_NEAR(mean_curvature_sq(CubicTensor::adapted_structure(lam, 0.3, -0.2)), 4 * lam * lam, 1e-14);
}

TEST_F(InvariantsProperty, MeanCurvatureMatchesBruteForce) {
    for (int n = 0; n < 100; ++n) {
        const auto C = random_symmetric_cubic(rng);
        double total = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double tr = C(0, 0, k) + C(1, 1, k) + C(2, 2, k);
            total += tr * tr;
        }
        EXPECT_NEAR(mean_curvature_sq(C), total / 9.0, 1e-13);
    }
}

TEST(CurvatureTensor, TotallyGeodesic) {
    const auto R = curvature_tensor(CubicTensor{});
    EXPECT_EQ(R(0, 1, 1, 0), 1.0);
    EXPECT_EQ(scalar_tau(R), 3.0);
    std::mt19937_64 rng(3);
    for (int n = 0; n < 20; ++n) {
        const Mat3 Q = random_rotation(rng);
        EXPECT_NEAR(sectional_curvature(R, Q[0], Q[1]), 1.0, 1e-13);
    }
    const auto inf = inf_sectional(R);
    EXPECT_NEAR(inf.inf_K, 1.0, 1e-13);
}

TEST(CurvatureTensor, AdaptedClosedForms) {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 50; ++n) {
        const double lam = uniform(rng, -2, 2), a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
        const auto R = curvature_tensor(CubicTensor::adapted_structure(lam, a, b));
        const double ab = a * a + b * b;
        EXPECT_NEAR(sectional_curvature(R, e2, e3), 1 + lam * lam - 2 * ab, 1e-12);
        EXPECT_NEAR(sectional_curvature(R, e1, e2), 1 + 3 * lam * lam, 1e-12);
        EXPECT_NEAR(sectional_curvature(R, e1, e3), 1 + 3 * lam * lam, 1e-12);
        EXPECT_NEAR(scalar_tau(R), 3 + 7 * lam * lam - 2 * ab, 1e-12);
    }
}

TEST_F(InvariantsProperty, RiemannSymmetries) {
    for (int n = 0; n < 100; ++n) {
        const auto R = curvature_tensor(random_symmetric_cubic(rng, 2.0));
        EXPECT_LE(R.symmetry_defect(), 1e-12);
    }
}

TEST_F(InvariantsProperty, SectionalInvariantUnderPlaneRotation) {
    for (int n = 0; n < 50; ++n) {
        const auto R = curvature_tensor(random_symmetric_cubic(rng));
        const Mat3 Q = random_rotation(rng);
        const double phi = uniform(rng, 0, 6.28);
        Vec3 X{}, Y{};
        for (int k = 0; k < 3; ++k) {
            X[k] = std::cos(phi) * Q[0][k] + std::sin(phi) * Q[1][k];
            Y[k] = -std::sin(phi) * Q[0][k] + std::cos(phi) * Q[1][k];
        }
        EXPECT_NEAR(sectional_curvature(R, X, Y), sectional_curvature(R, Q[0], Q[1]), 1e-12);
    }
}

TEST(SectionalCurvature, NonOrthonormalPlaneIsUsageError) {
    const auto R = curvature_tensor(CubicTensor{});
    try {
        sectional_curvature(R, {1, 0, 0}, {1, 1, 0});
        FAIL() << "expected usage error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Usage);
    }
}

TEST_F(InvariantsProperty, TauFrameInvariance) {
    for (int n = 0; n < 100; ++n) {
        const auto C = random_symmetric_cubic(rng);
        const auto Cr = C.rotated(random_rotation(rng));
        EXPECT_NEAR(scalar_tau(curvature_tensor(C)), scalar_tau(curvature_tensor(Cr)), 1e-10);
    }
}

TEST(InfSectional, AdaptedExample) {
    const auto R = curvature_tensor(CubicTensor::adapted_structure(0.5, 0.0, 0.0));
    const auto inf = inf_sectional(R);
    EXPECT_NEAR(inf.inf_K, 1.25, 1e-12);
    EXPECT_NEAR(std::abs(inf.normal[0]), 1.0, 1e-8);
}

TEST_F(InvariantsProperty, InfSectionalMatchesRicciOracle) {
    for (int n = 0; n < 100; ++n) {
        const auto R = curvature_tensor(random_symmetric_cubic(rng));
        const double tau = scalar_tau(R);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(ricci(R));
        const double oracle = tau - es.eigenvalues()(2);
        const auto inf = inf_sectional(R);
        EXPECT_NEAR(inf.inf_K, oracle, 1e-9);
        EXPECT_LE(inf.inf_K, inf.grid_value);
        // Grid spacing is about 0.05 rad, so the grid deficit is bounded by a
        // multiple of the Ricci eigenvalue spread.
        const double spread = es.eigenvalues()(2) - es.eigenvalues()(0);
        EXPECT_LE(inf.grid_value - inf.inf_K, 2.5e-3 * spread);
        const double gap = es.eigenvalues()(2) - es.eigenvalues()(1);
        if (gap > 1e-2) {
            const Eigen::Vector3d top = es.eigenvectors().col(2);
            const double align = std::abs(top(0) * inf.normal[0] + top(1) * inf.normal[1] +
                                          top(2) * inf.normal[2]);
            EXPECT_GT(align, 1 - 1e-6);
        }
    }
}

TEST_F(InvariantsProperty, GridCloseToRefinedOnModerateCurvature) {
    for (int n = 0; n < 200; ++n) {
        const auto inf = inf_sectional(curvature_tensor(random_symmetric_cubic(rng, 0.3)));
        EXPECT_LE(inf.inf_K, inf.grid_value);
        EXPECT_LT(inf.grid_value - inf.inf_K, 1e-3);
        EXPECT_LT(inf.gradient_norm, 1e-8);
    }
}

TEST(ChenRhs, ConstantTermAndCoefficients) {
    EXPECT_EQ(chen_rhs(0.0, ChenVersion::Improved), 2.0);
    EXPECT_EQ(chen_rhs(0.0, ChenVersion::Classical), 2.0);
    const double lam = 0.6;
    EXPECT_NEAR(chen_rhs(4 * lam * lam, ChenVersion::Improved), 2 + 6 * lam * lam, 1e-14);
    EXPECT_NEAR(chen_rhs(4 * lam * lam, ChenVersion::Classical) - chen_rhs(4 * lam * lam, ChenVersion::Improved),
                3 * lam * lam, 1e-14);
}

TEST_F(InvariantsProperty, EqualityIdentityOnAdaptedStructure) {
    for (int n = 0; n < 1000; ++n) {
        const double lam = uniform(rng, -3, 3), a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
        const auto C = CubicTensor::adapted_structure(lam, a, b);
        const auto R = curvature_tensor(C);
        const double value = scalar_tau(R) - sectional_curvature(R, e2, e3) - 1.5 * mean_curvature_sq(C);
        EXPECT_NEAR(value, 2.0, 1e-10);
    }
}

TEST(AdaptedFrame, FixedPoint) {
    const auto C = CubicTensor::adapted_structure(0.8, 0.4, -0.1);
    const auto f = adapted_frame(C);
    ASSERT_FALSE(f.minimal);
    EXPECT_GT(std::abs(dot(f.rows[0], e1)), 1 - 1e-8);
    EXPECT_NEAR(f.lambda1 / f.lambda2, 4.0, 1e-12);
    EXPECT_NEAR(f.H_norm, 1.6, 1e-12);
}

TEST_F(InvariantsProperty, AdaptedFrameRecoversRotatedDirection) {
    for (int n = 0; n < 100; ++n) {
        const double lam = uniform(rng, 0.1, 2.0);
        const auto C = CubicTensor::adapted_structure(lam, uniform(rng, -1, 1), uniform(rng, -1, 1));
        const Mat3 Q = random_rotation(rng);
        const auto f = adapted_frame(C.rotated(Q));
        ASSERT_FALSE(f.minimal);
        const Vec3 truth{Q[0][0], Q[1][0], Q[2][0]};
        EXPECT_GT(std::abs(dot(f.rows[0], truth)), 1 - 1e-6);
        EXPECT_NEAR(f.lambda1 / f.lambda2, 4.0, 1e-10);
        EXPECT_LT(equality_conditions_check(f.C).max(), 1e-12);
    }
}

TEST(AdaptedFrame, MinimalInputIsFlagged) {
    const auto f = adapted_frame(CubicTensor{});
    EXPECT_TRUE(f.minimal);
}

TEST(EqualityConditions, VacuousForZero) {
    const auto r = equality_conditions_check(CubicTensor{});
    EXPECT_EQ(r.max(), 0.0);
    EXPECT_TRUE(r.redundancy_consistent);
}

TEST(EqualityConditions, PerturbationIsDetected) {
    auto raw = CubicTensor::adapted_structure(0.5, 0.2, 0.3).components();
    for (auto [i, j, k] : {std::array{0, 0, 1}, std::array{0, 1, 0}, std::array{1, 0, 0}}) raw[i][j][k] += 0.1;
    const auto r = equality_conditions_check(CubicTensor::from_raw(raw));
    EXPECT_NEAR(r.off_diagonal, 0.1, 1e-12);
    EXPECT_LT(r.ratio, 1e-12);
    EXPECT_TRUE(r.redundancy_consistent);
}

TEST_F(InvariantsProperty, RandomTensorsViolateConditions) {
    for (int n = 0; n < 50; ++n) {
        const auto f = adapted_frame(random_symmetric_cubic(rng));
        if (f.minimal) continue;
        EXPECT_GT(equality_conditions_check(f.C).max(), 1e-3);
        EXPECT_TRUE(equality_conditions_check(f.C).redundancy_consistent);
    }
}
