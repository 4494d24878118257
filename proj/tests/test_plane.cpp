#include <gtest/gtest.h>

#include <cmath>

#include "cyltomo/errors.hpp"
#include "cyltomo/oracles.hpp"
#include "cyltomo/plane.hpp"

using namespace cyltomo;

namespace {

const PlaneDensity& gauss() {
    static const PlaneDensity f = make_plane_gaussian();
    return f;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

const RadonTable& gauss_table() {
    static const RadonTable t = RadonTable::from_function([](double d, double) { return normal_pdf(d); });
    return t;
}

FunctionPlaneSource oracle_source() {
    return FunctionPlaneSource([](double X, double mu, double nu) { return oracle_plane_gaussian(X, mu, nu).value; });
}

QuadratureConfig coarse_plane() {
    QuadratureConfig cfg;
    cfg.plane_freq_points = 61;
    cfg.x_points = 241;
    cfg.polar_angles = 90;
    cfg.polar_radial_points = 61;
    return cfg;
}

}  // namespace

TEST(FrameToMuNu, ReferenceValues) {
    auto a = frame_to_mu_nu({1.0, 0.0});
    EXPECT_DOUBLE_EQ(a.mu, 1.0);
    EXPECT_DOUBLE_EQ(a.nu, 0.0);
    auto b = frame_to_mu_nu({1.0, kPi / 2});
    EXPECT_NEAR(b.mu, 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(b.nu, 1.0);
    auto c = frame_to_mu_nu({2.0, kPi / 2});
    EXPECT_NEAR(c.mu, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(c.nu, 0.5);
    EXPECT_THROW(frame_to_mu_nu({0.0, 1.0}), DomainError);
    EXPECT_THROW(frame_to_mu_nu({-1.0, 1.0}), DomainError);
}

TEST(PlaneTomogram, ReferenceValues) {
    EXPECT_NEAR(plane_tomogram(gauss(), 0.0, {1.0, 0.0}), 0.3989423, 1e-7);
    EXPECT_NEAR(plane_tomogram(gauss(), 1.0, {0.0, 1.0}), 0.2419707, 1e-7);
    EXPECT_NEAR(plane_tomogram(gauss(), 2.0, {2.0, 0.0}), plane_tomogram(gauss(), 1.0, {1.0, 0.0}) / 2, 1e-12);
    EXPECT_NEAR(plane_tomogram(gauss(), 2.0, {2.0, 0.0}), 0.1209854, 1e-7);
    EXPECT_THROW(plane_tomogram(gauss(), 0.0, {0.0, 0.0}), DegenerateError);
}

TEST(PlaneTomogram, MatchesOracle) {
    for (double X : {-2.5, 0.0, 0.7, 3.0}) {
        for (auto [mu, nu] : {std::pair{1.0, 0.0}, {0.3, -1.2}, {-2.0, 0.5}, {0.0, 3.0}}) {
            EXPECT_NEAR(plane_tomogram(gauss(), X, {mu, nu}), oracle_plane_gaussian(X, mu, nu).value, 1e-9);
        }
    }
}

TEST(PlaneTomogram, Homogeneity) {
    for (double lambda : {-2.0, -0.5, 0.5, 2.0}) {
        for (auto [X, mu, nu] : {std::tuple{0.4, 1.0, 0.3}, {-1.0, -0.6, 1.1}, {2.0, 0.0, 1.0}}) {
            const double v = plane_tomogram(gauss(), X, {mu, nu});
            EXPECT_NEAR(plane_tomogram(gauss(), lambda * X, {lambda * mu, lambda * nu}), v / std::abs(lambda), 1e-9);
        }
    }
}

TEST(PlaneTomogram, NormalizationAndNonnegativity) {
    const PlaneDensity f = make_plane_gaussian(0.8, 1.3, 0.5, -0.4);
    for (auto [mu, nu] : {std::pair{1.0, 0.0}, {0.7, 0.7}, {-0.2, 1.5}}) {
        const int n = 481;
        const double hw = 12.0 * std::max(1.0, std::hypot(mu, nu));
        const double h = 2 * hw / (n - 1);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = plane_tomogram(f, -hw + i * h, {mu, nu});
            EXPECT_GE(v, -1e-12);
            s += (i == 0 || i == n - 1 ? 0.5 : 1.0) * h * v;
        }
        EXPECT_NEAR(s, 1.0, 2e-6);
    }
}

TEST(RadonLineIntegral, ReferenceValues) {
    for (double theta : {0.0, 0.9, 2.5, 4.0}) {
        EXPECT_NEAR(radon_line_integral(gauss(), 0.0, theta), 0.3989423, 1e-7);
        EXPECT_NEAR(radon_line_integral(gauss(), 1.0, theta), 0.2419707, 1e-7);
    }
    const PlaneDensity f = make_plane_gaussian(0.8, 1.3, 0.5, -0.4);
    EXPECT_NEAR(radon_line_integral(f, 0.6, 1.1), radon_line_integral(f, 0.6, 1.1 + kTwoPi), 1e-12);
}

TEST(RadonLineIntegral, AffineConsistency) {
    // q cos + p sin = X has unit normal (cos, sin) = (-sin(t), cos(t)) with t = theta - pi/2
    const PlaneDensity f = make_plane_gaussian(0.8, 1.3, 0.5, -0.4);
    for (double theta : {0.0, 0.6, 2.0, 3.7}) {
        for (double X : {-1.0, 0.2, 1.5}) {
            EXPECT_NEAR(plane_tomogram(f, X, {std::cos(theta), std::sin(theta)}),
                        radon_line_integral(f, X, theta - kPi / 2), 1e-9);
        }
    }
}

TEST(RadonClassicalInverse, GaussianTable) {
    EXPECT_NEAR(radon_classical_inverse(gauss_table(), 0.0, 0.0), 1.0 / kTwoPi, 5e-2);
    for (double q : {-1.0, 0.0, 1.0}) {
        for (double p : {-1.0, 0.0, 1.0}) {
            const double expect = std::exp(-0.5 * (q * q + p * p)) / kTwoPi;
            EXPECT_NEAR(radon_classical_inverse(gauss_table(), q, p), expect, 5e-2);
        }
    }
}

TEST(RadonClassicalInverse, ZeroTableAndConfig) {
    const RadonTable zero = RadonTable::from_function([](double, double) { return 0.0; }, 41, 12.0, 36);
    EXPECT_EQ(radon_classical_inverse(zero, 0.3, -0.2), 0.0);
    QuadratureConfig cfg;
    cfg.radial_max = 0.005;
    EXPECT_THROW(radon_classical_inverse(gauss_table(), 0.0, 0.0, cfg), ConfigError);
}

TEST(TangentCircleAverage, RadiallySymmetricAboutP) {
    const double q = 0.8;
    const double p = -0.5;
    // Radon data of a Gaussian centred at P: F(d, t) = N(d - n(t) . P)
    const RadonTable F = RadonTable::from_function(
        [&](double d, double t) { return normal_pdf(d - (-q * std::sin(t) + p * std::cos(t))); });
    for (double r : {0.0, 0.5, 1.7}) {
        EXPECT_NEAR(tangent_circle_average(F, q, p, r), normal_pdf(r), 1e-8);
    }
}

TEST(RadonTable, SampledMatchesClosedForm) {
    const RadonTable t = RadonTable::sample(gauss(), {}, 121, 12.0, 24);
    EXPECT_NEAR(t(0.0, 0.3), normal_pdf(0.0), 1e-6);
    EXPECT_NEAR(t(1.0, 2.0), normal_pdf(1.0), 1e-6);
}

TEST(PlaneInverse, OracleSourceCartesian) {
    const auto src = oracle_source();
    const PlaneSpectrum sp = PlaneSpectrum::build(src, coarse_plane());
    EXPECT_NEAR(sp.reconstruct(0.0, 0.0), 1.0 / kTwoPi, 1e-2);
    EXPECT_LT(std::abs(sp.reconstruct(8.0, 8.0)), 1e-3);
    for (double q : {-1.5, 0.5}) {
        for (double p : {-0.5, 1.5}) {
            EXPECT_NEAR(sp.reconstruct(q, p), std::exp(-0.5 * (q * q + p * p)) / kTwoPi, 1e-4);
        }
    }
}

TEST(PlaneInverse, CartesianVsPolar) {
    const auto src = oracle_source();
    const QuadratureConfig cfg = coarse_plane();
    const double cart = plane_inverse(src, 0.0, 0.0, cfg, PlaneInverseMode::Cartesian).value;
    const double polar = plane_inverse(src, 0.0, 0.0, cfg, PlaneInverseMode::Polar).value;
    EXPECT_NEAR(cart, polar, 2e-2);
    EXPECT_NEAR(polar, 1.0 / kTwoPi, 1e-3);
}

TEST(PlaneInverse, GridMatchesPointwise) {
    const auto src = oracle_source();
    const PlaneSpectrum sp = PlaneSpectrum::build(src, coarse_plane());
    const GridAxis q = make_axis(-2.0, 2.0, 5);
    const GridAxis p = make_axis(-1.0, 1.0, 3);
    const auto g = sp.reconstruct_grid(q, p);
    for (int i = 0; i < q.count; ++i) {
        for (int j = 0; j < p.count; ++j) {
            EXPECT_NEAR(g[i * p.count + j], sp.reconstruct(q.node(i), p.node(j)), 1e-13);
        }
    }
}

TEST(PlaneInverse, CoarseFrequencyStepWarns) {
    QuadratureConfig cfg = coarse_plane();
    cfg.plane_freq_points = 5;
    const auto r = plane_inverse(oracle_source(), 0.0, 0.0, cfg);
    EXPECT_FALSE(r.warnings.empty());
}
