#include <gtest/gtest.h>

#include <cmath>

#include "cyltomo/circle.hpp"
#include "cyltomo/errors.hpp"
#include "cyltomo/oracles.hpp"

using namespace cyltomo;

namespace {

const CylinderDensity& exf() {
    static const CylinderDensity f = make_uniform_phi_gaussian(1.0);
    return f;
}

const CylinderDensity& wrapped() {
    static const CylinderDensity f = make_wrapped_gaussian(1.0, 0.7, 0.3, 1.0, wrap_terms_for(0.7, 1e-10));
    return f;
}

}  // namespace

TEST(StripTomogram, ReferenceValues) {
    EXPECT_NEAR(strip_tomogram(exf(), 0.0, {1, 1.0, 0.0}), std::erf(kPi * std::sqrt(2.0)) / (4 * kPi), 1e-10);
    EXPECT_NEAR(strip_tomogram(exf(), kPi, {1, 1.0, 0.0}), 0.15887, 2e-5);
    EXPECT_NEAR(strip_tomogram(exf(), 0.0, {0, 2.0, 0.0}), 0.1994711, 1e-7);
    EXPECT_NEAR(strip_tomogram(exf(), 0.0, {0, 2.0, 2.2}), 0.1994711, 1e-7);
    EXPECT_THROW(strip_tomogram(exf(), 0.0, {0, 0.0, 0.0}), DegenerateError);
}

TEST(StripTomogram, VerticalFibreHalfOpenStrip) {
    const double inside = strip_tomogram(exf(), 1.0, {1, 0.0, 0.0});
    EXPECT_NEAR(inside, 1.0 / kTwoPi, 1e-10);
    EXPECT_EQ(strip_tomogram(exf(), -0.5, {1, 0.0, 0.0}), 0.0);
    EXPECT_NEAR(strip_tomogram(exf(), 0.0, {1, 0.0, 0.0}), 1.0 / kTwoPi, 1e-10);
    EXPECT_EQ(strip_tomogram(exf(), kTwoPi, {1, 0.0, 0.0}), 0.0);
    // m < 0: X / m in [alpha, alpha + 2 pi) means X in (-2 pi, 0]
    EXPECT_NEAR(strip_tomogram(exf(), -1.0, {-1, 0.0, 0.0}), 1.0 / kTwoPi, 1e-10);
    EXPECT_EQ(strip_tomogram(exf(), 1.0, {-1, 0.0, 0.0}), 0.0);
}

TEST(HelixTomogram, ReferenceValues) {
    EXPECT_NEAR(helix_tomogram(exf(), 0.7, {1, 3.2}), 1.0 / kTwoPi, 1e-8);
    EXPECT_NEAR(helix_tomogram(exf(), 0.0, {2, 1.0}), 1.0 / (4 * kPi), 1e-8);
    EXPECT_NEAR(helix_tomogram(exf(), 1.0, {0, 1.0}), 0.2419707, 1e-7);
    EXPECT_NEAR(helix_tomogram(exf(), 5.0, {-3, 0.0}), 1.0 / (6 * kPi), 1e-8);
    EXPECT_THROW(helix_tomogram(exf(), 0.0, {0, 0.0}), DegenerateError);
}

TEST(HelixTomogram, PeriodicityAndOriginIndependence) {
    for (int m : {-2, 1, 3}) {
        for (double nu : {-1.4, 0.3, 2.5}) {
            for (double X : {-3.0, 0.4, 7.0}) {
                const double v = helix_tomogram(wrapped(), X, {m, nu});
                EXPECT_NEAR(helix_tomogram(wrapped(), X + kTwoPi * m, {m, nu}), v, 1e-14);
                EXPECT_NEAR(helix_tomogram(wrapped(), X, {m, nu}, {}, 1.7), v, 1e-14);
            }
        }
    }
    for (double nu : {-0.8, 1.3}) {
        for (double origin : {0.4, 2.9, -5.0}) {
            EXPECT_NEAR(helix_tomogram(wrapped(), 0.6, {0, nu}, {}, origin), helix_tomogram(wrapped(), 0.6, {0, nu}), 1e-12);
        }
    }
}

TEST(GaugeTranslate, Examples) {
    const CylinderDensity same = gauge_translate(wrapped(), 0.0);
    const CylinderDensity full = gauge_translate(wrapped(), kTwoPi);
    const CylinderDensity flat = gauge_translate(exf(), 1.234);
    for (double phi : {0.0, 0.9, 3.3, 6.0}) {
        for (double j : {-1.0, 0.0, 0.5}) {
            EXPECT_DOUBLE_EQ(same.eval(phi, j), wrapped().eval(phi, j));
            EXPECT_NEAR(full.eval(phi, j), wrapped().eval(phi, j), 1e-13);
            EXPECT_NEAR(flat.eval(phi, j), exf().eval(phi, j), 1e-15);
            EXPECT_NEAR(gauge_translate(wrapped(), 0.8).eval(phi, j), wrapped().eval(phi + 0.8, j), 1e-13);
        }
    }
}

TEST(StripTomogram, GaugeAndAlphaPeriodicity) {
    for (int m : {-2, 1, 3}) {
        for (double nu : {-1.5, 0.0, 0.7}) {
            for (double alpha : {0.6, 2.5}) {
                for (double X : {-2.0, 1.1, 4.0}) {
                    const double v = strip_tomogram(wrapped(), X, {m, nu, alpha});
                    const CylinderDensity moved = gauge_translate(wrapped(), alpha);
                    EXPECT_NEAR(strip_tomogram(moved, X - m * alpha, {m, nu, 0.0}), v, 1e-10);
                    EXPECT_NEAR(strip_tomogram(wrapped(), X + kTwoPi * m, {m, nu, alpha + kTwoPi}), v, 1e-10);
                }
            }
        }
    }
}

TEST(StripToHelixResum, Examples) {
    EXPECT_NEAR(strip_to_helix_resum(exf(), 0.0, 1, 1.0, 0.0, 6), 1.0 / kTwoPi, 1e-8);
    EXPECT_DOUBLE_EQ(strip_to_helix_resum(wrapped(), 0.3, 0, 1.2, 0.5, 4), strip_tomogram(wrapped(), 0.3, {0, 1.2, 0.5}));
    EXPECT_DOUBLE_EQ(strip_to_helix_resum(wrapped(), 0.3, 2, 1.2, 0.5, 0), strip_tomogram(wrapped(), 0.3, {2, 1.2, 0.5}));
    EXPECT_NEAR(strip_to_helix_resum(wrapped(), 0.3, 1, 3.5, 0.0, 8), helix_tomogram(wrapped(), 0.3, {1, 3.5}), 1e-8);
    EXPECT_THROW(strip_to_helix_resum(exf(), 0.0, 1, 1.0, 0.0, -1), ConfigError);
}

TEST(HelixChart, Examples) {
    const HelixParams h = helix_params_from_tomogram(1, 1.0, 0.0);
    EXPECT_NEAR(std::tan(h.theta), -1.0, 1e-15);
    EXPECT_GT(h.theta, -kPi);
    EXPECT_LT(h.theta, 0.0);
    EXPECT_DOUBLE_EQ(h.intercept, 0.0);
    EXPECT_NEAR(h.shift, kTwoPi * std::tan(h.theta), 1e-15);
    const HelixParams h2 = helix_params_from_tomogram(1, 1.0, kTwoPi);
    EXPECT_DOUBLE_EQ(h2.theta, h.theta);
    EXPECT_NEAR(h2.intercept, h.intercept, 1e-15);
    EXPECT_THROW(helix_params_from_tomogram(0, 1.0, 0.0), ChartError);
    EXPECT_THROW(helix_params_from_tomogram(2, 0.0, 0.0), ChartError);
}

TEST(HelixChart, RoundTrip) {
    for (int m : {-3, -1, 1, 2, 5}) {
        for (double nu : {-2.0, -0.3, 0.5, 4.0}) {
            for (double X : {-9.0, 0.0, 1.3, 20.0}) {
                const HelixParams h = helix_params_from_tomogram(m, nu, X);
                EXPECT_GT(h.theta, -kPi);
                EXPECT_LT(h.theta, 0.0);
                const HelixCoordinates c = helix_tomogram_from_params(h, m);
                EXPECT_NEAR(c.nu, nu, 1e-12 * std::abs(nu) + 1e-14);
                const double period = kTwoPi * std::abs(m);
                const double dx = std::remainder(c.X - X, period);
                EXPECT_NEAR(dx, 0.0, 1e-12);
            }
        }
    }
}

TEST(FourierMoment, StripAndHelixAgree) {
    QuadratureConfig cfg;
    DensityCircleSource strip(wrapped(), CircleVariant::Strip, 0.0, cfg);
    DensityCircleSource helix(wrapped(), CircleVariant::Helix, 0.0, cfg);
    for (double nu : {-1.0, 0.0, 0.5, 2.0}) {
        const auto a = fourier_moment(strip, 1, nu, cfg);
        const auto b = fourier_moment(helix, 1, nu, cfg);
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-8) << nu;
    }
}

TEST(FourierMoment, ClosedFormForWrappedGaussian) {
    // G(m, nu) = e^{i m phi0 - m^2 s^2 / 2} e^{i nu J0 - nu^2 / 2}
    const QuadratureConfig cfg;
    DensityCircleSource strip(wrapped(), CircleVariant::Strip, 0.4, cfg);
    for (int m : {-2, 1, 3}) {
        for (double nu : {-0.5, 0.0, 1.5}) {
            const std::complex<double> want =
                std::polar(std::exp(-0.5 * m * m * 0.49 - 0.5 * nu * nu), m * 1.0 + nu * 0.3);
            EXPECT_NEAR(std::abs(fourier_moment(strip, m, nu, cfg) - want), 0.0, 1e-8);
        }
    }
}

namespace {

QuadratureConfig coarse_inverse_config() {
    QuadratureConfig cfg;
    cfg.mode_truncation = 2;
    cfg.nu_points = 121;
    cfg.x_points = 161;
    return cfg;
}

}  // namespace

TEST(CircleInverse, OracleTomogramsReconstructExf) {
    const QuadratureConfig cfg = coarse_inverse_config();
    FunctionCircleSource strip(
        [](double X, int m, double nu) {
            if (m == 0) return oracle_m0_gaussian(X, nu).value;
            if (nu == 0.0) {
                const double phi = X / m;
                return (phi >= 0.0 && phi < kTwoPi) ? 1.0 / (kTwoPi * std::abs(m)) : 0.0;
            }
            return oracle_strip_gaussian(X, m, nu, 0.0).value;
        },
        CircleVariant::Strip, 0.0);
    FunctionCircleSource helix(
        [](double X, int m, double nu) { return m == 0 ? oracle_m0_gaussian(X, nu).value : oracle_helix_gaussian(m).value; },
        CircleVariant::Helix);
    const Spectrum s = circle_spectrum_strip(strip, cfg);
    const Spectrum h = circle_spectrum_helix(helix, cfg);
    const double peak = std::pow(kTwoPi, -1.5);
    for (double phi : {0.0, 1.0, 4.0}) {
        const double p[1] = {phi};
        const double j0[1] = {0.0};
        const double j1[1] = {1.0};
        EXPECT_NEAR(s.reconstruct(p, j0), peak, 1e-3);
        EXPECT_NEAR(h.reconstruct(p, j0), peak, 1e-3);
        EXPECT_NEAR(s.reconstruct(p, j1), 0.0385157, 1e-3);
        EXPECT_NEAR(h.reconstruct(p, j1), peak * std::exp(-0.5), 1e-6);
        const double p2[1] = {phi + kTwoPi};
        EXPECT_NEAR(s.reconstruct(p2, j1), s.reconstruct(p, j1), 1e-14);
    }
    EXPECT_TRUE(s.warnings().empty());
    const double p[1] = {0.3};
    const double j[1] = {0.2};
    EXPECT_NEAR(circle_inverse_strip(strip, 0.3, 0.2, cfg).value, s.reconstruct(p, j), 1e-15);
    EXPECT_THROW(circle_spectrum_helix(strip, cfg), ConfigError);
}

TEST(CircleInverse, ZeroModeAloneReconstructsUniformDensity) {
    QuadratureConfig cfg = coarse_inverse_config();
    cfg.mode_truncation = 1;
    FunctionCircleSource helix(
        [](double X, int m, double nu) { return m == 0 ? oracle_m0_gaussian(X, nu).value : 0.0; }, CircleVariant::Helix);
    const Spectrum h = circle_spectrum_helix(helix, cfg);
    const double p[1] = {2.0};
    const double j[1] = {0.5};
    EXPECT_NEAR(h.reconstruct(p, j), std::pow(kTwoPi, -1.5) * std::exp(-0.125), 1e-6);
}

TEST(CircleInverse, GridReconstructionMatchesPointwise) {
    QuadratureConfig cfg = coarse_inverse_config();
    cfg.line_rule = LineRule::Joseph;
    DensityCircleSource helix(wrapped(), CircleVariant::Helix, 0.0, cfg);
    cfg.mode_truncation = 3;
    cfg.nu_points = 61;
    cfg.x_points = 65;
    const Spectrum h = circle_spectrum_helix(helix, cfg);
    const GridAxis phi = make_periodic_axis(0.0, kTwoPi, 8);
    const GridAxis j = make_axis(-2.0, 2.0, 5);
    const auto grid = h.reconstruct_grid(phi, j);
    for (int a = 0; a < phi.count; ++a) {
        for (int b = 0; b < j.count; ++b) {
            const double p[1] = {phi.node(a)};
            const double q[1] = {j.node(b)};
            EXPECT_NEAR(grid[a * j.count + b], h.reconstruct(p, q), 1e-13);
        }
    }
}

TEST(CircleInverse, CoarseNuStepRaisesWarning) {
    QuadratureConfig cfg = coarse_inverse_config();
    cfg.nu_points = 11;
    FunctionCircleSource helix(
        [](double X, int m, double nu) { return m == 0 ? oracle_m0_gaussian(X, nu).value : oracle_helix_gaussian(m).value; },
        CircleVariant::Helix);
    const InverseResult r = circle_inverse_helix(helix, 0.0, 0.0, cfg);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(CircleInverse, ConjugateSymmetryMatchesFullEvaluation) {
    QuadratureConfig cfg = coarse_inverse_config();
    cfg.nu_points = 41;
    cfg.x_points = 81;
    cfg.line_rule = LineRule::Joseph;
    DensityCircleSource strip(wrapped(), CircleVariant::Strip, 0.0, cfg);
    const Spectrum a = circle_spectrum_strip(strip, cfg);
    cfg.use_conjugate_symmetry = false;
    const Spectrum b = circle_spectrum_strip(strip, cfg);
    for (int m = -2; m <= 2; ++m) {
        for (int j = 0; j < 41; j += 5) {
            const int mm[1] = {m};
            const int jj[1] = {j};
            EXPECT_NEAR(std::abs(a.coefficient(mm, jj) - b.coefficient(mm, jj)), 0.0, 1e-12);
        }
    }
}
