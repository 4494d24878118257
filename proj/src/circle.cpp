#include "cyltomo/circle.hpp"

#include <cmath>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

void require_nondegenerate(int m, double nu, const char* what) {
    if (m == 0 && nu == 0.0) {
        throw DegenerateError(std::string(what) + ": (m, nu) = (0, 0) selects no line");
    }
}

}  // namespace

DeltaLine circle_delta_line(double X, int m, double nu, CircleVariant variant, double alpha) {
    require_nondegenerate(m, nu, "circle_delta_line");
    if (variant == CircleVariant::Strip) {
        const double k = std::floor(alpha / kTwoPi);
        const double a = alpha - kTwoPi * k;
        return {X - kTwoPi * m * k, static_cast<double>(m), nu, std::make_pair(a, a + kTwoPi)};
    }
    if (m == 0) {
        return {X, 0.0, nu, std::make_pair(alpha, alpha + kTwoPi)};
    }
    const double period = kTwoPi * std::abs(static_cast<double>(m));
    return {wrap_angle(X, period), static_cast<double>(m), nu, std::nullopt};
}

double strip_tomogram(const CylinderDensity& f, double X, const StripTomogramParams& p,
                      const QuadratureConfig& cfg) {
    require_nondegenerate(p.m, p.nu, "strip_tomogram");
    return integrate_delta_line(f.grid(), circle_delta_line(X, p.m, p.nu, CircleVariant::Strip, p.alpha),
                                line_settings(cfg));
}

double helix_tomogram(const CylinderDensity& f, double X, const HelixTomogramParams& p,
                      const QuadratureConfig& cfg, double origin) {
    require_nondegenerate(p.m, p.nu, "helix_tomogram");
    return integrate_delta_line(f.grid(), circle_delta_line(X, p.m, p.nu, CircleVariant::Helix, origin),
                                line_settings(cfg));
}

CylinderDensity gauge_translate(const CylinderDensity& f, double alpha) {
    GridAxis phi = f.phi_axis();
    phi.start -= alpha;
    std::vector<double> values(f.grid().values().begin(), f.grid().values().end());
    return CylinderDensity(Grid2D(phi, f.j_axis(), std::move(values), f.grid().order()));
}

double strip_to_helix_resum(const CylinderDensity& f, double X, int m, double nu, double alpha, int K,
                            const QuadratureConfig& cfg) {
    if (K < 0) {
        throw ConfigError("strip_to_helix_resum: K must be non-negative");
    }
    if (m == 0) {
        return strip_tomogram(f, X, {0, nu, alpha}, cfg);
    }
    double sum = 0.0;
    for (int r = -K; r <= K; ++r) {
        sum += strip_tomogram(f, X - kTwoPi * m * r, {m, nu, alpha}, cfg);
    }
    return sum;
}

HelixParams helix_params_from_tomogram(int m, double nu, double X) {
    if (m == 0) {
        throw ChartError("helix chart: m = 0 gives circles J = X / nu, not a helix");
    }
    if (nu == 0.0) {
        throw ChartError("helix chart: nu = 0 gives vertical fibres, not a helix");
    }
    HelixParams h;
    h.theta = std::atan(-m / nu);
    if (h.theta > 0.0) {
        h.theta -= kPi;
    }
    h.intercept = wrap_angle(X / m, kTwoPi);
    h.shift = (kTwoPi - h.intercept) * std::tan(h.theta);
    return h;
}

HelixCoordinates helix_tomogram_from_params(const HelixParams& h, int m) {
    if (m == 0) {
        throw ChartError("helix chart: m = 0 has no helix parameters");
    }
    if (!(h.theta > -kPi && h.theta < 0.0) || h.theta == -kPi / 2) {
        throw ChartError("helix chart: theta must lie in (-pi, 0) and not at -pi/2");
    }
    HelixCoordinates c;
    c.m = m;
    c.nu = -m / std::tan(h.theta);
    c.X = wrap_angle(m * h.intercept, kTwoPi * std::abs(static_cast<double>(m)));
    return c;
}

void CircleTomogramSource::slice_1d(int m, double nu, std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = (*this)(x[i], m, nu);
    }
}

void CircleTomogramSource::slice(std::span<const int> m, std::span<const double> nu,
                                 std::span<const std::vector<double>> x, std::span<double> out) const {
    slice_1d(m[0], nu[0], x[0], out);
}

DensityCircleSource::DensityCircleSource(const CylinderDensity& f, CircleVariant variant, double alpha,
                                         QuadratureConfig cfg)
    : CircleTomogramSource(variant, alpha), f_(f), cfg_(cfg) {}

double DensityCircleSource::operator()(double X, int m, double nu) const {
    if (variant() == CircleVariant::Strip) {
        return strip_tomogram(f_, X, {m, nu, alpha()}, cfg_);
    }
    return helix_tomogram(f_, X, {m, nu}, cfg_);
}

std::complex<double> fourier_moment(const CircleTomogramSource& src, int m, double nu, const QuadratureConfig& cfg) {
    require_nondegenerate(m, nu, "fourier_moment");
    const SliceAxis ax = slice_axis({src.variant(), src.alpha()}, m, nu, false, 0.0, cfg);
    std::vector<double> values(ax.x.size());
    src.slice_1d(m, ax.nu, ax.x, values);
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += ax.w[i] * values[i] * std::polar(1.0, ax.x[i]);
    }
    return s;
}

Spectrum circle_spectrum_strip(const CircleTomogramSource& src, const QuadratureConfig& cfg) {
    if (src.variant() != CircleVariant::Strip) {
        throw ConfigError("circle_spectrum_strip needs strip tomograms");
    }
    return Spectrum::build(src, cfg);
}

Spectrum circle_spectrum_helix(const CircleTomogramSource& src, const QuadratureConfig& cfg) {
    if (src.variant() != CircleVariant::Helix) {
        throw ConfigError("circle_spectrum_helix needs helix tomograms");
    }
    return Spectrum::build(src, cfg);
}

InverseResult circle_inverse_strip(const CircleTomogramSource& src, double phi, double J, const QuadratureConfig& cfg) {
    const Spectrum sp = circle_spectrum_strip(src, cfg);
    const double p[1] = {phi};
    const double j[1] = {J};
    return sp.reconstruct_with_warnings(p, j);
}

InverseResult circle_inverse_helix(const CircleTomogramSource& src, double phi, double J, const QuadratureConfig& cfg) {
    const Spectrum sp = circle_spectrum_helix(src, cfg);
    const double p[1] = {phi};
    const double j[1] = {J};
    return sp.reconstruct_with_warnings(p, j);
}

}  // namespace cyltomo
