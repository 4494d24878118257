#include "cyltomo/limit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "cyltomo/errors.hpp"
#include "cyltomo/parallel.hpp"
#include "cyltomo/plane.hpp"

namespace cyltomo {

namespace {

void require_radius(double R, const char* what) {
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw DomainError(std::string(what) + ": R must be positive");
    }
}

}  // namespace

RadiusScaledDensity::RadiusScaledDensity(CylinderDensity base, double R) : base_(std::move(base)), R_(R) {
    require_radius(R, "RadiusScaledDensity");
}

double RadiusScaledDensity::eval(double q, double p) const {
    return kTwoPi / R_ * periodic_extension_eval(base_, kTwoPi * q / R_, p);
}

double RadiusScaledDensity::total_mass() const { return cyltomo::total_mass(base_); }

RadiusScaledDensity rescale_density(const CylinderDensity& f, double R) {
    require_radius(R, "rescale_density");
    return RadiusScaledDensity(f, R);
}

CylinderDensity wrap_plane_density(const PlaneDensity& g, double R, int images) {
    require_radius(R, "wrap_plane_density");
    if (images < 0) {
        throw ConfigError("wrap_plane_density: images must be non-negative");
    }
    const GridAxis& qa = g.grid().axis0();
    const GridAxis& pa = g.grid().axis1();
    const int n = std::max(64, static_cast<int>(std::ceil(R / qa.step)));
    const GridAxis phi = make_periodic_axis(-kPi, kTwoPi, n);
    std::vector<double> values(static_cast<std::size_t>(n) * pa.count);
    const double scale = R / kTwoPi;
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double q = scale * phi.node(static_cast<long>(i));
        for (int j = 0; j < pa.count; ++j) {
            const double p = pa.node(j);
            double s = 0.0;
            for (int k = -images; k <= images; ++k) {
                s += g.eval(q + k * R, p);
            }
            values[i * pa.count + j] = std::max(0.0, scale * s);
        }
    });
    return CylinderDensity(Grid2D(phi, pa, std::move(values), g.grid().order()));
}

double radius_tomogram(const RadiusScaledDensity& fR, double X, int m, double nu, const QuadratureConfig& cfg) {
    if (m == 0 && nu == 0.0) {
        throw DegenerateError("radius_tomogram: (m, nu) = (0, 0) selects no line");
    }
    // phi = 2 pi q / R maps [-R/2, R/2) onto the strip at gauge -pi and mu_m q onto m phi
    return strip_tomogram(fR.base(), X, {m, nu, -kPi}, cfg);
}

std::complex<double> fourier_coefficient(const RadiusScaledDensity& fR, int m, double p) {
    const GridAxis& phi = fR.base().phi_axis();
    std::complex<double> s(0.0, 0.0);
    for (int i = 0; i < phi.count; ++i) {
        const double x = phi.node(i);
        s += fR.base().eval(x, p) * std::polar(1.0, m * x);
    }
    return s * (phi.step / fR.R());
}

int snap_mode(double mu, double R) {
    require_radius(R, "snap_mode");
    return static_cast<int>(std::lround(mu * R / kTwoPi));
}

ConvergenceReport convergence_report(const PlaneDensity& g, std::vector<double> radii,
                                     const std::vector<TomogramSample>& samples, const QuadratureConfig& cfg) {
    if (radii.empty()) {
        throw DomainError("convergence_report: empty R list");
    }
    if (samples.empty()) {
        throw DomainError("convergence_report: empty sample set");
    }
    for (double R : radii) {
        require_radius(R, "convergence_report");
    }
    std::sort(radii.begin(), radii.end());
    std::vector<double> reference(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        reference[i] = plane_tomogram(g, samples[i].X, {samples[i].mu, samples[i].nu}, cfg);
    });
    ConvergenceReport report;
    for (double R : radii) {
        const auto t0 = std::chrono::steady_clock::now();
        const RadiusScaledDensity fR(wrap_plane_density(g, R), R);
        std::vector<double> err(samples.size());
        std::vector<double> snap(samples.size());
        parallel_for(samples.size(), [&](std::size_t i) {
            const TomogramSample& s = samples[i];
            const int m = snap_mode(s.mu, R);
            snap[i] = std::abs(kTwoPi * m / R - s.mu);
            if (m == 0 && s.nu == 0.0) {
                throw DomainError("convergence_report: sample snaps to the degenerate line (m, nu) = (0, 0)");
            }
            err[i] = std::abs(radius_tomogram(fR, s.X, m, s.nu, cfg) - reference[i]);
        });
        ConvergenceRow row;
        row.R = R;
        row.max_abs_error = *std::max_element(err.begin(), err.end());
        row.snap_error = *std::max_element(snap.begin(), snap.end());
        row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.rows.push_back(row);
    }
    return report;
}

InverseResult radius_inverse(const CircleTomogramSource& src, double R, double q, double p,
                             const QuadratureConfig& cfg) {
    require_radius(R, "radius_inverse");
    InverseResult r = circle_inverse_strip(src, kTwoPi * q / R, p, cfg);
    r.value *= kTwoPi / R;
    return r;
}

}  // namespace cyltomo
