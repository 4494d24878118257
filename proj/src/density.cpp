#include "cyltomo/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

void require_nonnegative(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(what) + ": density values must be finite and non-negative");
        }
    }
}

void require_cylinder_axes(const GridAxis& phi, const GridAxis& j, const char* what) {
    if (!phi.periodic || std::abs(phi.period() - kTwoPi) > 1e-9) {
        throw ConfigError(std::string(what) + ": angle axis must be periodic with period 2 pi");
    }
    if (j.periodic) {
        throw ConfigError(std::string(what) + ": momentum axis must not be periodic");
    }
}

double normal_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(kTwoPi) * sigma);
}

// Mass of N(mean, sigma) outside [-h, h].
double normal_tail_outside(double mean, double sigma, double h) {
    const double s = std::sqrt(2.0) * sigma;
    return 0.5 * std::erfc((h - mean) / s) + 0.5 * std::erfc((h + mean) / s);
}

double momentum_half_width(const DensityGridSpec& spec, double sigma) {
    return spec.j_half_width.value_or(std::max(8.0, 8.0 * sigma));
}

void check_mass(double mass, const QuadratureConfig& cfg, const char* what) {
    if (std::abs(mass - 1.0) > cfg.mass_tol) {
        throw ConfigError(std::string(what) + ": sampled mass " + std::to_string(mass) +
                          " misses 1 by more than mass_tol (grid too coarse?)");
    }
}

}  // namespace

PlaneDensity::PlaneDensity(Grid2D grid) : grid_(std::move(grid)) {
    if (grid_.axis0().periodic || grid_.axis1().periodic) {
        throw ConfigError("PlaneDensity: plane axes must not be periodic");
    }
    require_nonnegative(grid_.values(), "PlaneDensity");
}

CylinderDensity::CylinderDensity(Grid2D grid) : grid_(std::move(grid)) {
    require_cylinder_axes(grid_.axis0(), grid_.axis1(), "CylinderDensity");
    require_nonnegative(grid_.values(), "CylinderDensity");
}

TorusDensity TorusDensity::from_factors(std::vector<CylinderDensity> factors) {
    if (factors.empty() || factors.size() > 3) {
        throw ConfigError("TorusDensity: dimension must be in [1, 3]");
    }
    TorusDensity t;
    t.dimension_ = static_cast<int>(factors.size());
    t.factors_ = std::move(factors);
    return t;
}

TorusDensity TorusDensity::from_grid(Grid4D grid) {
    const auto& ax = grid.axes();
    require_cylinder_axes(ax[0], ax[1], "TorusDensity");
    require_cylinder_axes(ax[2], ax[3], "TorusDensity");
    require_nonnegative(grid.values(), "TorusDensity");
    TorusDensity t;
    t.dimension_ = 2;
    t.full_ = std::move(grid);
    return t;
}

double TorusDensity::eval(std::span<const double> phi, std::span<const double> j) const {
    if (phi.size() != static_cast<std::size_t>(dimension_) || j.size() != phi.size()) {
        throw ConfigError("TorusDensity::eval: coordinate count does not match dimension");
    }
    if (full_) {
        return full_->eval(phi[0], j[0], phi[1], j[1]);
    }
    double v = 1.0;
    for (int k = 0; k < dimension_; ++k) {
        v *= factors_[k].eval(phi[k], j[k]);
    }
    return v;
}

TorusDensity materialize(const TorusDensity& product) {
    if (!product.is_product()) {
        return product;
    }
    if (product.dimension() > 2) {
        throw ConfigError("materialize: full grids are limited to N <= 2");
    }
    if (product.dimension() == 1) {
        return product;
    }
    const Grid2D& g1 = product.factors()[0].grid();
    const Grid2D& g2 = product.factors()[1].grid();
    const auto n1 = g1.values().size();
    const auto n2 = g2.values().size();
    std::vector<double> values(n1 * n2);
    for (std::size_t a = 0; a < n1; ++a) {
        for (std::size_t b = 0; b < n2; ++b) {
            values[a * n2 + b] = g1.values()[a] * g2.values()[b];
        }
    }
    const int order = std::min(g1.order(), g2.order());
    return TorusDensity::from_grid(
        Grid4D({g1.axis0(), g1.axis1(), g2.axis0(), g2.axis1()}, std::move(values), order));
}

CylinderDensity make_uniform_phi_gaussian(double sigma, const QuadratureConfig& cfg,
                                          const DensityGridSpec& spec) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("make_uniform_phi_gaussian: sigma must be positive");
    }
    const double h = momentum_half_width(spec, sigma);
    if (h < 6.0 * sigma || normal_tail_outside(0.0, sigma, h) > cfg.tail_tol) {
        throw ConfigError("make_uniform_phi_gaussian: momentum window too narrow for tail_tol");
    }
    const GridAxis phi = make_periodic_axis(0.0, kTwoPi, spec.phi_points);
    const GridAxis j = make_axis(-h, h, spec.j_points);
    const double norm = 1.0 / (std::pow(kTwoPi, 1.5) * sigma);
    std::vector<double> values(static_cast<std::size_t>(phi.count) * j.count);
    for (int a = 0; a < phi.count; ++a) {
        for (int b = 0; b < j.count; ++b) {
            const double x = j.node(b);
            values[static_cast<std::size_t>(a) * j.count + b] = norm * std::exp(-x * x / (2.0 * sigma * sigma));
        }
    }
    CylinderDensity f(Grid2D(phi, j, std::move(values), spec.order));
    check_mass(total_mass(f), cfg, "make_uniform_phi_gaussian");
    return f;
}

int wrap_terms_for(double sigma_phi, double tail_tol) {
    if (!(sigma_phi > 0.0)) {
        throw DomainError("wrap_terms_for: sigma must be positive");
    }
    // an omitted term k = K + 1 sits at least 2 pi K away from any point of the fundamental domain
    int k = 1;
    while (normal_pdf(kTwoPi * k, 0.0, sigma_phi) > tail_tol && k < 100000) {
        ++k;
    }
    return k;
}

CylinderDensity make_wrapped_gaussian(double phi0, double sigma_phi, double j0, double sigma_j,
                                      int wrap_terms, const QuadratureConfig& cfg,
                                      const DensityGridSpec& spec) {
    if (!(sigma_phi > 0.0) || !(sigma_j > 0.0)) {
        throw DomainError("make_wrapped_gaussian: widths must be positive");
    }
    if (wrap_terms < 0) {
        throw ConfigError("make_wrapped_gaussian: wrap term count must be non-negative");
    }
    const GridAxis phi = make_periodic_axis(0.0, kTwoPi, spec.phi_points);
    double worst_omitted = 0.0;
    for (int a = 0; a < phi.count; ++a) {
        const double x = phi.node(a);
        worst_omitted = std::max({worst_omitted, normal_pdf(x - kTwoPi * (wrap_terms + 1), phi0, sigma_phi),
                                  normal_pdf(x + kTwoPi * (wrap_terms + 1), phi0, sigma_phi)});
    }
    if (worst_omitted > cfg.tail_tol) {
        throw ConfigError("make_wrapped_gaussian: wrap_terms too small for tail_tol");
    }
    const double h = spec.j_half_width.value_or(std::max(8.0, std::abs(j0) + 8.0 * sigma_j));
    if (normal_tail_outside(j0, sigma_j, h) > cfg.tail_tol) {
        throw ConfigError("make_wrapped_gaussian: momentum window too narrow for tail_tol");
    }
    const GridAxis j = make_axis(-h, h, spec.j_points);

    std::vector<double> phi_part(phi.count);
    for (int a = 0; a < phi.count; ++a) {
        double s = 0.0;
        for (int k = -wrap_terms; k <= wrap_terms; ++k) {
            s += normal_pdf(phi.node(a) - kTwoPi * k, phi0, sigma_phi);
        }
        phi_part[a] = s;
    }
    std::vector<double> values(static_cast<std::size_t>(phi.count) * j.count);
    for (int a = 0; a < phi.count; ++a) {
        for (int b = 0; b < j.count; ++b) {
            values[static_cast<std::size_t>(a) * j.count + b] = phi_part[a] * normal_pdf(j.node(b), j0, sigma_j);
        }
    }
    CylinderDensity f(Grid2D(phi, j, std::move(values), spec.order));
    check_mass(total_mass(f), cfg, "make_wrapped_gaussian");
    return f;
}

PlaneDensity make_plane_gaussian(double sigma_q, double sigma_p, double q0, double p0, int points,
                                 double half_width, int order) {
    if (!(sigma_q > 0.0) || !(sigma_p > 0.0)) {
        throw DomainError("make_plane_gaussian: widths must be positive");
    }
    const GridAxis q = make_axis(-half_width, half_width, points);
    const GridAxis p = make_axis(-half_width, half_width, points);
    std::vector<double> values(static_cast<std::size_t>(points) * points);
    for (int a = 0; a < points; ++a) {
        const double gq = normal_pdf(q.node(a), q0, sigma_q);
        for (int b = 0; b < points; ++b) {
            values[static_cast<std::size_t>(a) * points + b] = gq * normal_pdf(p.node(b), p0, sigma_p);
        }
    }
    return PlaneDensity(Grid2D(q, p, std::move(values), order));
}

double total_mass(const PlaneDensity& f) { return f.grid().trapezoid_integral(); }

double total_mass(const CylinderDensity& f) { return f.grid().trapezoid_integral(); }

double total_mass(const TorusDensity& f) {
    if (const Grid4D* g = f.full_grid()) {
        return g->trapezoid_integral();
    }
    double m = 1.0;
    for (const auto& factor : f.factors()) {
        m *= total_mass(factor);
    }
    return m;
}

double eval_density(const PlaneDensity& f, double q, double p) { return f.eval(q, p); }

double eval_density(const CylinderDensity& f, double phi, double j) { return f.eval(phi, j); }

double eval_density(const TorusDensity& f, std::span<const double> phi, std::span<const double> j) {
    return f.eval(phi, j);
}

double periodic_extension_eval(const CylinderDensity& f, double q, double p) {
    const double alpha = f.phi_axis().start;
    return f.eval(wrap_angle(q - alpha, kTwoPi) + alpha, p);
}

CylinderDensity scaled(const CylinderDensity& f, double factor) {
    if (!(factor >= 0.0)) {
        throw DomainError("scaled: factor must be non-negative");
    }
    std::vector<double> values(f.grid().values().begin(), f.grid().values().end());
    for (double& v : values) {
        v *= factor;
    }
    return CylinderDensity(Grid2D(f.phi_axis(), f.j_axis(), std::move(values), f.grid().order()));
}

}  // namespace cyltomo
