#include "cyltomo/torus.hpp"

#include <cmath>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

void check_params(int dim, std::size_t nx, const TorusTomogramParams& p) {
    const auto n = static_cast<std::size_t>(dim);
    if (nx != n || p.m.size() != n || p.nu.size() != n || (!p.alpha.empty() && p.alpha.size() != n)) {
        throw ConfigError("torus_tomogram: X, m, nu and alpha must have one entry per component");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (p.m[k] == 0 && p.nu[k] == 0.0) {
            throw DegenerateError("torus_tomogram: component (m, nu) = (0, 0) selects no line");
        }
    }
}

void outer_product(std::span<const std::vector<double>> parts, std::span<double> out) {
    if (out.empty()) {
        return;
    }
    std::size_t size = 1;
    out[0] = 1.0;
    for (const auto& part : parts) {
        for (std::size_t i = size; i-- > 0;) {
            const double base = out[i];
            for (std::size_t b = 0; b < part.size(); ++b) {
                out[i * part.size() + b] = base * part[b];
            }
        }
        size *= part.size();
    }
}

std::size_t tensor_size(std::span<const std::vector<double>> x) {
    std::size_t n = 1;
    for (const auto& v : x) {
        n *= v.size();
    }
    return n;
}

}  // namespace

double torus_tomogram(const TorusDensity& f, std::span<const double> X, const TorusTomogramParams& p,
                      const QuadratureConfig& cfg) {
    const int dim = f.dimension();
    check_params(dim, X.size(), p);
    auto alpha = [&](int k) { return p.alpha.empty() ? 0.0 : p.alpha[k]; };
    if (f.is_product()) {
        double v = 1.0;
        for (int k = 0; k < dim; ++k) {
            const CylinderDensity& fk = f.factors()[k];
            v *= p.variant == CircleVariant::Strip ? strip_tomogram(fk, X[k], {p.m[k], p.nu[k], alpha(k)}, cfg)
                                                   : helix_tomogram(fk, X[k], {p.m[k], p.nu[k]}, cfg, alpha(k));
        }
        return v;
    }
    const Grid4D& g = *f.full_grid();
    const LineSettings settings = line_settings(cfg);
    const auto outer = plan_delta_line(g.axes()[0], g.axes()[1],
                                       circle_delta_line(X[0], p.m[0], p.nu[0], p.variant, alpha(0)), settings);
    const auto inner = plan_delta_line(g.axes()[2], g.axes()[3],
                                       circle_delta_line(X[1], p.m[1], p.nu[1], p.variant, alpha(1)), settings);
    double s = 0.0;
    for (const LineNode& a : outer) {
        double row = 0.0;
        for (const LineNode& b : inner) {
            row += b.weight * g.eval(a.x0, a.x1, b.x0, b.x1);
        }
        s += a.weight * row;
    }
    return s;
}

ProductTorusSource::ProductTorusSource(std::vector<std::shared_ptr<const CircleTomogramSource>> components)
    : components_(std::move(components)) {
    if (components_.empty() || components_.size() > 3) {
        throw ConfigError("ProductTorusSource: between 1 and 3 components");
    }
    for (const auto& c : components_) {
        if (!c) {
            throw ConfigError("ProductTorusSource: null component");
        }
    }
}

void ProductTorusSource::component_slice(int k, int m, double nu, std::span<const double> x,
                                         std::span<double> out) const {
    components_[k]->slice_1d(m, nu, x, out);
}

void ProductTorusSource::slice(std::span<const int> m, std::span<const double> nu,
                               std::span<const std::vector<double>> x, std::span<double> out) const {
    std::vector<std::vector<double>> parts(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        parts[k].resize(x[k].size());
        components_[k]->slice_1d(m[k], nu[k], x[k], parts[k]);
    }
    outer_product(parts, out);
}

DensityTorusSource::DensityTorusSource(const TorusDensity& f, CircleVariant variant, std::vector<double> alpha,
                                       QuadratureConfig cfg)
    : f_(f), variant_(variant), alpha_(std::move(alpha)), cfg_(cfg) {
    if (alpha_.empty()) {
        alpha_.assign(f.dimension(), 0.0);
    }
    if (alpha_.size() != static_cast<std::size_t>(f.dimension())) {
        throw ConfigError("DensityTorusSource: one alpha per component");
    }
    if (f.is_product()) {
        std::vector<std::shared_ptr<const CircleTomogramSource>> parts;
        for (int k = 0; k < f.dimension(); ++k) {
            parts.push_back(std::make_shared<DensityCircleSource>(f.factors()[k], variant, alpha_[k], cfg));
        }
        product_ = std::make_unique<ProductTorusSource>(std::move(parts));
    }
}

void DensityTorusSource::component_slice(int k, int m, double nu, std::span<const double> x,
                                         std::span<double> out) const {
    if (!product_) {
        TomogramSampler::component_slice(k, m, nu, x, out);
    }
    product_->component_slice(k, m, nu, x, out);
}

void DensityTorusSource::slice(std::span<const int> m, std::span<const double> nu,
                               std::span<const std::vector<double>> x, std::span<double> out) const {
    if (product_) {
        product_->slice(m, nu, x, out);
        return;
    }
    const TorusTomogramParams p{{m.begin(), m.end()}, {nu.begin(), nu.end()}, variant_, alpha_};
    const std::size_t n1 = x[1].size();
    for (std::size_t a = 0; a < x[0].size(); ++a) {
        for (std::size_t b = 0; b < n1; ++b) {
            const double X[2] = {x[0][a], x[1][b]};
            out[a * n1 + b] = torus_tomogram(f_, X, p, cfg_);
        }
    }
}

void FunctionTorusSource::slice(std::span<const int> m, std::span<const double> nu,
                                std::span<const std::vector<double>> x, std::span<double> out) const {
    const std::size_t total = tensor_size(x);
    const std::size_t dim = x.size();
    std::vector<double> X(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        for (std::size_t k = dim; k-- > 0;) {
            X[k] = x[k][r % x[k].size()];
            r /= x[k].size();
        }
        out[idx] = fn_(X, m, nu);
    }
}

QuadratureConfig reduced_torus_config(int dimension, QuadratureConfig base) {
    if (dimension == 2) {
        base.mode_truncation = 8;
        base.nu_points = 121;
    } else if (dimension == 3) {
        base.mode_truncation = 2;
        base.nu_points = 41;
    } else if (dimension != 1) {
        throw ConfigError("reduced_torus_config: dimension must be in [1, 3]");
    }
    return base;
}

Spectrum torus_spectrum(const TomogramSampler& src, const QuadratureConfig& cfg) {
    return Spectrum::build(src, cfg);
}

InverseResult torus_inverse(const TomogramSampler& src, std::span<const double> phi, std::span<const double> J,
                            const QuadratureConfig& cfg) {
    return torus_spectrum(src, cfg).reconstruct_with_warnings(phi, J);
}

}  // namespace cyltomo
