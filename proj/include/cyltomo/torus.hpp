#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cyltomo/circle.hpp"
#include "cyltomo/config.hpp"
#include "cyltomo/density.hpp"
#include "cyltomo/spectral.hpp"

namespace cyltomo {

struct TorusTomogramParams {
    std::vector<int> m;
    std::vector<double> nu;
    CircleVariant variant = CircleVariant::Strip;
    /// Per-component gauge (strip) or m = 0 window start (helix); empty means all zero.
    std::vector<double> alpha;
};

/**
 * Integral of f prod_k delta(X_k - m_k phi_k - nu_k J_k). Product densities multiply the
 * component circle tomograms; full N = 2 grids nest the two line integrals.
 */
double torus_tomogram(const TorusDensity& f, std::span<const double> X, const TorusTomogramParams& p,
                      const QuadratureConfig& cfg = {});

/// Outer product of N circle tomogram families (all of one variant).
class ProductTorusSource : public TomogramSampler {
  public:
    explicit ProductTorusSource(std::vector<std::shared_ptr<const CircleTomogramSource>> components);

    int dimension() const override { return static_cast<int>(components_.size()); }
    ComponentLayout layout(int k) const override { return components_[k]->layout(0); }
    void slice(std::span<const int> m, std::span<const double> nu, std::span<const std::vector<double>> x,
               std::span<double> out) const override;
    bool separable() const override { return true; }
    void component_slice(int k, int m, double nu, std::span<const double> x, std::span<double> out) const override;

  private:
    std::vector<std::shared_ptr<const CircleTomogramSource>> components_;
};

/// Tomograms of a torus density; separable when the density is in product form.
class DensityTorusSource : public TomogramSampler {
  public:
    DensityTorusSource(const TorusDensity& f, CircleVariant variant, std::vector<double> alpha,
                       QuadratureConfig cfg);

    int dimension() const override { return f_.dimension(); }
    ComponentLayout layout(int k) const override { return {variant_, alpha_[k]}; }
    void slice(std::span<const int> m, std::span<const double> nu, std::span<const std::vector<double>> x,
               std::span<double> out) const override;
    bool separable() const override { return product_ != nullptr; }
    void component_slice(int k, int m, double nu, std::span<const double> x, std::span<double> out) const override;

  private:
    const TorusDensity& f_;
    CircleVariant variant_;
    std::vector<double> alpha_;
    QuadratureConfig cfg_;
    std::unique_ptr<ProductTorusSource> product_;
};

/// Tomograms supplied by a callable over (X, m, nu) vectors.
class FunctionTorusSource : public TomogramSampler {
  public:
    using Fn = std::function<double(std::span<const double> X, std::span<const int> m, std::span<const double> nu)>;
    FunctionTorusSource(Fn fn, std::vector<ComponentLayout> layouts)
        : fn_(std::move(fn)), layouts_(std::move(layouts)) {}

    int dimension() const override { return static_cast<int>(layouts_.size()); }
    ComponentLayout layout(int k) const override { return layouts_[k]; }
    void slice(std::span<const int> m, std::span<const double> nu, std::span<const std::vector<double>> x,
               std::span<double> out) const override;

  private:
    Fn fn_;
    std::vector<ComponentLayout> layouts_;
};

/// Desk-scale resolution for N components: N = 1 keeps `base`, N = 2 uses M = 8 and
/// 121 nu nodes, N = 3 uses M = 2 and 41 nu nodes.
QuadratureConfig reduced_torus_config(int dimension, QuadratureConfig base = {});

Spectrum torus_spectrum(const TomogramSampler& src, const QuadratureConfig& cfg);
InverseResult torus_inverse(const TomogramSampler& src, std::span<const double> phi, std::span<const double> J,
                            const QuadratureConfig& cfg);

}  // namespace cyltomo
