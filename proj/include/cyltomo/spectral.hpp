#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/grid.hpp"

namespace cyltomo {

enum class CircleVariant {
    /// One-step helix segments over the fundamental strip [alpha, alpha + 2 pi).
    Strip,
    /// Whole helices; X lives on the circle of circumference 2 pi |m| (m != 0).
    Helix,
};

struct ComponentLayout {
    CircleVariant variant = CircleVariant::Strip;
    double alpha = 0.0;
};

/**
 * Tomogram data on T^N x R^N, N >= 1, queried one slice at a time: for fixed
 * (m_k, nu_k) the values at the tensor grid X_1 x ... x X_N, last index fastest.
 */
class TomogramSampler {
  public:
    virtual ~TomogramSampler() = default;

    virtual int dimension() const = 0;
    virtual ComponentLayout layout(int k) const = 0;
    virtual void slice(std::span<const int> m, std::span<const double> nu,
                       std::span<const std::vector<double>> x, std::span<double> out) const = 0;

    /// True when every slice is the outer product of per-component slices.
    virtual bool separable() const { return false; }
    /// Component k slice of a separable sampler.
    virtual void component_slice(int k, int m, double nu, std::span<const double> x, std::span<double> out) const;
};

/// X nodes and weights of one component slice used by the spectral moments.
struct SliceAxis {
    std::vector<double> x;
    std::vector<double> w;
    /// Effective nu handed to the sampler (nu_ref for the zero mode).
    double nu = 0.0;
    /// Frequency of the exponential: 1, or 0 for the (m, nu) = (0, 0) mass moment.
    double freq = 1.0;
};

/**
 * Quadrature layout of the X-integral of a slice.
 *
 * m = 0: X = nu J on cfg.x_points J-nodes over [-Jcut, Jcut].
 * strip, m != 0: uniform step 2 pi |m| / (x_points - 1), nodes at m alpha + (k + 1/2) step
 *   covering the support widened by |nu| Jcut.
 * helix, m != 0: one period of x_points - 1 nodes.
 * zero_mode selects the mass moment, sampled at nu_ref.
 */
SliceAxis slice_axis(const ComponentLayout& layout, int m, double nu, bool zero_mode, double nu_ref,
                     const QuadratureConfig& cfg);

/// Symmetric nu nodes (j - (n - 1)/2) h on [-cfg.nu_half_width, cfg.nu_half_width] and trapezoid weights.
void nu_nodes(const QuadratureConfig& cfg, std::vector<double>& nu, std::vector<double>& w);

struct InverseResult {
    double value = 0.0;
    std::vector<std::string> warnings;
};

/**
 * Fourier data G(m, nu) = sum over X of w omega(X; m, nu) e^{i sum X_k} for |m_k| <= M
 * and the nu nodes, from which the density is rebuilt as
 * f = (2 pi)^{-2N} Re sum_m sum_nu w_nu G e^{-i (m.phi + nu.J)}.
 */
class Spectrum {
  public:
    static Spectrum build(const TomogramSampler& sampler, const QuadratureConfig& cfg);

    int dimension() const { return dim_; }
    int mode_truncation() const { return modes_; }
    const std::vector<double>& nu() const { return nu_; }
    const std::vector<double>& nu_weights() const { return nu_w_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// G at mode vector m (|m_k| <= M) and nu node indices j.
    std::complex<double> coefficient(std::span<const int> m, std::span<const int> j) const;

    double reconstruct(std::span<const double> phi, std::span<const double> j) const;
    InverseResult reconstruct_with_warnings(std::span<const double> phi, std::span<const double> j) const;

    /// N = 1 only: reconstruction at every (phi, J) node, row-major in phi.
    std::vector<double> reconstruct_grid(const GridAxis& phi, const GridAxis& j) const;

  private:
    std::size_t flat_index(std::span<const int> m, std::span<const int> j) const;

    int dim_ = 1;
    int modes_ = 0;
    std::vector<double> nu_;
    std::vector<double> nu_w_;
    std::vector<std::complex<double>> g_;
    std::vector<std::string> warnings_;
};

}  // namespace cyltomo
