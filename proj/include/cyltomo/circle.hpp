#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/density.hpp"
#include "cyltomo/quadrature.hpp"
#include "cyltomo/spectral.hpp"

namespace cyltomo {

struct StripTomogramParams {
    int m = 1;
    double nu = 1.0;
    double alpha = 0.0;
};

struct HelixTomogramParams {
    int m = 1;
    double nu = 1.0;
};

/// Helix X = m phi + nu J in the (slope angle, intercept) chart.
struct HelixParams {
    /// In (-pi, 0), tan(theta) = -m / nu.
    double theta = 0.0;
    /// Angle where the helix meets J = 0, in [0, 2 pi).
    double intercept = 0.0;
    /// r = (2 pi - intercept) tan(theta).
    double shift = 0.0;
};

/// Tomogram coordinates recovered from HelixParams for a chosen winding m.
struct HelixCoordinates {
    int m = 1;
    double nu = 1.0;
    /// X reduced to [0, 2 pi |m|).
    double X = 0.0;
};

/**
 * Delta line of one (m, nu) component on the cylinder. Strip: window [alpha, alpha + 2 pi)
 * after reducing alpha to [0, 2 pi). Helix: whole line for m != 0, window starting at
 * alpha for m = 0.
 */
DeltaLine circle_delta_line(double X, int m, double nu, CircleVariant variant, double alpha = 0.0);

/**
 * Strip tomogram: integral of f delta(X - m phi - nu J) over [alpha, alpha + 2 pi) x R.
 * Gauges outside [0, 2 pi) are reduced with the shift X -> X - 2 pi m k.
 */
double strip_tomogram(const CylinderDensity& f, double X, const StripTomogramParams& p,
                      const QuadratureConfig& cfg = {});

/**
 * Whole-helix tomogram. m != 0 integrates the periodic extension along the full line
 * (X is reduced mod 2 pi |m|); m = 0 integrates f(phi, X / nu) / |nu| over
 * [origin, origin + 2 pi).
 */
double helix_tomogram(const CylinderDensity& f, double X, const HelixTomogramParams& p,
                      const QuadratureConfig& cfg = {}, double origin = 0.0);

/// (tau_alpha f)(phi, J) = f(phi + alpha, J). Exact: only the angle axis origin moves.
CylinderDensity gauge_translate(const CylinderDensity& f, double alpha);

/// sum_{|r| <= K} strip_tomogram(X - 2 pi m r); for m = 0 the single strip value.
double strip_to_helix_resum(const CylinderDensity& f, double X, int m, double nu, double alpha, int K,
                            const QuadratureConfig& cfg = {});

HelixParams helix_params_from_tomogram(int m, double nu, double X);
HelixCoordinates helix_tomogram_from_params(const HelixParams& h, int m);

/// Tomogram family on the cylinder indexed by (X, m, nu), strip (fixed gauge) or helix.
class CircleTomogramSource : public TomogramSampler {
  public:
    CircleTomogramSource(CircleVariant variant, double alpha) : variant_(variant), alpha_(alpha) {}

    CircleVariant variant() const { return variant_; }
    double alpha() const { return alpha_; }

    virtual double operator()(double X, int m, double nu) const = 0;
    /// Values at the X nodes of one (m, nu) slice.
    virtual void slice_1d(int m, double nu, std::span<const double> x, std::span<double> out) const;

    int dimension() const override { return 1; }
    ComponentLayout layout(int) const override { return {variant_, alpha_}; }
    void slice(std::span<const int> m, std::span<const double> nu, std::span<const std::vector<double>> x,
               std::span<double> out) const override;

  private:
    CircleVariant variant_;
    double alpha_;
};

/// Tomograms computed from a sampled density by delta-line quadrature.
class DensityCircleSource : public CircleTomogramSource {
  public:
    /// `rule` selects the line quadrature used for every sample.
    DensityCircleSource(const CylinderDensity& f, CircleVariant variant, double alpha, QuadratureConfig cfg);

    double operator()(double X, int m, double nu) const override;

  private:
    const CylinderDensity& f_;
    QuadratureConfig cfg_;
};

/// Tomograms supplied by a callable (closed forms, measured data).
class FunctionCircleSource : public CircleTomogramSource {
  public:
    using Fn = std::function<double(double X, int m, double nu)>;
    FunctionCircleSource(Fn fn, CircleVariant variant, double alpha = 0.0)
        : CircleTomogramSource(variant, alpha), fn_(std::move(fn)) {}

    double operator()(double X, int m, double nu) const override { return fn_(X, m, nu); }

  private:
    Fn fn_;
};

/// Integral of the slice against e^{iX} over the variant's X-domain (strip: R, helix: S_m).
std::complex<double> fourier_moment(const CircleTomogramSource& src, int m, double nu,
                                    const QuadratureConfig& cfg = {});

/// Spectrum of a strip source (throws ConfigError for a helix source).
Spectrum circle_spectrum_strip(const CircleTomogramSource& src, const QuadratureConfig& cfg = {});
Spectrum circle_spectrum_helix(const CircleTomogramSource& src, const QuadratureConfig& cfg = {});

/// Pointwise reconstructions; build the spectrum once when evaluating many points.
InverseResult circle_inverse_strip(const CircleTomogramSource& src, double phi, double J,
                                   const QuadratureConfig& cfg = {});
InverseResult circle_inverse_helix(const CircleTomogramSource& src, double phi, double J,
                                   const QuadratureConfig& cfg = {});

}  // namespace cyltomo
