#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/density.hpp"
#include "cyltomo/spectral.hpp"

namespace cyltomo {

struct PlaneTomogramParams {
    double mu = 1.0;
    double nu = 0.0;
};

/// Reference frame given by squeezing s > 0 and rotation theta.
struct FrameParams {
    double s = 1.0;
    double theta = 0.0;
};

/// mu = s cos(theta), nu = sin(theta) / s.
PlaneTomogramParams frame_to_mu_nu(const FrameParams& frame);

/// Integral of f delta(X - mu q - nu p) over the plane.
double plane_tomogram(const PlaneDensity& f, double X, const PlaneTomogramParams& p, const QuadratureConfig& cfg = {});

/// Integral of f along (q, p) = (s cos(theta) - d sin(theta), s sin(theta) + d cos(theta)), s in R.
double radon_line_integral(const PlaneDensity& f, double d, double theta, const QuadratureConfig& cfg = {});

/**
 * Radon data F(d, theta) on a periodic theta grid over [0, 2 pi) times a d grid.
 * Interpolated like a density (quintic in d, periodic in theta).
 */
class RadonTable {
  public:
    RadonTable(GridAxis theta, GridAxis d, std::vector<double> values);

    static RadonTable sample(const PlaneDensity& f, const QuadratureConfig& cfg = {}, int d_points = 481,
                             double d_half_width = 12.0, int theta_points = 360);
    static RadonTable from_function(const std::function<double(double d, double theta)>& fn, int d_points = 481,
                                    double d_half_width = 12.0, int theta_points = 360);

    const GridAxis& theta_axis() const { return grid_.axis0(); }
    const GridAxis& d_axis() const { return grid_.axis1(); }
    double operator()(double d, double theta) const { return grid_.eval(theta, d); }
    /// Value on theta node k, interpolated in d only.
    double at_theta_node(long k, double d) const { return grid_.eval_on_row(k, d); }

  private:
    Grid2D grid_;
};

/// F_P(r): average over theta of F over the lines tangent to the circle of radius r about P = (q, p).
double tangent_circle_average(const RadonTable& F, double q, double p, double r);

/// f(P) = -(1/pi) int_eps^rmax F_P'(r) / r dr with central differences on cfg.radial_points nodes.
double radon_classical_inverse(const RadonTable& F, double q, double p, const QuadratureConfig& cfg = {});

/// Plane tomogram family indexed by (X, mu, nu).
class PlaneTomogramSource {
  public:
    virtual ~PlaneTomogramSource() = default;
    virtual double operator()(double X, double mu, double nu) const = 0;
    virtual void slice(double mu, double nu, std::span<const double> x, std::span<double> out) const;
};

class DensityPlaneSource : public PlaneTomogramSource {
  public:
    DensityPlaneSource(const PlaneDensity& f, QuadratureConfig cfg) : f_(f), cfg_(cfg) {}
    double operator()(double X, double mu, double nu) const override;

  private:
    const PlaneDensity& f_;
    QuadratureConfig cfg_;
};

class FunctionPlaneSource : public PlaneTomogramSource {
  public:
    using Fn = std::function<double(double X, double mu, double nu)>;
    explicit FunctionPlaneSource(Fn fn) : fn_(std::move(fn)) {}
    double operator()(double X, double mu, double nu) const override { return fn_(X, mu, nu); }

  private:
    Fn fn_;
};

enum class PlaneInverseMode {
    /// Triple Fourier integral over (X, mu, nu) on a Cartesian frequency grid.
    Cartesian,
    /// Polar form: one slice per direction, r-integral with weight r e^{-eta r^2}.
    Polar,
};

/**
 * Fourier data of plane tomograms. Cartesian: G(mu, nu) = int omega(X, mu, nu) e^{iX} dX on
 * a plane_freq_points^2 grid over [-nu_half_width, nu_half_width]^2 with X in
 * [-x_half_width rho, x_half_width rho], rho = max(1, |(mu, nu)|). Polar: G(r, theta) = int
 * omega(Y, cos, sin) e^{irY} dY for r <= nu_half_width.
 */
class PlaneSpectrum {
  public:
    static PlaneSpectrum build(const PlaneTomogramSource& src, const QuadratureConfig& cfg = {},
                               PlaneInverseMode mode = PlaneInverseMode::Cartesian);

    PlaneInverseMode mode() const { return mode_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    double reconstruct(double q, double p) const;
    /// Row-major in q.
    std::vector<double> reconstruct_grid(const GridAxis& q, const GridAxis& p) const;

  private:
    PlaneInverseMode mode_ = PlaneInverseMode::Cartesian;
    std::vector<double> freq_;
    std::vector<double> freq_w_;
    std::vector<double> theta_;
    std::vector<std::complex<double>> g_;
    double eta_ = 0.0;
    std::vector<std::string> warnings_;
};

InverseResult plane_inverse(const PlaneTomogramSource& src, double q, double p, const QuadratureConfig& cfg = {},
                            PlaneInverseMode mode = PlaneInverseMode::Cartesian);

}  // namespace cyltomo
