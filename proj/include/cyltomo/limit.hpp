#pragma once

#include <complex>
#include <vector>

#include "cyltomo/circle.hpp"
#include "cyltomo/config.hpp"
#include "cyltomo/density.hpp"

namespace cyltomo {

/// f_R(q, p) = (2 pi / R) f(2 pi q / R, p) on the circle of circumference R, q in [-R/2, R/2).
class RadiusScaledDensity {
  public:
    RadiusScaledDensity(CylinderDensity base, double R);

    double R() const { return R_; }
    const CylinderDensity& base() const { return base_; }
    double eval(double q, double p) const;
    double total_mass() const;

  private:
    CylinderDensity base_;
    double R_;
};

/// Throws DomainError for R <= 0.
RadiusScaledDensity rescale_density(const CylinderDensity& f, double R);

/**
 * Cylinder density whose rescaling to circumference R is the image sum
 * sum_{|k| <= images} g(q + k R, p). The angle axis covers [-pi, pi) with a q-step no
 * coarser than g's; the momentum axis is g's.
 */
CylinderDensity wrap_plane_density(const PlaneDensity& g, double R, int images = 4);

/// Integral of f_R delta(X - mu_m q - nu p) over [-R/2, R/2) x R with mu_m = 2 pi m / R.
double radius_tomogram(const RadiusScaledDensity& fR, double X, int m, double nu, const QuadratureConfig& cfg = {});

/// C_{k_m}(R) = (1/R) int f_R(q, p) e^{i 2 pi m q / R} dq at fixed p (periodic trapezoid).
std::complex<double> fourier_coefficient(const RadiusScaledDensity& fR, int m, double p);

struct TomogramSample {
    double X = 0.0;
    double mu = 1.0;
    double nu = 0.0;
};

struct ConvergenceRow {
    double R = 0.0;
    double max_abs_error = 0.0;
    /// Largest |2 pi m / R - mu| over the samples.
    double snap_error = 0.0;
    double runtime_seconds = 0.0;
};

struct ConvergenceReport {
    /// Sorted by increasing R.
    std::vector<ConvergenceRow> rows;
};

/// Lattice index m nearest to mu R / (2 pi).
int snap_mode(double mu, double R);

/**
 * For each R: wrap g onto circumference R, evaluate radius_tomogram at the lattice mu
 * nearest each sample and record the largest deviation from plane_tomogram of g.
 */
ConvergenceReport convergence_report(const PlaneDensity& g, std::vector<double> radii,
                                     const std::vector<TomogramSample>& samples, const QuadratureConfig& cfg = {});

/**
 * f_R(q, p) = sum_m dmu int int omega(X, mu_m, nu) e^{i (X - mu_m q - nu p)} dX dnu / (2 pi)^2,
 * dmu = 2 pi / R, from strip tomograms indexed by (X, m, nu).
 */
InverseResult radius_inverse(const CircleTomogramSource& src, double R, double q, double p,
                             const QuadratureConfig& cfg = {});

}  // namespace cyltomo
