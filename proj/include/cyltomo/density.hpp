#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/grid.hpp"

namespace cyltomo {

/// Sampling layout used by the density builders.
struct DensityGridSpec {
    int phi_points = 256;
    int j_points = 513;
    /// Momentum window [-h, h]; when unset the builders pick max(8, 8 sigma).
    std::optional<double> j_half_width;
    int order = 5;
};

/// Probability density f(q, p) on the plane, sampled on a non-periodic grid.
class PlaneDensity {
  public:
    explicit PlaneDensity(Grid2D grid);

    const Grid2D& grid() const { return grid_; }
    double eval(double q, double p) const { return grid_.eval(q, p); }

  private:
    Grid2D grid_;
};

/**
 * Density f(phi, J) on the cylinder S x R. Axis 0 is the angle (periodic with
 * period 2 pi), axis 1 the angular momentum. Immutable after construction.
 */
class CylinderDensity {
  public:
    explicit CylinderDensity(Grid2D grid);

    const Grid2D& grid() const { return grid_; }
    const GridAxis& phi_axis() const { return grid_.axis0(); }
    const GridAxis& j_axis() const { return grid_.axis1(); }
    double eval(double phi, double j) const { return grid_.eval(phi, j); }

  private:
    Grid2D grid_;
};

/**
 * Density on T^N x R^N for N in [1, 3], either as a product of N cylinder
 * factors or (N <= 2) as a full grid. Full N = 2 grids are ordered
 * (phi1, J1, phi2, J2).
 */
class TorusDensity {
  public:
    static TorusDensity from_factors(std::vector<CylinderDensity> factors);
    static TorusDensity from_grid(Grid4D grid);

    int dimension() const { return dimension_; }
    bool is_product() const { return !full_.has_value(); }
    const std::vector<CylinderDensity>& factors() const { return factors_; }
    /// Full N = 2 grid; nullptr for product-form densities.
    const Grid4D* full_grid() const { return full_ ? &*full_ : nullptr; }

    double eval(std::span<const double> phi, std::span<const double> j) const;

  private:
    TorusDensity() = default;

    int dimension_ = 0;
    std::vector<CylinderDensity> factors_;
    std::optional<Grid4D> full_;
};

/// Outer product of the factors of a product density as a full grid (N <= 2 only).
TorusDensity materialize(const TorusDensity& product);

/// Uniform in phi, Gaussian of width sigma in J: exp(-J^2 / 2 sigma^2) / ((2 pi)^(3/2) sigma).
CylinderDensity make_uniform_phi_gaussian(double sigma, const QuadratureConfig& cfg = {},
                                          const DensityGridSpec& spec = {});

/// Smallest wrap count K whose omitted terms stay below tail_tol for width sigma_phi.
int wrap_terms_for(double sigma_phi, double tail_tol);

/// Wrapped normal in phi (terms |k| <= wrap_terms) times a normal in J.
CylinderDensity make_wrapped_gaussian(double phi0, double sigma_phi, double j0, double sigma_j,
                                      int wrap_terms, const QuadratureConfig& cfg = {},
                                      const DensityGridSpec& spec = {});

/// Axis-aligned Gaussian on the plane centred at (q0, p0), sampled on [-h, h]^2.
PlaneDensity make_plane_gaussian(double sigma_q = 1.0, double sigma_p = 1.0, double q0 = 0.0,
                                 double p0 = 0.0, int points = 257, double half_width = 8.0,
                                 int order = 5);

double total_mass(const PlaneDensity& f);
double total_mass(const CylinderDensity& f);
double total_mass(const TorusDensity& f);

double eval_density(const PlaneDensity& f, double q, double p);
double eval_density(const CylinderDensity& f, double phi, double j);
double eval_density(const TorusDensity& f, std::span<const double> phi, std::span<const double> j);

/**
 * Periodic extension of a density given on the strip [alpha, alpha + 2 pi) x R,
 * where alpha is the start of f's angle axis: f(wrap(q - alpha) + alpha, p).
 */
double periodic_extension_eval(const CylinderDensity& f, double q, double p);

/// Same values scaled by `factor` (mass scales accordingly).
CylinderDensity scaled(const CylinderDensity& f, double factor);

}  // namespace cyltomo
