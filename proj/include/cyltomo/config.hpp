#pragma once

namespace cyltomo {

/// How a line integral over a sampled density is discretized.
enum class LineRule {
    /// Split the line at every grid-line crossing and apply Gauss-Legendre on each piece.
    CellExact,
    /// Step along the dominant axis nodes (Joseph's method) with 1-D interpolation across.
    Joseph,
};

/**
 * Resolution and tolerance settings shared by the forward and inverse transforms.
 *
 * Defaults reproduce the desk-scale setup: inverse sums over |m| <= 32,
 * nu in [-6, 6] with 241 nodes, 481 X nodes per slice period.
 */
struct QuadratureConfig {
    double mass_tol = 1e-6;
    double tail_tol = 1e-10;

    /// Gauss-Legendre points per cell-crossing piece (CellExact rule).
    int quad_points_per_cell = 3;
    LineRule line_rule = LineRule::CellExact;

    /// Inverse sums run over |m| <= mode_truncation.
    int mode_truncation = 32;
    double nu_half_width = 6.0;
    int nu_points = 241;
    /// X nodes per slice period (m != 0) or per momentum window (m = 0).
    int x_points = 481;
    /// Momentum window |J| <= momentum_cutoff used to bound slice supports.
    double momentum_cutoff = 8.0;

    /// Plane inverse: X box half-width at |(mu, nu)| <= 1 and frequency nodes per axis.
    double x_half_width = 12.0;
    int plane_freq_points = 121;

    /// Polar cross-check mode of the plane inverse.
    int polar_angles = 180;
    int polar_radial_points = 121;
    double polar_taper = 1e-4;

    /// Classical (tangent-circle) inversion.
    double reg_epsilon = 1e-2;
    int radial_points = 400;
    double radial_max = 8.0;

    /// Relative spectral magnitude at the truncation edges that raises an accuracy warning.
    double spectral_tail_tol = 1e-6;
    bool use_conjugate_symmetry = true;
};

/// Throws ConfigError naming the first invalid field.
void validate_config(const QuadratureConfig& cfg);

}  // namespace cyltomo
