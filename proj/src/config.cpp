#include "cyltomo/config.hpp"

#include <string>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) {
        throw ConfigError(std::string("QuadratureConfig.") + field + ": " + what);
    }
}

}  // namespace

void validate_config(const QuadratureConfig& cfg) {
    require(cfg.mass_tol > 0.0, "mass_tol", "must be positive");
    require(cfg.tail_tol > 0.0, "tail_tol", "must be positive");
    require(cfg.quad_points_per_cell >= 1 && cfg.quad_points_per_cell <= 16, "quad_points_per_cell",
            "must be in [1, 16]");
    require(cfg.mode_truncation >= 1, "mode_truncation", "must be >= 1");
    require(cfg.nu_half_width > 0.0, "nu_half_width", "must be positive");
    require(cfg.nu_points >= 3, "nu_points", "must be >= 3");
    require(cfg.x_points >= 3, "x_points", "must be >= 3");
    require(cfg.momentum_cutoff > 0.0, "momentum_cutoff", "must be positive");
    require(cfg.x_half_width > 0.0, "x_half_width", "must be positive");
    require(cfg.plane_freq_points >= 3, "plane_freq_points", "must be >= 3");
    require(cfg.polar_angles >= 4, "polar_angles", "must be >= 4");
    require(cfg.polar_radial_points >= 3, "polar_radial_points", "must be >= 3");
    require(cfg.polar_taper >= 0.0, "polar_taper", "must be non-negative");
    require(cfg.reg_epsilon > 0.0, "reg_epsilon", "must be positive");
    require(cfg.radial_points >= 3, "radial_points", "must be >= 3");
    require(cfg.radial_max > 0.0, "radial_max", "must be positive");
    require(cfg.spectral_tail_tol > 0.0, "spectral_tail_tol", "must be positive");
}

}  // namespace cyltomo
