#pragma once

#include <string_view>

namespace cyltomo {

enum class OracleTag { StripErf, M0Gauss, HelixConst, PlaneGauss };

struct OracleResult {
    double value = 0.0;
    OracleTag tag = OracleTag::StripErf;
};

std::string_view oracle_tag_name(OracleTag tag);

/**
 * Strip tomogram of the phi-uniform unit Gaussian:
 * (1/(4 pi |m|)) [erf(k (alpha - X/m + 2 pi)) - erf(k (alpha - X/m))], k = |m| / (sqrt 2 |nu|).
 */
OracleResult oracle_strip_gaussian(double X, int m, double nu, double alpha);

/// m = 0 slice: exp(-X^2 / 2 nu^2) / (sqrt(2 pi) |nu|).
OracleResult oracle_m0_gaussian(double X, double nu);

/// Whole-helix tomogram of the phi-uniform Gaussian: 1 / (2 pi |m|).
OracleResult oracle_helix_gaussian(int m);

/// Plane tomogram of the standard Gaussian: N(X; 0, mu^2 + nu^2).
OracleResult oracle_plane_gaussian(double X, double mu, double nu);

}  // namespace cyltomo
