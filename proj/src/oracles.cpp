#include "cyltomo/oracles.hpp"

#include <cmath>

#include "cyltomo/errors.hpp"
#include "cyltomo/grid.hpp"

namespace cyltomo {

std::string_view oracle_tag_name(OracleTag tag) {
    switch (tag) {
        case OracleTag::StripErf: return "strip-erf";
        case OracleTag::M0Gauss: return "m0-gauss";
        case OracleTag::HelixConst: return "helix-const";
        case OracleTag::PlaneGauss: return "plane-gauss";
    }
    return "unknown";
}

OracleResult oracle_strip_gaussian(double X, int m, double nu, double alpha) {
    if (m == 0 || nu == 0.0) {
        throw OracleError("oracle_strip_gaussian needs m != 0 and nu != 0");
    }
    const double am = std::abs(static_cast<double>(m));
    const double k = am / (std::sqrt(2.0) * std::abs(nu));
    const double c = alpha - X / m;
    // the sign of m only flips which erf bound is larger; |.| keeps the result a density
    const double diff = std::erf(k * (c + kTwoPi)) - std::erf(k * c);
    return {std::abs(diff) / (4.0 * kPi * am), OracleTag::StripErf};
}

OracleResult oracle_m0_gaussian(double X, double nu) {
    if (nu == 0.0) {
        throw OracleError("oracle_m0_gaussian needs nu != 0");
    }
    const double z = X / nu;
    return {std::exp(-0.5 * z * z) / (std::sqrt(kTwoPi) * std::abs(nu)), OracleTag::M0Gauss};
}

OracleResult oracle_helix_gaussian(int m) {
    if (m == 0) {
        throw OracleError("oracle_helix_gaussian needs m != 0; use oracle_m0_gaussian");
    }
    return {1.0 / (kTwoPi * std::abs(static_cast<double>(m))), OracleTag::HelixConst};
}

OracleResult oracle_plane_gaussian(double X, double mu, double nu) {
    if (mu == 0.0 && nu == 0.0) {
        throw DegenerateError("oracle_plane_gaussian needs (mu, nu) != (0, 0)");
    }
    const double r2 = mu * mu + nu * nu;
    return {std::exp(-X * X / (2.0 * r2)) / std::sqrt(kTwoPi * r2), OracleTag::PlaneGauss};
}

}  // namespace cyltomo
