#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "cyltomo/density.hpp"

namespace cyltomo::testing_support {

/// Random smooth densities and transform parameters from a fixed seed.
class CaseGen {
  public:
    explicit CaseGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double sign() { return integer(0, 1) ? 1.0 : -1.0; }

    /// Two-component mixture of wrapped Gaussians on a coarse grid.
    CylinderDensity cylinder() {
        DensityGridSpec spec;
        spec.phi_points = 128;
        spec.j_points = 257;
        spec.j_half_width = 10.0;
        const double w = uniform(0.2, 0.8);
        const CylinderDensity a = component(spec);
        const CylinderDensity b = component(spec);
        std::vector<double> v(a.grid().values().begin(), a.grid().values().end());
        const auto bv = b.grid().values();
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = w * v[i] + (1.0 - w) * bv[i];
        }
        return CylinderDensity(Grid2D(a.phi_axis(), a.j_axis(), std::move(v)));
    }

    PlaneDensity plane() {
        return make_plane_gaussian(uniform(0.6, 1.2), uniform(0.6, 1.2), uniform(-0.5, 0.5), uniform(-0.5, 0.5),
                                   161, 8.0);
    }

    int m(int max_abs) { return integer(-max_abs, max_abs); }
    double nu(double lo, double hi) { return sign() * uniform(lo, hi); }

  private:
    CylinderDensity component(const DensityGridSpec& spec) {
        const double sp = uniform(0.5, 1.2);
        return make_wrapped_gaussian(uniform(0.0, kTwoPi), sp, uniform(-0.5, 0.5), uniform(0.6, 1.2),
                                     wrap_terms_for(sp, 1e-14), QuadratureConfig{}, spec);
    }

    std::mt19937_64 rng_;
};

struct SliceStats {
    double integral = 0.0;
    double min_value = 0.0;
};

template <typename Fn>
inline SliceStats trapezoid_slice(double lo, double hi, int n, bool periodic, Fn&& fn) {
    SliceStats s;
    const double h = (hi - lo) / (periodic ? n : n - 1);
    for (int i = 0; i < n; ++i) {
        const double v = fn(lo + i * h);
        const double w = (!periodic && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
        s.integral += w * h * v;
        s.min_value = std::min(s.min_value, v);
    }
    return s;
}

/// X range holding the strip slice for |J| <= 10.
inline std::pair<double, double> strip_support(int m, double nu, double alpha) {
    const double a = m * alpha + std::min(0.0, kTwoPi * m);
    const double b = m * alpha + std::max(0.0, kTwoPi * m);
    return {a - 10.0 * std::abs(nu), b + 10.0 * std::abs(nu)};
}

}  // namespace cyltomo::testing_support
