#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cyltomo {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Reduce x to the fundamental domain [0, period).
double wrap_angle(double x, double period);

/**
 * Uniform sampling axis. Node i sits at start + i * step.
 *
 * A periodic axis covers [start, start + count * step) and identifies its two
 * ends; a non-periodic axis covers [start, start + (count - 1) * step].
 */
struct GridAxis {
    double start = 0.0;
    double step = 1.0;
    int count = 2;
    bool periodic = false;

    double node(long i) const { return start + static_cast<double>(i) * step; }
    double period() const { return step * count; }
    double lower() const { return start; }
    /// Last node for non-periodic axes, start + period for periodic ones.
    double upper() const;
    /// Trapezoid weight of node i (step for periodic axes, step/2 at the ends otherwise).
    double trapezoid_weight(int i) const;
};

/// Non-periodic axis with `count` nodes on [lo, hi].
GridAxis make_axis(double lo, double hi, int count);

/// Periodic axis with `count` nodes starting at `start` and covering one period.
GridAxis make_periodic_axis(double start, double period, int count);

/// Throws ConfigError unless count >= 2 and step > 0.
void validate_axis(const GridAxis& axis);

inline constexpr int kMaxStencil = 6;

/// Piecewise Lagrange interpolation weights for one coordinate.
struct Stencil {
    std::array<long, kMaxStencil> index{};
    std::array<double, kMaxStencil> weight{};
    int size = 0;
};

/**
 * Build the interpolation stencil of odd polynomial `order` (1, 3 or 5) at x.
 *
 * Periodic axes wrap the node indices. Non-periodic axes keep the stencil
 * inside the grid (one-sided near the ends) and return false when x lies
 * outside the sampled range.
 */
bool make_stencil(const GridAxis& axis, double x, int order, Stencil& out);

/// Node index of a (possibly out-of-range) integer position, wrapped on periodic axes.
long wrap_index(const GridAxis& axis, long i);

/// Two-dimensional sampled function with tensor-product Lagrange interpolation.
class Grid2D {
  public:
    Grid2D() = default;
    Grid2D(GridAxis a0, GridAxis a1, std::vector<double> values, int order = 5);

    const GridAxis& axis0() const { return axis0_; }
    const GridAxis& axis1() const { return axis1_; }
    int order() const { return order_; }
    std::span<const double> values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }

    double at(long i0, long i1) const {
        return values_[static_cast<std::size_t>(i0 * axis1_.count + i1)];
    }

    /// Interpolated value; zero outside the range of a non-periodic axis.
    double eval(double x0, double x1) const;
    /// Value on the axis-0 grid line i0 (wrapped), interpolated along axis 1 only.
    double eval_on_row(long i0, double x1) const;
    /// Value on the axis-1 grid line i1, interpolated along axis 0 only.
    double eval_on_column(double x0, long i1) const;

    /// Trapezoid rule over all nodes (periodic trapezoid on periodic axes).
    double trapezoid_integral() const;

  private:
    GridAxis axis0_;
    GridAxis axis1_;
    std::vector<double> values_;
    int order_ = 5;
};

/// Four-dimensional sampled function, axes ordered (x0, x1, x2, x3).
class Grid4D {
  public:
    Grid4D() = default;
    Grid4D(std::array<GridAxis, 4> axes, std::vector<double> values, int order = 3);

    const std::array<GridAxis, 4>& axes() const { return axes_; }
    int order() const { return order_; }
    std::span<const double> values() const { return values_; }

    double eval(double x0, double x1, double x2, double x3) const;
    double trapezoid_integral() const;

  private:
    std::array<GridAxis, 4> axes_{};
    std::array<std::size_t, 4> strides_{};
    std::vector<double> values_;
    int order_ = 3;
};

}  // namespace cyltomo
