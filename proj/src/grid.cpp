#include "cyltomo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyltomo/errors.hpp"

namespace cyltomo {

double wrap_angle(double x, double period) {
    if (!(period > 0.0)) {
        throw DomainError("wrap_angle: period must be positive, got " + std::to_string(period));
    }
    double r = std::fmod(x, period);
    if (r < 0.0) {
        r += period;
    }
    // -tiny + period rounds to period
    if (r >= period) {
        r = 0.0;
    }
    return r;
}

double GridAxis::upper() const {
    return periodic ? start + period() : node(count - 1);
}

double GridAxis::trapezoid_weight(int i) const {
    if (periodic) {
        return step;
    }
    return (i == 0 || i == count - 1) ? 0.5 * step : step;
}

GridAxis make_axis(double lo, double hi, int count) {
    if (count < 2 || !(hi > lo)) {
        throw ConfigError("make_axis: need count >= 2 and hi > lo");
    }
    return GridAxis{lo, (hi - lo) / (count - 1), count, false};
}

GridAxis make_periodic_axis(double start, double period, int count) {
    if (count < 2 || !(period > 0.0)) {
        throw ConfigError("make_periodic_axis: need count >= 2 and period > 0");
    }
    return GridAxis{start, period / count, count, true};
}

void validate_axis(const GridAxis& axis) {
    if (axis.count < 2) {
        throw ConfigError("grid axis needs at least 2 nodes");
    }
    if (!(axis.step > 0.0) || !std::isfinite(axis.step) || !std::isfinite(axis.start)) {
        throw ConfigError("grid axis step must be positive and finite");
    }
}

long wrap_index(const GridAxis& axis, long i) {
    if (!axis.periodic) {
        return i;
    }
    const long n = axis.count;
    long r = i % n;
    return r < 0 ? r + n : r;
}

namespace {

// 1 / prod_{j != k} (k - j) for n consecutive integer offsets
constexpr double kInvDen[7][kMaxStencil] = {
    {}, {1.0},
    {-1.0, 1.0},
    {0.5, -1.0, 0.5},
    {-1.0 / 6, 0.5, -0.5, 1.0 / 6},
    {1.0 / 24, -1.0 / 6, 0.25, -1.0 / 6, 1.0 / 24},
    {-1.0 / 120, 1.0 / 24, -1.0 / 12, 1.0 / 12, -1.0 / 24, 1.0 / 120},
};

template <int N>
inline void lagrange_weights(double t, long s0, double* w) {
    double d[N];
    for (int k = 0; k < N; ++k) {
        d[k] = t - static_cast<double>(s0 + k);
    }
    double suffix[N + 1];
    suffix[N] = 1.0;
    for (int k = N - 1; k >= 0; --k) {
        suffix[k] = suffix[k + 1] * d[k];
    }
    double prefix = 1.0;
    for (int k = 0; k < N; ++k) {
        w[k] = prefix * suffix[k + 1] * kInvDen[N][k];
        prefix *= d[k];
    }
}

template <int N>
inline void dispatch_weights(int n, double t, long s0, double* w) {
    if constexpr (N >= 2) {
        if (n == N) {
            lagrange_weights<N>(t, s0, w);
            return;
        }
        dispatch_weights<N - 1>(n, t, s0, w);
    }
}

}  // namespace

bool make_stencil(const GridAxis& axis, double x, int order, Stencil& out) {
    int n = order + 1;
    const double u_raw = (x - axis.start) / axis.step;
    double fl = std::floor(u_raw);
    double t = u_raw - fl;
    // snap positions within rounding of a node onto it
    if (t < 1e-11) {
        t = 0.0;
    } else if (t > 1.0 - 1e-11) {
        fl += 1.0;
        t = 0.0;
    }
    long cell = static_cast<long>(fl);
    long first = 0;
    if (axis.periodic) {
        first = cell - (n / 2 - 1);
    } else {
        constexpr double kSlack = 1e-9;
        const long last = axis.count - 1;
        if (u_raw < -kSlack || u_raw > static_cast<double>(last) + kSlack) {
            return false;
        }
        if (cell < 0) {
            cell = 0;
            t = 0.0;
        } else if (cell >= last) {
            cell = last - 1;
            t = 1.0;
        }
        n = std::min(n, axis.count);
        first = std::clamp(cell - (n / 2 - 1), 0L, static_cast<long>(axis.count - n));
    }
    dispatch_weights<kMaxStencil>(n, t, first - cell, out.weight.data());
    long idx = wrap_index(axis, first);
    for (int k = 0; k < n; ++k) {
        out.index[k] = idx;
        if (++idx == axis.count && axis.periodic) {
            idx = 0;
        }
    }
    out.size = n;
    return true;
}

Grid2D::Grid2D(GridAxis a0, GridAxis a1, std::vector<double> values, int order)
    : axis0_(a0), axis1_(a1), values_(std::move(values)), order_(order) {
    validate_axis(axis0_);
    validate_axis(axis1_);
    if (order_ != 1 && order_ != 3 && order_ != 5) {
        throw ConfigError("interpolation order must be 1, 3 or 5");
    }
    if (values_.size() != static_cast<std::size_t>(axis0_.count) * axis1_.count) {
        throw ConfigError("Grid2D: value count does not match axes");
    }
}

double Grid2D::eval(double x0, double x1) const {
    Stencil s0;
    Stencil s1;
    if (!make_stencil(axis0_, x0, order_, s0) || !make_stencil(axis1_, x1, order_, s1)) {
        return 0.0;
    }
    double sum = 0.0;
    for (int a = 0; a < s0.size; ++a) {
        const double* row = values_.data() + s0.index[a] * axis1_.count;
        double inner = 0.0;
        for (int b = 0; b < s1.size; ++b) {
            inner += s1.weight[b] * row[s1.index[b]];
        }
        sum += s0.weight[a] * inner;
    }
    return sum;
}

double Grid2D::eval_on_row(long i0, double x1) const {
    const long r = wrap_index(axis0_, i0);
    if (r < 0 || r >= axis0_.count) {
        return 0.0;
    }
    Stencil s1;
    if (!make_stencil(axis1_, x1, order_, s1)) {
        return 0.0;
    }
    const double* row = values_.data() + r * axis1_.count;
    double sum = 0.0;
    for (int b = 0; b < s1.size; ++b) {
        sum += s1.weight[b] * row[s1.index[b]];
    }
    return sum;
}

double Grid2D::eval_on_column(double x0, long i1) const {
    const long c = wrap_index(axis1_, i1);
    if (c < 0 || c >= axis1_.count) {
        return 0.0;
    }
    Stencil s0;
    if (!make_stencil(axis0_, x0, order_, s0)) {
        return 0.0;
    }
    double sum = 0.0;
    for (int a = 0; a < s0.size; ++a) {
        sum += s0.weight[a] * at(s0.index[a], c);
    }
    return sum;
}

double Grid2D::trapezoid_integral() const {
    double sum = 0.0;
    for (int i = 0; i < axis0_.count; ++i) {
        double row = 0.0;
        for (int j = 0; j < axis1_.count; ++j) {
            row += axis1_.trapezoid_weight(j) * at(i, j);
        }
        sum += axis0_.trapezoid_weight(i) * row;
    }
    return sum;
}

Grid4D::Grid4D(std::array<GridAxis, 4> axes, std::vector<double> values, int order)
    : axes_(axes), values_(std::move(values)), order_(order) {
    std::size_t total = 1;
    for (const auto& ax : axes_) {
        validate_axis(ax);
        total *= static_cast<std::size_t>(ax.count);
    }
    if (order_ != 1 && order_ != 3 && order_ != 5) {
        throw ConfigError("interpolation order must be 1, 3 or 5");
    }
    if (values_.size() != total) {
        throw ConfigError("Grid4D: value count does not match axes");
    }
    strides_[3] = 1;
    for (int d = 2; d >= 0; --d) {
        strides_[d] = strides_[d + 1] * static_cast<std::size_t>(axes_[d + 1].count);
    }
}

double Grid4D::eval(double x0, double x1, double x2, double x3) const {
    std::array<Stencil, 4> s;
    const std::array<double, 4> x{x0, x1, x2, x3};
    for (int d = 0; d < 4; ++d) {
        if (!make_stencil(axes_[d], x[d], order_, s[d])) {
            return 0.0;
        }
    }
    double sum = 0.0;
    for (int a = 0; a < s[0].size; ++a) {
        const std::size_t oa = s[0].index[a] * strides_[0];
        for (int b = 0; b < s[1].size; ++b) {
            const std::size_t ob = oa + s[1].index[b] * strides_[1];
            const double wab = s[0].weight[a] * s[1].weight[b];
            for (int c = 0; c < s[2].size; ++c) {
                const double* row = values_.data() + ob + s[2].index[c] * strides_[2];
                double inner = 0.0;
                for (int e = 0; e < s[3].size; ++e) {
                    inner += s[3].weight[e] * row[s[3].index[e]];
                }
                sum += wab * s[2].weight[c] * inner;
            }
        }
    }
    return sum;
}

double Grid4D::trapezoid_integral() const {
    double sum = 0.0;
    std::size_t k = 0;
    for (int a = 0; a < axes_[0].count; ++a) {
        for (int b = 0; b < axes_[1].count; ++b) {
            const double wab = axes_[0].trapezoid_weight(a) * axes_[1].trapezoid_weight(b);
            for (int c = 0; c < axes_[2].count; ++c) {
                const double wabc = wab * axes_[2].trapezoid_weight(c);
                for (int e = 0; e < axes_[3].count; ++e) {
                    sum += wabc * axes_[3].trapezoid_weight(e) * values_[k++];
                }
            }
        }
    }
    return sum;
}

}  // namespace cyltomo
