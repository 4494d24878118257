#include "cyltomo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

constexpr int kMaxGauss = 16;

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, refined by Newton on P_n
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const std::array<GaussRule, kMaxGauss + 1>& gauss_table() {
    static const std::array<GaussRule, kMaxGauss + 1> table = [] {
        std::array<GaussRule, kMaxGauss + 1> t;
        t[1] = GaussRule{{0.0}, {2.0}};
        for (int n = 2; n <= kMaxGauss; ++n) {
            t[n] = compute_gauss_legendre(n);
        }
        return t;
    }();
    return table;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Restrict [lo, hi] so that origin + t * dir stays inside a non-periodic axis.
bool clip_to_axis(const GridAxis& axis, double origin, double dir, double& lo, double& hi) {
    if (axis.periodic) {
        return true;
    }
    const double a = axis.lower();
    const double b = axis.upper();
    if (dir == 0.0) {
        return origin >= a && origin <= b;
    }
    double t1 = (a - origin) / dir;
    double t2 = (b - origin) / dir;
    if (t1 > t2) {
        std::swap(t1, t2);
    }
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
    return lo < hi;
}

// Parameter values strictly inside (lo, hi) where the segment crosses grid lines of `axis`.
struct Crossing {
    double t;
    long index;
};

void collect_crossings(const GridAxis& axis, double origin, double dir, double lo, double hi,
                       std::vector<Crossing>& out) {
    if (dir == 0.0) {
        return;
    }
    const double xa = origin + lo * dir;
    const double xb = origin + hi * dir;
    const double xmin = std::min(xa, xb);
    const double xmax = std::max(xa, xb);
    long kmin = static_cast<long>(std::ceil((xmin - axis.start) / axis.step));
    long kmax = static_cast<long>(std::floor((xmax - axis.start) / axis.step));
    if (!axis.periodic) {
        kmin = std::max(kmin, 0L);
        kmax = std::min(kmax, static_cast<long>(axis.count - 1));
    }
    const double span = hi - lo;
    for (long k = kmin; k <= kmax; ++k) {
        const double t = (axis.node(k) - origin) / dir;
        if (t > lo + 1e-13 * span && t < hi - 1e-13 * span) {
            out.push_back({t, k});
        }
    }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > kMaxGauss) {
        throw ConfigError("gauss_legendre: point count must be in [1, 16]");
    }
    return gauss_table()[n];
}

LineSettings line_settings(const QuadratureConfig& cfg) {
    return LineSettings{cfg.line_rule, cfg.quad_points_per_cell};
}

std::vector<LineNode> plan_segment(const GridAxis& a0, const GridAxis& a1, Segment seg,
                                   const LineSettings& settings) {
    std::vector<LineNode> nodes;
    double lo = seg.t_lo;
    double hi = seg.t_hi;
    if (!clip_to_axis(a0, seg.origin0, seg.dir0, lo, hi) ||
        !clip_to_axis(a1, seg.origin1, seg.dir1, lo, hi) || !(lo < hi)) {
        return nodes;
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("line segment is unbounded on the sampled grid");
    }

    auto point = [&](double t) {
        return LineNode{seg.origin0 + t * seg.dir0, seg.origin1 + t * seg.dir1, 0.0, -1, 0};
    };

    if (settings.rule == LineRule::CellExact) {
        std::vector<Crossing> cuts;
        collect_crossings(a0, seg.origin0, seg.dir0, lo, hi, cuts);
        collect_crossings(a1, seg.origin1, seg.dir1, lo, hi, cuts);
        std::vector<double> breaks;
        breaks.reserve(cuts.size() + 2);
        breaks.push_back(lo);
        for (const auto& c : cuts) {
            breaks.push_back(c.t);
        }
        breaks.push_back(hi);
        std::sort(breaks.begin() + 1, breaks.end() - 1);

        const GaussRule& gl = gauss_legendre(settings.points_per_cell);
        const auto npts = gl.nodes.size();
        nodes.reserve((breaks.size() - 1) * npts);
        for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            const double ta = breaks[p];
            const double tb = breaks[p + 1];
            if (!(tb > ta)) {
                continue;
            }
            const double half = 0.5 * (tb - ta);
            const double mid = 0.5 * (tb + ta);
            for (std::size_t g = 0; g < npts; ++g) {
                LineNode n = point(mid + half * gl.nodes[g]);
                n.weight = half * gl.weights[g];
                nodes.push_back(n);
            }
        }
        return nodes;
    }

    // Joseph: trapezoid over the dominant axis grid lines plus the two end points.
    const double rate0 = std::abs(seg.dir0) / a0.step;
    const double rate1 = std::abs(seg.dir1) / a1.step;
    const int dominant = rate0 >= rate1 ? 0 : 1;
    std::vector<Crossing> cuts;
    if (dominant == 0) {
        collect_crossings(a0, seg.origin0, seg.dir0, lo, hi, cuts);
    } else {
        collect_crossings(a1, seg.origin1, seg.dir1, lo, hi, cuts);
    }
    // crossings come out monotone in k; make them increasing in t
    if (cuts.size() > 1 && cuts.front().t > cuts.back().t) {
        std::reverse(cuts.begin(), cuts.end());
    }
    nodes.reserve(cuts.size() + 2);
    nodes.push_back(point(lo));
    for (const auto& c : cuts) {
        LineNode n = point(c.t);
        n.snap_axis = dominant;
        n.snap_index = c.index;
        if (dominant == 0) {
            n.x0 = a0.node(c.index);
        } else {
            n.x1 = a1.node(c.index);
        }
        nodes.push_back(n);
    }
    nodes.push_back(point(hi));

    std::vector<double> ts;
    ts.reserve(nodes.size());
    ts.push_back(lo);
    for (const auto& c : cuts) {
        ts.push_back(c.t);
    }
    ts.push_back(hi);
    const std::size_t n = ts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? ts[i] - ts[i - 1] : 0.0;
        const double right = i + 1 < n ? ts[i + 1] - ts[i] : 0.0;
        nodes[i].weight = 0.5 * (left + right);
    }
    return nodes;
}

namespace {

// Reduce the delta line to a parametrized segment; false when it misses the window.
bool prepare_delta_line(const GridAxis& a0, const GridAxis& a1, const DeltaLine& line, Segment& seg,
                        double& jacobian) {
    const double a = line.a;
    const double b = line.b;
    if (a == 0.0 && b == 0.0) {
        throw DegenerateError("delta line with both coefficients zero selects no line");
    }
    const bool param_x0 = b != 0.0 && (a == 0.0 || std::abs(b) >= std::abs(a));
    if (param_x0) {
        seg.origin0 = 0.0;
        seg.origin1 = line.X / b;
        seg.dir0 = 1.0;
        seg.dir1 = -a / b;
        jacobian = 1.0 / std::abs(b);
        if (line.window0) {
            seg.t_lo = line.window0->first;
            seg.t_hi = line.window0->second;
        } else if (!a0.periodic) {
            seg.t_lo = a0.lower();
            seg.t_hi = a0.upper();
        } else {
            if (a == 0.0) {
                throw ConfigError("line along a periodic axis needs an integration window");
            }
            seg.t_lo = -kInf;
            seg.t_hi = kInf;
        }
    } else {
        seg.origin0 = line.X / a;
        seg.origin1 = 0.0;
        seg.dir0 = -b / a;
        seg.dir1 = 1.0;
        jacobian = 1.0 / std::abs(a);
        if (a1.periodic) {
            throw ConfigError("delta line parametrized along a periodic axis 1 is not supported");
        }
        seg.t_lo = a1.lower();
        seg.t_hi = a1.upper();
        if (line.window0) {
            const auto [first, second] = *line.window0;
            if (b == 0.0) {
                const double x0 = line.X / a;
                if (!(x0 >= first && x0 < second)) {
                    return false;
                }
            } else {
                double t1 = (line.X - a * first) / b;
                double t2 = (line.X - a * second) / b;
                if (t1 > t2) {
                    std::swap(t1, t2);
                }
                seg.t_lo = std::max(seg.t_lo, t1);
                seg.t_hi = std::min(seg.t_hi, t2);
            }
        }
    }
    return seg.t_lo < seg.t_hi;
}

// Joseph rule evaluated on the fly; same nodes and weights as plan_segment.
double joseph_integral(const Grid2D& grid, Segment seg) {
    const GridAxis& a0 = grid.axis0();
    const GridAxis& a1 = grid.axis1();
    double lo = seg.t_lo;
    double hi = seg.t_hi;
    if (!clip_to_axis(a0, seg.origin0, seg.dir0, lo, hi) || !clip_to_axis(a1, seg.origin1, seg.dir1, lo, hi) ||
        !(lo < hi)) {
        return 0.0;
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("line segment is unbounded on the sampled grid");
    }
    const double rate0 = std::abs(seg.dir0) / a0.step;
    const double rate1 = std::abs(seg.dir1) / a1.step;
    const int dominant = rate0 >= rate1 ? 0 : 1;
    const GridAxis& ax = dominant == 0 ? a0 : a1;
    const double origin = dominant == 0 ? seg.origin0 : seg.origin1;
    const double dir = dominant == 0 ? seg.dir0 : seg.dir1;

    auto value_at = [&](double t) { return grid.eval(seg.origin0 + t * seg.dir0, seg.origin1 + t * seg.dir1); };
    auto value_on_line = [&](long k, double t) {
        return dominant == 0 ? grid.eval_on_row(k, seg.origin1 + t * seg.dir1)
                             : grid.eval_on_column(seg.origin0 + t * seg.dir0, k);
    };

    // interior grid lines of the dominant axis, visited in increasing t
    const double xa = origin + lo * dir;
    const double xb = origin + hi * dir;
    long kmin = static_cast<long>(std::ceil((std::min(xa, xb) - ax.start) / ax.step));
    long kmax = static_cast<long>(std::floor((std::max(xa, xb) - ax.start) / ax.step));
    if (!ax.periodic) {
        kmin = std::max(kmin, 0L);
        kmax = std::min(kmax, static_cast<long>(ax.count - 1));
    }
    const double margin = 1e-13 * (hi - lo);
    const long step = dir > 0.0 ? 1 : -1;
    long k = dir > 0.0 ? kmin : kmax;
    const long kend = dir > 0.0 ? kmax + 1 : kmin - 1;

    double prev_t = lo;
    double prev_v = value_at(lo);
    double sum = 0.0;
    for (; k != kend; k += step) {
        const double t = (ax.node(k) - origin) / dir;
        if (!(t > lo + margin && t < hi - margin)) {
            continue;
        }
        const double v = value_on_line(k, t);
        sum += 0.5 * (t - prev_t) * (prev_v + v);
        prev_t = t;
        prev_v = v;
    }
    sum += 0.5 * (hi - prev_t) * (prev_v + value_at(hi));
    return sum;
}

}  // namespace

std::vector<LineNode> plan_delta_line(const GridAxis& a0, const GridAxis& a1, const DeltaLine& line,
                                      const LineSettings& settings) {
    Segment seg;
    double jacobian = 0.0;
    if (!prepare_delta_line(a0, a1, line, seg, jacobian)) {
        return {};
    }
    auto nodes = plan_segment(a0, a1, seg, settings);
    for (auto& n : nodes) {
        n.weight *= jacobian;
    }
    return nodes;
}

double integrate_nodes(const Grid2D& grid, std::span<const LineNode> nodes) {
    double sum = 0.0;
    for (const auto& n : nodes) {
        double v = 0.0;
        if (n.snap_axis == 0) {
            v = grid.eval_on_row(n.snap_index, n.x1);
        } else if (n.snap_axis == 1) {
            v = grid.eval_on_column(n.x0, n.snap_index);
        } else {
            v = grid.eval(n.x0, n.x1);
        }
        sum += n.weight * v;
    }
    return sum;
}

double integrate_delta_line(const Grid2D& grid, const DeltaLine& line, const LineSettings& settings) {
    if (settings.rule == LineRule::Joseph) {
        Segment seg;
        double jacobian = 0.0;
        if (!prepare_delta_line(grid.axis0(), grid.axis1(), line, seg, jacobian)) {
            return 0.0;
        }
        return jacobian * joseph_integral(grid, seg);
    }
    const auto nodes = plan_delta_line(grid.axis0(), grid.axis1(), line, settings);
    return integrate_nodes(grid, nodes);
}

}  // namespace cyltomo
