#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/grid.hpp"

namespace cyltomo {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule, 1 <= n <= 16.
const GaussRule& gauss_legendre(int n);

/**
 * One quadrature node of a line integral. When `snap_axis` is 0 or 1 the node
 * lies exactly on grid line `snap_index` of that axis.
 */
struct LineNode {
    double x0 = 0.0;
    double x1 = 0.0;
    double weight = 0.0;
    int snap_axis = -1;
    long snap_index = 0;
};

/// Segment origin + t * direction, t in [t_lo, t_hi].
struct Segment {
    double origin0 = 0.0;
    double origin1 = 0.0;
    double dir0 = 0.0;
    double dir1 = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct LineSettings {
    LineRule rule = LineRule::CellExact;
    int points_per_cell = 3;
};

LineSettings line_settings(const QuadratureConfig& cfg);

/**
 * Quadrature nodes for the integral over t of g(segment(t)) where g is sampled on
 * (a0, a1). The segment is clipped to the range of non-periodic axes.
 */
std::vector<LineNode> plan_segment(const GridAxis& a0, const GridAxis& a1, Segment seg,
                                   const LineSettings& settings);

/**
 * The distribution delta(X - a x0 - b x1) integrated against a density on the
 * (x0, x1) plane, optionally restricted to the strip window0.first <= x0 < window0.second.
 */
struct DeltaLine {
    double X = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::optional<std::pair<double, double>> window0;
};

/// Nodes whose weights already include the delta-reduction Jacobian. Throws DegenerateError for a = b = 0.
std::vector<LineNode> plan_delta_line(const GridAxis& a0, const GridAxis& a1, const DeltaLine& line,
                                      const LineSettings& settings);

double integrate_nodes(const Grid2D& grid, std::span<const LineNode> nodes);

/// Shorthand for plan_delta_line followed by integrate_nodes.
double integrate_delta_line(const Grid2D& grid, const DeltaLine& line, const LineSettings& settings);

}  // namespace cyltomo
