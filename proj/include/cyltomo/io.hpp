#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyltomo/density.hpp"
#include "cyltomo/limit.hpp"

namespace cyltomo {

using Json = nlohmann::ordered_json;

/// 17 significant digits, lossless for doubles.
std::string format_double(double v);

Json axis_to_json(const GridAxis& axis);
GridAxis axis_from_json(const Json& j);

/**
 * A data file: one line "# " + compact JSON header, one CSV column line, then rows.
 */
struct TableFile {
    Json header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(std::ostream& os, const TableFile& t);
/// Throws ConfigError on a malformed header or row.
TableFile read_table(std::istream& is);

/// Density files: geometry "plane" or "cylinder", columns x0, x1, value (row-major in x0).
void write_density(std::ostream& os, const PlaneDensity& f, const Json& extra = Json::object());
void write_density(std::ostream& os, const CylinderDensity& f, const Json& extra = Json::object());
PlaneDensity read_plane_density(std::istream& is);
CylinderDensity read_cylinder_density(std::istream& is);
/// Geometry tag of a density file header.
std::string density_geometry(const Json& header);

/// Slice file with columns X, value; the header carries geometry and parameters.
TableFile make_slice_table(Json header, const std::vector<double>& x, const std::vector<double>& values);

/// Columns R, maxAbsError, snapError, runtimeSeconds.
TableFile make_convergence_table(Json header, const ConvergenceReport& report);

}  // namespace cyltomo
