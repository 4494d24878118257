#include "cyltomo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "cyltomo/errors.hpp"

namespace cyltomo {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ConfigError("table line " + std::to_string(line) + ": not a number: '" + s + "'");
    }
    return v;
}

void require_density_columns(const TableFile& t) {
    if (t.columns != std::vector<std::string>{"x0", "x1", "value"}) {
        throw ConfigError("density file: columns must be x0,x1,value");
    }
}

Grid2D grid_from_table(const TableFile& t) {
    require_density_columns(t);
    const Json& axes = t.header.at("axes");
    if (!axes.is_array() || axes.size() != 2) {
        throw ConfigError("density file: header field 'axes' must hold two axes");
    }
    const GridAxis a0 = axis_from_json(axes[0]);
    const GridAxis a1 = axis_from_json(axes[1]);
    const std::size_t n = static_cast<std::size_t>(a0.count) * a1.count;
    if (t.rows.size() != n) {
        throw ConfigError("density file: expected " + std::to_string(n) + " rows, found " +
                          std::to_string(t.rows.size()));
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = t.rows[i][2];
    }
    const int order = t.header.value("order", 5);
    return Grid2D(a0, a1, std::move(values), order);
}

TableFile density_table(const Grid2D& g, const char* geometry, const Json& extra) {
    TableFile t;
    t.header = Json::object();
    t.header["kind"] = "density";
    t.header["geometry"] = geometry;
    t.header["axes"] = Json::array({axis_to_json(g.axis0()), axis_to_json(g.axis1())});
    t.header["order"] = g.order();
    for (const auto& [k, v] : extra.items()) {
        t.header[k] = v;
    }
    t.columns = {"x0", "x1", "value"};
    t.rows.reserve(g.values().size());
    for (int i = 0; i < g.axis0().count; ++i) {
        for (int j = 0; j < g.axis1().count; ++j) {
            t.rows.push_back({g.axis0().node(i), g.axis1().node(j), g.at(i, j)});
        }
    }
    return t;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json axis_to_json(const GridAxis& axis) {
    return Json{{"start", axis.start}, {"step", axis.step}, {"count", axis.count}, {"periodic", axis.periodic}};
}

GridAxis axis_from_json(const Json& j) {
    try {
        GridAxis a;
        a.start = j.at("start").get<double>();
        a.step = j.at("step").get<double>();
        a.count = j.at("count").get<int>();
        a.periodic = j.at("periodic").get<bool>();
        validate_axis(a);
        return a;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("axis: ") + e.what());
    }
}

void write_table(std::ostream& os, const TableFile& t) {
    os << "# " << t.header.dump() << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        os << (c ? "," : "") << t.columns[c];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_double(row[c]);
        }
        os << '\n';
    }
}

TableFile read_table(std::istream& is) {
    TableFile t;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
        throw ConfigError("table: first line must be '# ' followed by a JSON header");
    }
    try {
        t.header = Json::parse(line.substr(2));
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("table header: ") + e.what());
    }
    if (!std::getline(is, line)) {
        throw ConfigError("table: missing column line");
    }
    t.columns = split_csv(line);
    std::size_t lineno = 2;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv(line);
        if (cells.size() != t.columns.size()) {
            throw ConfigError("table line " + std::to_string(lineno) + ": expected " +
                              std::to_string(t.columns.size()) + " columns");
        }
        std::vector<double> row(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            row[c] = parse_double(cells[c], lineno);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_density(std::ostream& os, const PlaneDensity& f, const Json& extra) {
    write_table(os, density_table(f.grid(), "plane", extra));
}

void write_density(std::ostream& os, const CylinderDensity& f, const Json& extra) {
    write_table(os, density_table(f.grid(), "cylinder", extra));
}

std::string density_geometry(const Json& header) {
    if (header.value("kind", std::string()) != "density" || !header.contains("geometry")) {
        throw ConfigError("density file: header must have kind 'density' and a geometry");
    }
    return header.at("geometry").get<std::string>();
}

PlaneDensity read_plane_density(std::istream& is) {
    const TableFile t = read_table(is);
    if (density_geometry(t.header) != "plane") {
        throw ConfigError("density file: geometry is not 'plane'");
    }
    return PlaneDensity(grid_from_table(t));
}

CylinderDensity read_cylinder_density(std::istream& is) {
    const TableFile t = read_table(is);
    if (density_geometry(t.header) != "cylinder") {
        throw ConfigError("density file: geometry is not 'cylinder'");
    }
    return CylinderDensity(grid_from_table(t));
}

TableFile make_slice_table(Json header, const std::vector<double>& x, const std::vector<double>& values) {
    TableFile t;
    t.header = std::move(header);
    t.columns = {"X", "value"};
    for (std::size_t i = 0; i < x.size(); ++i) {
        t.rows.push_back({x[i], values[i]});
    }
    return t;
}

TableFile make_convergence_table(Json header, const ConvergenceReport& report) {
    TableFile t;
    t.header = std::move(header);
    t.columns = {"R", "maxAbsError", "snapError", "runtimeSeconds"};
    for (const auto& r : report.rows) {
        t.rows.push_back({r.R, r.max_abs_error, r.snap_error, r.runtime_seconds});
    }
    return t;
}

}  // namespace cyltomo
