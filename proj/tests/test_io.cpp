#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "cyltomo/density.hpp"
#include "cyltomo/errors.hpp"
#include "cyltomo/io.hpp"

using namespace cyltomo;

TEST(FormatDouble, RoundTripsExactly) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::numeric_limits<double>::denorm_min(), 0.0}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
}

TEST(Table, WriteReadRoundTrip) {
    TableFile t;
    t.header = Json{{"kind", "test"}, {"value", 0.1}};
    t.columns = {"a", "b"};
    t.rows = {{1.0 / 3.0, -7.25}, {1e-17, 2.0}};
    std::stringstream ss;
    write_table(ss, t);
    const TableFile r = read_table(ss);
    EXPECT_EQ(r.header, t.header);
    EXPECT_EQ(r.columns, t.columns);
    EXPECT_EQ(r.rows, t.rows);
}

TEST(Table, MalformedInputThrows) {
    std::stringstream no_header("a,b\n1,2\n");
    EXPECT_THROW(read_table(no_header), ConfigError);
    std::stringstream bad_json("# {oops\na\n1\n");
    EXPECT_THROW(read_table(bad_json), ConfigError);
    std::stringstream short_row("# {}\na,b\n1\n");
    EXPECT_THROW(read_table(short_row), ConfigError);
    std::stringstream bad_number("# {}\na\nx1\n");
    EXPECT_THROW(read_table(bad_number), ConfigError);
}

TEST(DensityFile, CylinderRoundTripIsBitExact) {
    const CylinderDensity f = make_wrapped_gaussian(1.0, 0.7, 0.0, 1.0, 3);
    std::stringstream ss;
    write_density(ss, f);
    const TableFile t = read_table(ss);
    EXPECT_EQ(density_geometry(t.header), "cylinder");
    std::stringstream again;
    write_density(again, f);
    const CylinderDensity g = read_cylinder_density(again);
    EXPECT_EQ(g.phi_axis().count, f.phi_axis().count);
    EXPECT_EQ(g.j_axis().start, f.j_axis().start);
    EXPECT_EQ(g.j_axis().step, f.j_axis().step);
    const auto a = f.grid().values();
    const auto b = g.grid().values();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_EQ(a[i], b[i]);
    }
    EXPECT_EQ(g.eval(0.37, -0.2), f.eval(0.37, -0.2));
}

TEST(DensityFile, PlaneRoundTripAndGeometryMismatch) {
    const PlaneDensity f = make_plane_gaussian(1.2, 0.8, 0.1, -0.3);
    std::stringstream ss;
    write_density(ss, f);
    const std::string text = ss.str();
    std::stringstream in(text);
    const PlaneDensity g = read_plane_density(in);
    EXPECT_EQ(g.eval(0.25, 0.5), f.eval(0.25, 0.5));
    std::stringstream wrong(text);
    EXPECT_THROW(read_cylinder_density(wrong), ConfigError);
}

TEST(ConvergenceTable, Columns) {
    ConvergenceReport rep;
    rep.rows.push_back({kTwoPi, 0.2, 0.01, 0.0});
    const TableFile t = make_convergence_table(Json::object(), rep);
    EXPECT_EQ(t.columns, (std::vector<std::string>{"R", "maxAbsError", "snapError", "runtimeSeconds"}));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][1], 0.2);
}
