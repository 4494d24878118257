#include "cyltomo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <random>
#include <set>

#include "cyltomo/circle.hpp"
#include "cyltomo/errors.hpp"
#include "cyltomo/limit.hpp"
#include "cyltomo/oracles.hpp"
#include "cyltomo/plane.hpp"
#include "cyltomo/torus.hpp"

namespace cyltomo {

namespace {

template <typename E>
struct EnumName {
    E value;
    const char* name;
};

constexpr EnumName<Command> kCommands[] = {
    {Command::Forward, "forward"},         {Command::Inverse, "inverse"}, {Command::OracleCheck, "oracle-check"},
    {Command::Roundtrip, "roundtrip"},     {Command::Limit, "limit"},     {Command::Torus, "torus"},
    {Command::HelixParams, "helix-params"}, {Command::Verify, "verify"},
};

constexpr EnumName<Geometry> kGeometries[] = {
    {Geometry::Plane, "plane"}, {Geometry::Strip, "strip"}, {Geometry::Helix, "helix"}, {Geometry::Torus, "torus"}};

constexpr EnumName<LineRule> kRules[] = {{LineRule::CellExact, "cell-exact"}, {LineRule::Joseph, "joseph"}};

constexpr EnumName<CircleVariant> kVariants[] = {{CircleVariant::Strip, "strip"}, {CircleVariant::Helix, "helix"}};

template <typename E, std::size_t N>
const char* name_of(const EnumName<E> (&table)[N], E v) {
    for (const auto& e : table) {
        if (e.value == v) {
            return e.name;
        }
    }
    return "?";
}

template <typename E, std::size_t N>
E parse_enum(const EnumName<E> (&table)[N], const std::string& s, const std::string& field) {
    for (const auto& e : table) {
        if (s == e.name) {
            return e.value;
        }
    }
    throw ConfigError("field '" + field + "': unknown value '" + s + "'");
}

/// Reads known keys of one JSON object and rejects the rest.
class FieldReader {
  public:
    FieldReader(const Json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
        if (!j_.is_object()) {
            throw ConfigError("field '" + (prefix_.empty() ? std::string("(root)") : prefix_) + "': expected an object");
        }
    }

    bool has(const char* key) const { return j_.contains(key); }

    template <typename T>
    void get(const char* key, T& dst) {
        if (!j_.contains(key)) {
            return;
        }
        seen_.insert(key);
        try {
            dst = j_.at(key).get<T>();
        } catch (const Json::exception&) {
            throw ConfigError("field '" + prefix_ + key + "': wrong type");
        }
    }

    template <typename T>
    void get_list(const char* key, std::vector<T>& dst) {
        if (!j_.contains(key)) {
            return;
        }
        seen_.insert(key);
        const Json& v = j_.at(key);
        try {
            dst = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
        } catch (const Json::exception&) {
            throw ConfigError("field '" + prefix_ + key + "': wrong type");
        }
    }

    template <typename E, std::size_t N>
    void get_enum(const char* key, const EnumName<E> (&table)[N], E& dst) {
        std::string s;
        get(key, s);
        if (j_.contains(key)) {
            dst = parse_enum(table, s, prefix_ + key);
        }
    }

    const Json* child(const char* key) {
        if (!j_.contains(key)) {
            return nullptr;
        }
        seen_.insert(key);
        return &j_.at(key);
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) {
                throw ConfigError("unknown field '" + prefix_ + k + "'");
            }
        }
    }

  private:
    const Json& j_;
    std::string prefix_;
    std::set<std::string> seen_;
};

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    }
    return s;
}

CylinderDensity build_cylinder(const DensitySpec& d, const QuadratureConfig& q) {
    if (d.name == "exf") {
        return make_uniform_phi_gaussian(d.sigma, q);
    }
    if (d.name == "wrapped") {
        const int K = d.wrap_terms >= 0 ? d.wrap_terms : wrap_terms_for(d.sigma_phi, q.tail_tol);
        return make_wrapped_gaussian(d.phi0, d.sigma_phi, d.j0, d.sigma_j, K, q);
    }
    if (d.name == "file") {
        std::ifstream is(d.path);
        if (!is) {
            throw ConfigError("field 'density.path': cannot open '" + d.path + "'");
        }
        return read_cylinder_density(is);
    }
    throw ConfigError("field 'density.name': '" + d.name + "' is not a cylinder density (exf, wrapped, file)");
}

PlaneDensity build_plane(const DensitySpec& d) {
    if (d.name == "gauss") {
        return make_plane_gaussian(d.sigma_q, d.sigma_p, d.q0, d.p0);
    }
    if (d.name == "file") {
        std::ifstream is(d.path);
        if (!is) {
            throw ConfigError("field 'density.path': cannot open '" + d.path + "'");
        }
        return read_plane_density(is);
    }
    throw ConfigError("field 'density.name': '" + d.name + "' is not a plane density (gauss, file)");
}

TorusDensity build_torus(const DensitySpec& d, const QuadratureConfig& q) {
    if (d.dimension < 1 || d.dimension > 3) {
        throw ConfigError("field 'density.dimension': must be in [1, 3]");
    }
    const CylinderDensity f = build_cylinder(d, q);
    return TorusDensity::from_factors(std::vector<CylinderDensity>(d.dimension, f));
}

bool is_standard_exf(const DensitySpec& d) { return d.name == "exf" && d.sigma == 1.0; }
bool is_standard_gauss(const DensitySpec& d) {
    return d.name == "gauss" && d.sigma_q == 1.0 && d.sigma_p == 1.0 && d.q0 == 0.0 && d.p0 == 0.0;
}

double exf_strip_oracle(double X, int m, double nu, double alpha) {
    if (m == 0) {
        return oracle_m0_gaussian(X, nu).value;
    }
    if (nu == 0.0) {
        const double phi = X / m;
        return (phi >= alpha && phi < alpha + kTwoPi) ? 1.0 / (kTwoPi * std::abs(m)) : 0.0;
    }
    return oracle_strip_gaussian(X, m, nu, alpha).value;
}

double exf_helix_oracle(int m, double X, double nu) {
    return m == 0 ? oracle_m0_gaussian(X, nu).value : oracle_helix_gaussian(m).value;
}

std::shared_ptr<CircleTomogramSource> oracle_circle_source(const RunConfig& cfg, CircleVariant v, double alpha) {
    if (!is_standard_exf(cfg.density)) {
        throw ConfigError("field 'tomograms': oracle tomograms need density exf with sigma 1");
    }
    if (v == CircleVariant::Strip) {
        return std::make_shared<FunctionCircleSource>(
            [alpha](double X, int m, double nu) { return exf_strip_oracle(X, m, nu, alpha); }, v, alpha);
    }
    return std::make_shared<FunctionCircleSource>(
        [](double X, int m, double nu) { return exf_helix_oracle(m, X, nu); }, v, 0.0);
}

QuadratureConfig sampling_config(const RunConfig& cfg) {
    QuadratureConfig q = cfg.quadrature;
    q.line_rule = cfg.sampling_rule;
    return q;
}

Json base_header(const RunConfig& cfg, const char* kind) {
    Json h = Json::object();
    h["kind"] = kind;
    h["command"] = command_name(cfg.command);
    h["geometry"] = geometry_name(cfg.geometry);
    return h;
}

Json warnings_json(const std::vector<std::string>& w) { return Json(w); }

CircleVariant circle_variant(Geometry g) {
    if (g == Geometry::Strip) {
        return CircleVariant::Strip;
    }
    if (g == Geometry::Helix) {
        return CircleVariant::Helix;
    }
    throw ConfigError("field 'geometry': expected strip or helix");
}

double first(const std::vector<double>& v, const char* field) {
    if (v.empty()) {
        throw ConfigError(std::string("field '") + field + "': empty list");
    }
    return v[0];
}

int first(const std::vector<int>& v, const char* field) {
    if (v.empty()) {
        throw ConfigError(std::string("field '") + field + "': empty list");
    }
    return v[0];
}

struct Output {
    TableFile table;
    int status = 0;
};

std::vector<double> broadcast(const std::vector<double>& v, std::size_t n, const char* field) {
    if (v.size() == n) {
        return v;
    }
    if (v.size() == 1) {
        return std::vector<double>(n, v[0]);
    }
    throw ConfigError(std::string("field '") + field + "': expected 1 or " + std::to_string(n) + " entries");
}

Output do_forward(const RunConfig& cfg) {
    if (cfg.x_points < 2 || !(cfg.x_max > cfg.x_min)) {
        throw ConfigError("field 'x_points': slice axis needs x_max > x_min and at least 2 points");
    }
    const GridAxis axis = make_axis(cfg.x_min, cfg.x_max, cfg.x_points);
    std::vector<double> x(axis.count);
    for (int i = 0; i < axis.count; ++i) {
        x[i] = axis.node(i);
    }
    Json h = base_header(cfg, "slice");
    Json axis_json{{"start", axis.start}, {"step", axis.step}, {"count", axis.count}};
    const QuadratureConfig& q = cfg.quadrature;
    Output o;
    if (cfg.geometry == Geometry::Torus) {
        const TorusDensity f = build_torus(cfg.density, q);
        const std::size_t n = static_cast<std::size_t>(f.dimension());
        if (cfg.m.size() != n) {
            throw ConfigError("field 'm': expected " + std::to_string(n) + " entries for the torus");
        }
        const TorusTomogramParams p{cfg.m, broadcast(cfg.nu, n, "nu"), cfg.variant, broadcast(cfg.alpha, n, "alpha")};
        h["N"] = n;
        h["variant"] = name_of(kVariants, cfg.variant);
        h["params"] = {{"m", p.m}, {"nu", p.nu}, {"alpha", p.alpha}};
        h["axis"] = axis_json;
        o.table.header = h;
        for (std::size_t k = 0; k < n; ++k) {
            o.table.columns.push_back("X" + std::to_string(k + 1));
        }
        o.table.columns.push_back("value");
        std::size_t total = 1;
        for (std::size_t k = 0; k < n; ++k) {
            total *= x.size();
        }
        std::vector<double> X(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t r = idx;
            for (std::size_t k = n; k-- > 0;) {
                X[k] = x[r % x.size()];
                r /= x.size();
            }
            std::vector<double> row(X);
            row.push_back(torus_tomogram(f, X, p, q));
            o.table.rows.push_back(std::move(row));
        }
        return o;
    }
    std::vector<double> v(x.size());
    if (cfg.geometry == Geometry::Plane) {
        const PlaneDensity f = build_plane(cfg.density);
        const double nu = first(cfg.nu, "nu");
        h["params"] = {{"mu", cfg.mu}, {"nu", nu}};
        for (std::size_t i = 0; i < x.size(); ++i) {
            v[i] = plane_tomogram(f, x[i], {cfg.mu, nu}, q);
        }
    } else {
        const CylinderDensity f = build_cylinder(cfg.density, q);
        const int m = first(cfg.m, "m");
        const double nu = first(cfg.nu, "nu");
        const double alpha = first(cfg.alpha, "alpha");
        if (cfg.geometry == Geometry::Strip) {
            h["params"] = {{"m", m}, {"nu", nu}, {"alpha", alpha}};
            for (std::size_t i = 0; i < x.size(); ++i) {
                v[i] = strip_tomogram(f, x[i], {m, nu, alpha}, q);
            }
        } else {
            h["params"] = {{"m", m}, {"nu", nu}};
            if (m != 0) {
                h["period"] = kTwoPi * std::abs(m);
            }
            for (std::size_t i = 0; i < x.size(); ++i) {
                v[i] = helix_tomogram(f, x[i], {m, nu}, q, alpha);
            }
        }
    }
    h["axis"] = axis_json;
    o.table = make_slice_table(h, x, v);
    return o;
}

std::shared_ptr<CircleTomogramSource> circle_source(const RunConfig& cfg, const CylinderDensity* f) {
    const CircleVariant v = circle_variant(cfg.geometry);
    const double alpha = v == CircleVariant::Strip ? first(cfg.alpha, "alpha") : 0.0;
    if (cfg.tomograms == "oracle") {
        return oracle_circle_source(cfg, v, alpha);
    }
    return std::make_shared<DensityCircleSource>(*f, v, alpha, sampling_config(cfg));
}

std::unique_ptr<PlaneTomogramSource> plane_source(const RunConfig& cfg, const PlaneDensity* f) {
    if (cfg.tomograms == "oracle") {
        if (!is_standard_gauss(cfg.density)) {
            throw ConfigError("field 'tomograms': oracle tomograms need the standard gauss density");
        }
        return std::make_unique<FunctionPlaneSource>(
            [](double X, double mu, double nu) { return oracle_plane_gaussian(X, mu, nu).value; });
    }
    return std::make_unique<DensityPlaneSource>(*f, sampling_config(cfg));
}

void check_tomograms(const RunConfig& cfg) {
    if (cfg.tomograms != "density" && cfg.tomograms != "oracle") {
        throw ConfigError("field 'tomograms': expected density or oracle");
    }
}

Output do_torus(const RunConfig& cfg);

Output do_inverse(const RunConfig& cfg) {
    check_tomograms(cfg);
    if (cfg.geometry == Geometry::Torus) {
        return do_torus(cfg);
    }
    Output o;
    Json h = base_header(cfg, "reconstruction");
    std::vector<std::string> warnings;
    if (cfg.geometry == Geometry::Plane) {
        const PlaneDensity f = build_plane(cfg.density);
        const auto src = plane_source(cfg, &f);
        const PlaneSpectrum sp = PlaneSpectrum::build(*src, cfg.quadrature);
        warnings = sp.warnings();
        o.table.columns = {"q", "p", "value"};
        for (double q : cfg.phi) {
            for (double p : cfg.j) {
                o.table.rows.push_back({q, p, sp.reconstruct(q, p)});
            }
        }
    } else {
        const CylinderDensity f = build_cylinder(cfg.density, cfg.quadrature);
        const auto src = circle_source(cfg, &f);
        const Spectrum sp = Spectrum::build(*src, cfg.quadrature);
        warnings = sp.warnings();
        o.table.columns = {"phi", "J", "value"};
        for (double phi : cfg.phi) {
            for (double J : cfg.j) {
                const double a[1] = {phi};
                const double b[1] = {J};
                o.table.rows.push_back({phi, J, sp.reconstruct(a, b)});
            }
        }
    }
    h["tomograms"] = cfg.tomograms;
    h["warnings"] = warnings_json(warnings);
    o.table.header = h;
    o.status = cfg.strict && !warnings.empty() ? 2 : 0;
    return o;
}

/// Indices of the nodes of `axis` inside [lo, hi] as a sub-axis.
GridAxis sub_axis(const GridAxis& axis, double lo, double hi, int& first_index) {
    int i0 = -1;
    int i1 = -1;
    for (int i = 0; i < axis.count; ++i) {
        const double x = axis.node(i);
        if (x >= lo - 1e-12 && x <= hi + 1e-12) {
            if (i0 < 0) {
                i0 = i;
            }
            i1 = i;
        }
    }
    if (i0 < 0 || i1 == i0) {
        throw ConfigError("roundtrip: evaluation box holds fewer than two nodes");
    }
    first_index = i0;
    GridAxis s = axis;
    s.start = axis.node(i0);
    s.count = i1 - i0 + 1;
    s.periodic = false;
    return s;
}

Output do_roundtrip(const RunConfig& cfg) {
    check_tomograms(cfg);
    Output o;
    Json h = base_header(cfg, "roundtrip");
    std::vector<std::string> warnings;
    double linf = 0.0;
    std::size_t nodes = 0;
    if (cfg.geometry == Geometry::Plane) {
        const PlaneDensity f = build_plane(cfg.density);
        const auto src = plane_source(cfg, &f);
        const PlaneSpectrum sp = PlaneSpectrum::build(*src, cfg.quadrature);
        warnings = sp.warnings();
        int q0 = 0;
        int p0 = 0;
        const GridAxis qa = sub_axis(f.grid().axis0(), -2.0, 2.0, q0);
        const GridAxis pa = sub_axis(f.grid().axis1(), -2.0, 2.0, p0);
        const auto rec = sp.reconstruct_grid(qa, pa);
        for (int i = 0; i < qa.count; ++i) {
            for (int j = 0; j < pa.count; ++j) {
                linf = std::max(linf, std::abs(rec[i * pa.count + j] - f.grid().at(q0 + i, p0 + j)));
            }
        }
        nodes = rec.size();
        h["box"] = {-2.0, 2.0};
    } else if (cfg.geometry == Geometry::Torus) {
        const TorusDensity f = build_torus(cfg.density, cfg.quadrature);
        const DensityTorusSource src(f, cfg.variant, {}, sampling_config(cfg));
        const Spectrum sp = torus_spectrum(src, cfg.quadrature);
        warnings = sp.warnings();
        const int n = f.dimension();
        const double phis[2] = {0.0, kPi};
        const double js[2] = {0.0, 1.0};
        const int total = 1 << (2 * n);
        for (int idx = 0; idx < total; ++idx) {
            std::vector<double> phi(n);
            std::vector<double> J(n);
            for (int k = 0; k < n; ++k) {
                phi[k] = phis[(idx >> (2 * k)) & 1];
                J[k] = js[(idx >> (2 * k + 1)) & 1];
            }
            linf = std::max(linf, std::abs(sp.reconstruct(phi, J) - f.eval(phi, J)));
        }
        nodes = static_cast<std::size_t>(total);
        h["variant"] = name_of(kVariants, cfg.variant);
    } else {
        const CylinderDensity f = build_cylinder(cfg.density, cfg.quadrature);
        const auto src = circle_source(cfg, &f);
        const Spectrum sp = Spectrum::build(*src, cfg.quadrature);
        warnings = sp.warnings();
        const auto rec = sp.reconstruct_grid(f.phi_axis(), f.j_axis());
        const auto vals = f.grid().values();
        for (std::size_t i = 0; i < rec.size(); ++i) {
            linf = std::max(linf, std::abs(rec[i] - vals[i]));
        }
        nodes = rec.size();
    }
    h["tomograms"] = cfg.tomograms;
    h["warnings"] = warnings_json(warnings);
    o.table.header = h;
    o.table.columns = {"linfError", "nodes"};
    o.table.rows.push_back({linf, static_cast<double>(nodes)});
    o.status = cfg.strict && !warnings.empty() ? 2 : 0;
    return o;
}

Output do_torus(const RunConfig& cfg) {
    check_tomograms(cfg);
    const TorusDensity f = build_torus(cfg.density, cfg.quadrature);
    const std::size_t n = static_cast<std::size_t>(f.dimension());
    std::unique_ptr<TomogramSampler> src;
    if (cfg.tomograms == "oracle") {
        const auto c = oracle_circle_source(cfg, cfg.variant, 0.0);
        src = std::make_unique<ProductTorusSource>(std::vector<std::shared_ptr<const CircleTomogramSource>>(n, c));
    } else {
        src = std::make_unique<DensityTorusSource>(f, cfg.variant, std::vector<double>{}, sampling_config(cfg));
    }
    std::vector<double> phi = cfg.phi;
    std::vector<double> J = cfg.j;
    if (phi.size() == 1) {
        phi.assign(n, phi[0]);
    }
    if (J.size() == 1) {
        J.assign(n, J[0]);
    }
    if (phi.size() != J.size() || phi.size() % n != 0) {
        throw ConfigError("field 'phi': torus points need phi and j lists of equal length, a multiple of N");
    }
    const Spectrum sp = torus_spectrum(*src, cfg.quadrature);
    Output o;
    Json h = base_header(cfg, "reconstruction");
    h["N"] = n;
    h["variant"] = name_of(kVariants, cfg.variant);
    h["tomograms"] = cfg.tomograms;
    h["warnings"] = warnings_json(sp.warnings());
    o.table.header = h;
    for (std::size_t k = 0; k < n; ++k) {
        o.table.columns.push_back("phi" + std::to_string(k + 1));
    }
    for (std::size_t k = 0; k < n; ++k) {
        o.table.columns.push_back("J" + std::to_string(k + 1));
    }
    o.table.columns.push_back("value");
    for (std::size_t p = 0; p < phi.size() / n; ++p) {
        const std::span<const double> a(phi.data() + p * n, n);
        const std::span<const double> b(J.data() + p * n, n);
        std::vector<double> row(a.begin(), a.end());
        row.insert(row.end(), b.begin(), b.end());
        row.push_back(sp.reconstruct(a, b));
        o.table.rows.push_back(std::move(row));
    }
    o.status = cfg.strict && !sp.warnings().empty() ? 2 : 0;
    return o;
}

struct OracleCheck {
    const char* tag;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    int samples = 0;
};

Output do_oracle_check(const RunConfig& cfg) {
    if (cfg.suite != "gaussian") {
        throw ConfigError("field 'suite': only 'gaussian' is available");
    }
    const QuadratureConfig& q = cfg.quadrature;
    const CylinderDensity exf = make_uniform_phi_gaussian(1.0, q);
    const PlaneDensity gauss = make_plane_gaussian();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
    auto sign = [&]() { return unit(rng) < 0.5 ? -1.0 : 1.0; };

    std::vector<OracleCheck> checks;
    {
        OracleCheck c{oracle_tag_name(OracleTag::StripErf).data(), 0.0, 1e-6, 100};
        for (int i = 0; i < c.samples; ++i) {
            const int m = static_cast<int>(sign()) * (1 + static_cast<int>(unit(rng) * 4));
            const double nu = sign() * uniform(0.25, 4.0);
            const double alpha = uniform(-4.0, 4.0);
            const double X = m * (alpha + kPi) + uniform(-6.0, 6.0);
            const double d = std::abs(strip_tomogram(exf, X, {m, nu, alpha}, q) -
                                      oracle_strip_gaussian(X, m, nu, alpha).value);
            c.max_deviation = std::max(c.max_deviation, d);
        }
        checks.push_back(c);
    }
    {
        OracleCheck c{oracle_tag_name(OracleTag::HelixConst).data(), 0.0, 1e-8, 0};
        for (int m : {-3, -2, -1, 1, 2, 3}) {
            for (int i = 0; i < 50; ++i) {
                const double X = uniform(-10.0, 10.0);
                const double nu = sign() * uniform(0.1, 4.0);
                c.max_deviation = std::max(
                    c.max_deviation, std::abs(helix_tomogram(exf, X, {m, nu}, q) - oracle_helix_gaussian(m).value));
                ++c.samples;
            }
        }
        checks.push_back(c);
    }
    {
        OracleCheck c{oracle_tag_name(OracleTag::M0Gauss).data(), 0.0, 1e-8, 50};
        for (int i = 0; i < c.samples; ++i) {
            const double nu = sign() * uniform(0.25, 4.0);
            const double X = uniform(-3.0, 3.0) * std::abs(nu);
            const double ref = oracle_m0_gaussian(X, nu).value;
            const double s = strip_tomogram(exf, X, {0, nu, uniform(-4.0, 4.0)}, q);
            const double h = helix_tomogram(exf, X, {0, nu}, q);
            c.max_deviation = std::max({c.max_deviation, std::abs(s - ref), std::abs(h - ref)});
        }
        checks.push_back(c);
    }
    {
        OracleCheck c{oracle_tag_name(OracleTag::PlaneGauss).data(), 0.0, 1e-8, 50};
        for (int i = 0; i < c.samples; ++i) {
            const double mu = uniform(-2.0, 2.0);
            const double nu = uniform(-2.0, 2.0);
            const double X = uniform(-3.0, 3.0);
            c.max_deviation = std::max(c.max_deviation, std::abs(plane_tomogram(gauss, X, {mu, nu}, q) -
                                                                 oracle_plane_gaussian(X, mu, nu).value));
        }
        checks.push_back(c);
    }
    Output o;
    Json h = base_header(cfg, "oracle-check");
    h["suite"] = cfg.suite;
    Json list = Json::array();
    bool pass = true;
    o.table.columns = {"oracle", "samples", "maxDeviation", "tolerance", "pass"};
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        const bool ok = c.max_deviation <= c.tolerance;
        pass = pass && ok;
        list.push_back(c.tag);
        o.table.rows.push_back(
            {static_cast<double>(i), static_cast<double>(c.samples), c.max_deviation, c.tolerance, ok ? 1.0 : 0.0});
    }
    h["oracles"] = list;
    h["pass"] = pass;
    o.table.header = h;
    o.status = pass ? 0 : 2;
    return o;
}

Output do_limit(const RunConfig& cfg) {
    const DensitySpec& d = cfg.density;
    const PlaneDensity g = build_plane(d);
    std::vector<TomogramSample> samples;
    for (double X : {-3.0, -1.5, 0.0, 1.5, 3.0}) {
        for (double mu : {0.5, 1.0, 2.0}) {
            for (double nu : {0.5, 1.0, 2.0}) {
                samples.push_back({X, mu, nu});
            }
        }
    }
    ConvergenceReport rep = convergence_report(g, cfg.radii, samples, cfg.quadrature);
    if (!cfg.timing) {
        for (auto& r : rep.rows) {
            r.runtime_seconds = 0.0;
        }
    }
    Json h = base_header(cfg, "convergence");
    h["samples"] = samples.size();
    if (is_standard_gauss(d)) {
        const double R = rep.rows.back().R;
        const RadiusScaledDensity fR(wrap_plane_density(g, R), R);
        double err = 0.0;
        for (int i = 0; i < 10; ++i) {
            const int m = snap_mode(0.3 * i, R);
            const double k = kTwoPi * m / R;
            const std::complex<double> c = fourier_coefficient(fR, m, 0.0) * (R / kTwoPi);
            err = std::max(err, std::abs(c - std::exp(-0.5 * k * k) / std::sqrt(kTwoPi) / kTwoPi));
        }
        h["fourier_limit_error"] = err;
    }
    Output o;
    o.table = make_convergence_table(h, rep);
    return o;
}

Output do_helix_params(const RunConfig& cfg) {
    Output o;
    Json h = base_header(cfg, "helix-params");
    const int m = first(cfg.m, "m");
    if (cfg.from_params) {
        const HelixCoordinates c = helix_tomogram_from_params({cfg.theta, cfg.intercept, 0.0}, m);
        o.table.columns = {"m", "nu", "X"};
        o.table.rows.push_back({static_cast<double>(c.m), c.nu, c.X});
    } else {
        const HelixParams p = helix_params_from_tomogram(m, first(cfg.nu, "nu"), cfg.X);
        o.table.columns = {"theta", "intercept", "shift"};
        o.table.rows.push_back({p.theta, p.intercept, p.shift});
    }
    o.table.header = h;
    return o;
}

Output do_verify(const RunConfig& cfg) {
    std::ifstream is(cfg.input);
    if (!is) {
        throw ConfigError("field 'input': cannot open '" + cfg.input + "'");
    }
    const TableFile t = read_table(is);
    if (t.header.value("kind", std::string()) != "slice") {
        throw ConfigError("field 'input': not a slice file");
    }
    const std::size_t n = t.columns.size() - 1;
    double integral = 0.0;
    double min_value = 0.0;
    if (n == 1) {
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& r : t.rows) {
            x.push_back(r[0]);
            y.push_back(r[1]);
            min_value = std::min(min_value, r[1]);
        }
        integral = trapezoid(x, y);
    } else {
        const GridAxis axis = make_axis(t.header.at("axis").at("start").get<double>(),
                                        t.header.at("axis").at("start").get<double>() +
                                            t.header.at("axis").at("step").get<double>() *
                                                (t.header.at("axis").at("count").get<int>() - 1),
                                        t.header.at("axis").at("count").get<int>());
        for (std::size_t idx = 0; idx < t.rows.size(); ++idx) {
            std::size_t r = idx;
            double w = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                w *= axis.trapezoid_weight(static_cast<int>(r % axis.count));
                r /= axis.count;
            }
            integral += w * t.rows[idx][n];
            min_value = std::min(min_value, t.rows[idx][n]);
        }
    }
    const double tol = 2.0 * cfg.quadrature.mass_tol;
    const bool pass = std::abs(integral - 1.0) <= tol && min_value >= -1e-12;
    Output o;
    Json h = base_header(cfg, "verify");
    h["input"] = cfg.input;
    h["pass"] = pass;
    o.table.header = h;
    o.table.columns = {"integral", "deviation", "tolerance", "minValue", "pass"};
    o.table.rows.push_back({integral, integral - 1.0, tol, min_value, pass ? 1.0 : 0.0});
    o.status = pass ? 0 : 2;
    return o;
}

}  // namespace

const char* command_name(Command c) { return name_of(kCommands, c); }
const char* geometry_name(Geometry g) { return name_of(kGeometries, g); }

Json quadrature_to_json(const QuadratureConfig& c) {
    return Json{{"mass_tol", c.mass_tol},
                {"tail_tol", c.tail_tol},
                {"quad_points_per_cell", c.quad_points_per_cell},
                {"line_rule", name_of(kRules, c.line_rule)},
                {"mode_truncation", c.mode_truncation},
                {"nu_half_width", c.nu_half_width},
                {"nu_points", c.nu_points},
                {"x_points", c.x_points},
                {"momentum_cutoff", c.momentum_cutoff},
                {"x_half_width", c.x_half_width},
                {"plane_freq_points", c.plane_freq_points},
                {"polar_angles", c.polar_angles},
                {"polar_radial_points", c.polar_radial_points},
                {"polar_taper", c.polar_taper},
                {"reg_epsilon", c.reg_epsilon},
                {"radial_points", c.radial_points},
                {"radial_max", c.radial_max},
                {"spectral_tail_tol", c.spectral_tail_tol},
                {"use_conjugate_symmetry", c.use_conjugate_symmetry}};
}

QuadratureConfig quadrature_from_json(const Json& j, QuadratureConfig c) {
    FieldReader r(j, "quadrature.");
    r.get("mass_tol", c.mass_tol);
    r.get("tail_tol", c.tail_tol);
    r.get("quad_points_per_cell", c.quad_points_per_cell);
    r.get_enum("line_rule", kRules, c.line_rule);
    r.get("mode_truncation", c.mode_truncation);
    r.get("nu_half_width", c.nu_half_width);
    r.get("nu_points", c.nu_points);
    r.get("x_points", c.x_points);
    r.get("momentum_cutoff", c.momentum_cutoff);
    r.get("x_half_width", c.x_half_width);
    r.get("plane_freq_points", c.plane_freq_points);
    r.get("polar_angles", c.polar_angles);
    r.get("polar_radial_points", c.polar_radial_points);
    r.get("polar_taper", c.polar_taper);
    r.get("reg_epsilon", c.reg_epsilon);
    r.get("radial_points", c.radial_points);
    r.get("radial_max", c.radial_max);
    r.get("spectral_tail_tol", c.spectral_tail_tol);
    r.get("use_conjugate_symmetry", c.use_conjugate_symmetry);
    r.finish();
    validate_config(c);
    return c;
}

RunConfig run_config_from_json(const Json& j) {
    RunConfig c;
    FieldReader r(j, "");
    r.get_enum("command", kCommands, c.command);
    r.get_enum("geometry", kGeometries, c.geometry);
    r.get_enum("variant", kVariants, c.variant);
    if (c.geometry == Geometry::Plane || c.command == Command::Limit) {
        c.density.name = "gauss";
    }
    if (const Json* d = r.child("density")) {
        FieldReader dr(*d, "density.");
        dr.get("name", c.density.name);
        dr.get("sigma", c.density.sigma);
        dr.get("phi0", c.density.phi0);
        dr.get("sigma_phi", c.density.sigma_phi);
        dr.get("j0", c.density.j0);
        dr.get("sigma_j", c.density.sigma_j);
        dr.get("wrap_terms", c.density.wrap_terms);
        dr.get("q0", c.density.q0);
        dr.get("p0", c.density.p0);
        dr.get("sigma_q", c.density.sigma_q);
        dr.get("sigma_p", c.density.sigma_p);
        dr.get("path", c.density.path);
        dr.get("dimension", c.density.dimension);
        dr.finish();
    }
    r.get_list("m", c.m);
    r.get_list("nu", c.nu);
    r.get_list("alpha", c.alpha);
    r.get("mu", c.mu);
    r.get("x_min", c.x_min);
    r.get("x_max", c.x_max);
    r.get("x_points", c.x_points);
    r.get_list("phi", c.phi);
    r.get_list("j", c.j);
    r.get("tomograms", c.tomograms);
    r.get_enum("sampling_rule", kRules, c.sampling_rule);
    r.get_list("radii", c.radii);
    r.get("suite", c.suite);
    r.get("X", c.X);
    r.get("theta", c.theta);
    r.get("intercept", c.intercept);
    r.get("from_params", c.from_params);
    r.get("input", c.input);
    r.get("output", c.output);
    r.get("strict", c.strict);
    r.get("timing", c.timing);
    const bool torus = c.geometry == Geometry::Torus || c.command == Command::Torus;
    const Json* q = r.child("quadrature");
    if (torus) {
        const int n = c.density.dimension;
        const QuadratureConfig reduced = reduced_torus_config(n < 1 || n > 3 ? 1 : n);
        c.quadrature.mode_truncation = reduced.mode_truncation;
        c.quadrature.nu_points = reduced.nu_points;
    }
    if (q) {
        c.quadrature = quadrature_from_json(*q, c.quadrature);
    }
    r.finish();
    check_tomograms(c);
    return c;
}

Json run_config_to_json(const RunConfig& c) {
    Json d{{"name", c.density.name},         {"sigma", c.density.sigma},     {"phi0", c.density.phi0},
           {"sigma_phi", c.density.sigma_phi}, {"j0", c.density.j0},         {"sigma_j", c.density.sigma_j},
           {"wrap_terms", c.density.wrap_terms}, {"q0", c.density.q0},       {"p0", c.density.p0},
           {"sigma_q", c.density.sigma_q},   {"sigma_p", c.density.sigma_p}, {"path", c.density.path},
           {"dimension", c.density.dimension}};
    return Json{{"command", command_name(c.command)},
                {"geometry", geometry_name(c.geometry)},
                {"variant", name_of(kVariants, c.variant)},
                {"density", d},
                {"m", c.m},
                {"nu", c.nu},
                {"alpha", c.alpha},
                {"mu", c.mu},
                {"x_min", c.x_min},
                {"x_max", c.x_max},
                {"x_points", c.x_points},
                {"phi", c.phi},
                {"j", c.j},
                {"tomograms", c.tomograms},
                {"sampling_rule", name_of(kRules, c.sampling_rule)},
                {"radii", c.radii},
                {"suite", c.suite},
                {"X", c.X},
                {"theta", c.theta},
                {"intercept", c.intercept},
                {"from_params", c.from_params},
                {"input", c.input},
                {"output", c.output},
                {"strict", c.strict},
                {"timing", c.timing},
                {"quadrature", quadrature_to_json(c.quadrature)}};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Output o;
    try {
        validate_config(cfg.quadrature);
        switch (cfg.command) {
            case Command::Forward:
                o = do_forward(cfg);
                break;
            case Command::Inverse:
                o = do_inverse(cfg);
                break;
            case Command::OracleCheck:
                o = do_oracle_check(cfg);
                break;
            case Command::Roundtrip:
                o = do_roundtrip(cfg);
                break;
            case Command::Limit:
                o = do_limit(cfg);
                break;
            case Command::Torus:
                o = do_torus(cfg);
                break;
            case Command::HelixParams:
                o = do_helix_params(cfg);
                break;
            case Command::Verify:
                o = do_verify(cfg);
                break;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    o.table.header["config"] = run_config_to_json(cfg);
    if (cfg.output.empty()) {
        write_table(out, o.table);
    } else {
        std::ofstream os(cfg.output);
        if (!os) {
            err << "error: field 'output': cannot write '" << cfg.output << "'\n";
            return 1;
        }
        write_table(os, o.table);
    }
    for (const auto& w : o.table.header.value("warnings", Json::array())) {
        err << "warning: " << w.get<std::string>() << '\n';
    }
    if (o.status == 2) {
        err << (cfg.strict ? "accuracy warnings rejected by --strict\n" : "accuracy check failed\n");
    }
    return o.status;
}

}  // namespace cyltomo
