#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cyltomo/cli.hpp"
#include "cyltomo/errors.hpp"

using cyltomo::Json;

namespace {

struct Flag {
    CLI::Option* option;
    std::function<void(Json&)> apply;
};

template <typename T>
void add(CLI::App& app, std::vector<Flag>& flags, const std::string& name, T& storage, Json::json_pointer key,
         const std::string& help) {
    CLI::Option* opt = app.add_option(name, storage, help);
    if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<double>>) {
        opt->delimiter(',');
    }
    flags.push_back({opt, [&storage, key](Json& j) { j[key] = storage; }});
}

void add_switch(CLI::App& app, std::vector<Flag>& flags, const std::string& name, bool& storage,
                Json::json_pointer key, const std::string& help) {
    CLI::Option* opt = app.add_flag(name, storage, help);
    flags.push_back({opt, [&storage, key](Json& j) { j[key] = storage; }});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tomographic transforms on the plane, cylinder and torus"};
    app.set_version_flag("--version", "cyltomo 1.0");

    std::string command;
    std::string config_path;
    app.add_option("command", command,
                   "forward | inverse | oracle-check | roundtrip | limit | torus | helix-params | verify")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration; flags override its fields");

    std::vector<Flag> flags;
    std::string geometry, variant, density, density_file, tomograms, sampling_rule, suite, input, output, line_rule;
    double sigma = 0, phi0 = 0, sigma_phi = 0, j0 = 0, sigma_j = 0, q0 = 0, p0 = 0, sigma_q = 0, sigma_p = 0;
    int wrap_terms = 0, dimension = 0, x_points = 0;
    std::vector<int> m;
    std::vector<double> nu, alpha, phi, j, radii;
    double mu = 0, x_min = 0, x_max = 0, X = 0, theta = 0, intercept = 0;
    bool from_params = false, strict = false, timing = false, no_conj = false;
    int mode_truncation = 0, nu_points = 0, quad_x_points = 0, plane_freq_points = 0, radial_points = 0;
    double nu_half_width = 0, momentum_cutoff = 0, mass_tol = 0, reg_epsilon = 0, x_half_width = 0;

    using P = Json::json_pointer;
    add(app, flags, "--geometry", geometry, P("/geometry"), "plane | strip | helix | torus");
    add(app, flags, "--variant", variant, P("/variant"), "torus component family: strip | helix");
    add(app, flags, "--density", density, P("/density/name"), "exf | wrapped | gauss | file");
    add(app, flags, "--density-file", density_file, P("/density/path"), "density file (sets --density file)");
    add(app, flags, "--sigma", sigma, P("/density/sigma"), "exf momentum width");
    add(app, flags, "--phi0", phi0, P("/density/phi0"), "wrapped Gaussian angle centre");
    add(app, flags, "--sigma-phi", sigma_phi, P("/density/sigma_phi"), "wrapped Gaussian angle width");
    add(app, flags, "--j0", j0, P("/density/j0"), "wrapped Gaussian momentum centre");
    add(app, flags, "--sigma-j", sigma_j, P("/density/sigma_j"), "wrapped Gaussian momentum width");
    add(app, flags, "--wrap-terms", wrap_terms, P("/density/wrap_terms"), "wrap count (negative: automatic)");
    add(app, flags, "--q0", q0, P("/density/q0"), "plane Gaussian centre q");
    add(app, flags, "--p0", p0, P("/density/p0"), "plane Gaussian centre p");
    add(app, flags, "--sigma-q", sigma_q, P("/density/sigma_q"), "plane Gaussian width in q");
    add(app, flags, "--sigma-p", sigma_p, P("/density/sigma_p"), "plane Gaussian width in p");
    add(app, flags, "--dimension", dimension, P("/density/dimension"), "torus factor count N");
    add(app, flags, "--m", m, P("/m"), "winding numbers (comma separated for the torus)");
    add(app, flags, "--nu", nu, P("/nu"), "nu values");
    add(app, flags, "--alpha", alpha, P("/alpha"), "strip gauges");
    add(app, flags, "--mu", mu, P("/mu"), "plane mu");
    add(app, flags, "--x-min", x_min, P("/x_min"), "slice axis start");
    add(app, flags, "--x-max", x_max, P("/x_max"), "slice axis end");
    add(app, flags, "--x-points", x_points, P("/x_points"), "slice axis nodes");
    add(app, flags, "--phi", phi, P("/phi"), "evaluation angles (q for the plane)");
    add(app, flags, "--j", j, P("/j"), "evaluation momenta (p for the plane)");
    add(app, flags, "--tomograms", tomograms, P("/tomograms"), "density | oracle");
    add(app, flags, "--sampling-rule", sampling_rule, P("/sampling_rule"), "cell-exact | joseph");
    add(app, flags, "--radii", radii, P("/radii"), "limit study circumferences");
    add(app, flags, "--suite", suite, P("/suite"), "oracle suite");
    add(app, flags, "--X", X, P("/X"), "helix-params tomogram argument");
    add(app, flags, "--theta", theta, P("/theta"), "helix slope angle");
    add(app, flags, "--intercept", intercept, P("/intercept"), "helix intercept");
    add_switch(app, flags, "--from-params", from_params, P("/from_params"), "helix-params: chart to tomogram");
    add(app, flags, "--input", input, P("/input"), "verify: slice file");
    add(app, flags, "-o,--output", output, P("/output"), "output file (default stdout)");
    add_switch(app, flags, "--strict", strict, P("/strict"), "exit 2 on accuracy warnings");
    add_switch(app, flags, "--timing", timing, P("/timing"), "record runtimes in reports");
    add(app, flags, "--mode-truncation", mode_truncation, P("/quadrature/mode_truncation"), "inverse |m| cutoff");
    add(app, flags, "--nu-points", nu_points, P("/quadrature/nu_points"), "inverse nu nodes");
    add(app, flags, "--nu-half-width", nu_half_width, P("/quadrature/nu_half_width"), "inverse nu window");
    add(app, flags, "--quad-x-points", quad_x_points, P("/quadrature/x_points"), "X nodes per inverse slice");
    add(app, flags, "--x-half-width", x_half_width, P("/quadrature/x_half_width"), "plane inverse X box");
    add(app, flags, "--plane-freq-points", plane_freq_points, P("/quadrature/plane_freq_points"),
        "plane inverse frequency nodes");
    add(app, flags, "--momentum-cutoff", momentum_cutoff, P("/quadrature/momentum_cutoff"), "momentum window");
    add(app, flags, "--mass-tol", mass_tol, P("/quadrature/mass_tol"), "mass tolerance");
    add(app, flags, "--reg-epsilon", reg_epsilon, P("/quadrature/reg_epsilon"), "classical inverse cutoff");
    add(app, flags, "--radial-points", radial_points, P("/quadrature/radial_points"), "classical inverse r nodes");
    add(app, flags, "--line-rule", line_rule, P("/quadrature/line_rule"), "forward line rule");
    add_switch(app, flags, "--no-conjugate-symmetry", no_conj, P("/quadrature/use_conjugate_symmetry"),
               "evaluate every spectral coefficient");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    Json cfg = Json::object();
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return 1;
        }
        try {
            cfg = Json::parse(is);
        } catch (const Json::exception& e) {
            std::cerr << "error: config '" << config_path << "': " << e.what() << '\n';
            return 1;
        }
        if (!cfg.is_object()) {
            std::cerr << "error: config '" << config_path << "': expected a JSON object\n";
            return 1;
        }
    }
    cfg["command"] = command;
    for (const Flag& f : flags) {
        if (f.option->count() > 0) {
            f.apply(cfg);
        }
    }
    if (no_conj) {
        cfg["quadrature"]["use_conjugate_symmetry"] = false;
    }
    if (!density_file.empty() && !cfg["density"].contains("name")) {
        cfg["density"]["name"] = "file";
    }

    cyltomo::RunConfig rc;
    try {
        rc = cyltomo::run_config_from_json(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return cyltomo::run(rc, std::cout, std::cerr);
}
