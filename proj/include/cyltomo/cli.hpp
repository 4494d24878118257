#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cyltomo/config.hpp"
#include "cyltomo/io.hpp"
#include "cyltomo/spectral.hpp"

namespace cyltomo {

enum class Command { Forward, Inverse, OracleCheck, Roundtrip, Limit, Torus, HelixParams, Verify };
enum class Geometry { Plane, Strip, Helix, Torus };

struct DensitySpec {
    /// exf (phi-uniform Gaussian), wrapped, gauss (plane) or file.
    std::string name = "exf";
    double sigma = 1.0;
    double phi0 = 1.0;
    double sigma_phi = 0.7;
    double j0 = 0.0;
    double sigma_j = 1.0;
    /// Negative: smallest count meeting tail_tol.
    int wrap_terms = -1;
    double q0 = 0.0;
    double p0 = 0.0;
    double sigma_q = 1.0;
    double sigma_p = 1.0;
    std::string path;
    /// Number of identical factors of a torus product density.
    int dimension = 2;
};

struct RunConfig {
    Command command = Command::Forward;
    Geometry geometry = Geometry::Strip;
    /// Component tomogram family of torus runs.
    CircleVariant variant = CircleVariant::Strip;
    DensitySpec density;

    std::vector<int> m{1};
    std::vector<double> nu{1.0};
    std::vector<double> alpha{0.0};
    double mu = 1.0;

    /// Forward slice axis.
    double x_min = -3.141592653589793;
    double x_max = 3.141592653589793;
    int x_points = 101;

    /// Inverse evaluation points: (phi, J) or (q, p) tensor grid; torus: flattened points of N coordinates.
    std::vector<double> phi{0.0};
    std::vector<double> j{0.0};

    /// density or oracle.
    std::string tomograms = "density";
    /// Line rule used when densities are sampled for inverse transforms.
    LineRule sampling_rule = LineRule::Joseph;

    std::vector<double> radii{6.283185307179586, 62.83185307179586, 628.3185307179587};
    std::string suite = "gaussian";

    /// helix-params: X with (m, nu), or (theta, intercept) with m when from_params is set.
    double X = 0.0;
    double theta = -0.7853981633974483;
    double intercept = 0.0;
    bool from_params = false;

    /// verify: slice file to re-integrate.
    std::string input;

    QuadratureConfig quadrature;
    std::string output;
    bool strict = false;
    bool timing = false;
};

/// Throws ConfigError naming the offending field (unknown keys included).
RunConfig run_config_from_json(const Json& j);
Json run_config_to_json(const RunConfig& cfg);

Json quadrature_to_json(const QuadratureConfig& cfg);
QuadratureConfig quadrature_from_json(const Json& j, QuadratureConfig base = {});

const char* command_name(Command c);
const char* geometry_name(Geometry g);

/// Exit status: 0 success, 1 invalid configuration, 2 accuracy failure or warnings under strict.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cyltomo
