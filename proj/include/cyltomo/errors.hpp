#pragma once

#include <stdexcept>
#include <string>

namespace cyltomo {

/// Argument outside the mathematical domain of an operation (sigma <= 0, R <= 0, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// The transform parameters select no line at all, e.g. (mu, nu) = (0, 0).
class DegenerateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A grid, axis or quadrature setting cannot support the requested computation.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters fall outside the chart of a parametrization (helix chart at m = 0 or nu = 0).
class ChartError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A closed-form reference was asked for outside the case it describes.
class OracleError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

}  // namespace cyltomo
