#pragma once

#include <string>

#include "shellmodes/error.hpp"

namespace shellmodes {

/// Isotropic homogeneous material, SI units.
struct MaterialParams {
    double E = 2.069e11;  // Young modulus, Pa
    double nu = 0.3;      // Poisson ratio
    double rho = 7868.0;  // mass density, kg/m^3

    /// E/rho in (m/s)^2; eigenvalues are naturally reported in these units.
    double stiffness_ratio() const { return E / rho; }

    void validate() const {
        if (!(E > 0.0)) throw ShellError(ErrorCode::ConfigError, "Young modulus must be positive");
        if (!(rho > 0.0)) throw ShellError(ErrorCode::ConfigError, "density must be positive");
        if (!(nu >= 0.0)) throw ShellError(ErrorCode::ConfigError, "Poisson ratio must be >= 0");
        if (!(nu < 0.5))
            throw ShellError(ErrorCode::PoissonLocking, "Poisson ratio " + std::to_string(nu) + " >= 0.5");
    }

    friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

}  // namespace shellmodes
