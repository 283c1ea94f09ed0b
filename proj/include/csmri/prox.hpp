#pragma once

#include "csmri/core.hpp"

namespace csmri {

/// Effective threshold weight tau = eta * lambda and exponent p in (0,1].
struct ProxParams {
    double tau = 0.0;
    double p = 0.8;

    void validate() const {
        if (tau < 0) throw ConfigError("ProxParams: tau must be >= 0");
        if (!(p > 0.0 && p <= 1.0)) throw ConfigError("ProxParams: p must lie in (0,1]");
    }
};

/// argmin_{x >= 0} tau * x^p + 1/2 (x - v)^2, with the tie at the hard
/// threshold resolved to 0.
double prox_lp_scalar(double v, const ProxParams& params);

/// Elementwise complex prox: modulus shrunk, phase preserved.
SparseCode prox_lp(const SparseCode& v, const ProxParams& params);

} // namespace csmri
