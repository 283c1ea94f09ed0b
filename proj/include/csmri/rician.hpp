#pragma once

#include "csmri/pipeline.hpp"
#include "csmri/solver.hpp"

namespace csmri {

struct RicianParams {
    double sigma = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (sigma <= 0) throw ConfigError("RicianParams: sigma must be positive");
    }
};

struct RicianSolverConfig {
    double rho1 = 0.01;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    SolverConfig inner;
    std::size_t outer_iters = 3;
    double sigma = 0.0; // known noise level passed to the remover

    void validate() const {
        if (rho1 <= 0) throw ConfigError("RicianSolverConfig: rho1 must be positive");
        if (lambda1 < 0 || lambda2 < 0)
            throw ConfigError("RicianSolverConfig: lambdas must be >= 0");
        if (outer_iters == 0) throw ConfigError("RicianSolverConfig: outer_iters must be positive");
        if (sigma < 0) throw ConfigError("RicianSolverConfig: sigma must be >= 0");
    }
};

/// x_n = sqrt((x_c + n1)^2 + n2^2) with n1, n2 ~ N(0, sigma^2) per pixel.
RealImage add_rician(const RealImage& x_c, const RicianParams& params);

/// Squared-domain bias correction: sqrt(max(x_n^2 - 2 sigma^2, 0)), then the
/// given image denoiser. The classical stand-in for the two-stage networks.
RealImage rician_bias_correct(const RealImage& x_n, double sigma,
                              const Denoiser& denoiser, double level = 1.0);

/// Remover plug-in built from bias correction + an inner denoiser.
Denoiser make_rician_remover(double sigma, const Denoiser& inner, double level = 1.0);

/// Outer alternation: z-step reconstructs the noisy magnitude image from y
/// with a coupling pull toward the current estimate; x-step applies the
/// remover and an lp prior shrinkage with lambda2.
SolveResult solve_rician(const ComplexImage& y, const SamplingMask& mask,
                         const RicianSolverConfig& cfg, const Denoiser& remover,
                         const Denoiser& inner_denoiser = make_denoiser("identity"));

} // namespace csmri
