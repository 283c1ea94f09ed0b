#pragma once

#include "csmri/pipeline.hpp"

namespace csmri {

enum class Variant { prior_only, fn, fnp, full };

Variant parse_variant(const std::string& name); // "P", "FN", "FNP", "full"
std::string variant_name(Variant v);

struct SolveResult {
    SparseCode alpha_star;
    ComplexImage x_star;
    IterateTrace trace;
    std::size_t iterations_used = 0;
    bool converged = false;
    std::vector<double> rician_mismatch; // filled by solve_rician only
};

/// Alg. outer loop: u = fidelity, v = denoise, w = check, alpha = prior step.
/// Initialization is the zero-filled reconstruction A^T F^H P^T y.
SolveResult solve(const ComplexImage& y, const SamplingMask& mask, const SolverConfig& cfg,
                  const Denoiser& denoiser, Variant variant = Variant::full);

/// Same loop on an externally prepared objective (used by the Rician z-step).
SolveResult solve_objective(const Objective& obj, const SolverConfig& cfg,
                            const Denoiser& denoiser, Variant variant,
                            const SparseCode* alpha0 = nullptr);

} // namespace csmri
