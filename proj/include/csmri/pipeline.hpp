#pragma once

#include <functional>
#include <vector>

#include "csmri/core.hpp"
#include "csmri/objective.hpp"
#include "csmri/prox.hpp"
#include "csmri/transforms.hpp"

namespace csmri {

/// Pluggable image-to-image denoiser. `level` is a per-iteration strength
/// knob (built-ins scale their internal parameter by it).
struct Denoiser {
    std::string name;
    std::function<ComplexImage(const ComplexImage&, double level)> fn;
};

struct DenoiserOptions {
    double param = 1.0;      // sigma for gauss, threshold for wavelet-thresh
    std::uint64_t seed = 0;  // for the adversarial random denoiser
    WaveletSpec spec{};      // for wavelet-thresh
};

/// Registry of built-ins: identity, gauss, wavelet-thresh, median, random.
Denoiser make_denoiser(const std::string& name, const DenoiserOptions& opts = {});
std::vector<std::string> denoiser_names();

struct CheckOutcome {
    SparseCode chosen;
    bool accepted = false;
    SparseCode beta;
    double lhs = 0.0;
    double rhs = 0.0;
    double c_k = 0.0;
};

/// Exact minimizer of 1/2||PFAu - y||^2 + rho/2 ||u - alpha_k||^2
/// (diagonal solve in k-space). With couple_rho1 > 0 the two-quadratic
/// Rician z-step fidelity is solved instead.
SparseCode fidelity_step(const SparseCode& alpha_k, const ComplexImage& y,
                         const SamplingMask& mask, double rho, const WaveletSpec& spec,
                         double couple_rho1 = 0.0, const ComplexImage* couple_target = nullptr);

/// Applies the plug-in and validates its output contract.
ComplexImage denoise(const ComplexImage& u, const Denoiser& denoiser, double level = 1.0);

/// beta = prox_{eta1 lambda}(v - eta1 (grad f(v) + rho (v - alpha_k))).
SparseCode momentum_prox(const SparseCode& v, const SparseCode& alpha_k,
                         const SolverConfig& cfg, const Objective& obj);

/// First-order optimality check; accepted => chosen = beta, else alpha_k.
CheckOutcome check(const SparseCode& v, const SparseCode& beta, const SparseCode& alpha_k,
                   double eps_k, const SolverConfig& cfg);

/// alpha_{k+1} = prox_{eta2 lambda}(w - eta2 grad f(w)); asserts the
/// sufficient-decrease inequality and throws DescentViolation on failure.
SparseCode prior_step(const SparseCode& w, const SolverConfig& cfg, const Objective& obj);

} // namespace csmri
