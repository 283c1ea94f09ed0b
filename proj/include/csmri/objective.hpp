#pragma once

#include <optional>

#include "csmri/core.hpp"
#include "csmri/transforms.hpp"

namespace csmri {

/// Phi(alpha) = f(alpha) + lambda * sum |alpha_i|^p with
/// f(alpha) = 1/2 ||P F A alpha - y||^2  (+ optional rho1/2 ||A alpha - s||^2
/// coupling used by the Rician z-step).
class Objective {
public:
    Objective(ComplexImage y, SamplingMask mask, WaveletSpec spec, double lambda, double p,
              double lipschitz = 1.0);

    /// Adds the coupling term; raises the Lipschitz constant to base + rho1.
    void set_coupling(double rho1, ComplexImage target);

    double eval_f(const SparseCode& alpha) const;
    SparseCode grad_f(const SparseCode& alpha) const;
    double eval_g(const SparseCode& alpha) const;
    double eval_phi(const SparseCode& alpha) const;

    const ComplexImage& y() const { return y_; }
    const SamplingMask& mask() const { return mask_; }
    const WaveletSpec& spec() const { return spec_; }
    double lambda() const { return lambda_; }
    double p() const { return p_; }
    double lipschitz() const { return lipschitz_; }
    double coupling_weight() const { return rho1_; }
    const ComplexImage& couple_target() const {
        if (!couple_target_) throw ConfigError("Objective: no coupling target set");
        return *couple_target_;
    }

private:
    void check_shape(const SparseCode& alpha) const;

    ComplexImage y_;
    SamplingMask mask_;
    WaveletSpec spec_;
    double lambda_;
    double p_;
    double lipschitz_;
    double rho1_ = 0.0;
    std::optional<ComplexImage> couple_target_;
};

} // namespace csmri
