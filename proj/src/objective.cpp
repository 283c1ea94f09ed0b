#include "csmri/objective.hpp"

namespace csmri {

Objective::Objective(ComplexImage y, SamplingMask mask, WaveletSpec spec, double lambda,
                     double p, double lipschitz)
    : y_(std::move(y)), mask_(std::move(mask)), spec_(spec), lambda_(lambda), p_(p),
      lipschitz_(lipschitz) {
    validate_shapes(y_, mask_);
    validate_wavelet_spec(y_.height, y_.width, spec_);
    if (y_.domain != Domain::kspace)
        throw ShapeError("Objective: observation must be k-space data");
    if (lambda_ < 0) throw ConfigError("Objective: lambda must be >= 0");
    if (!(p_ > 0.0 && p_ <= 1.0)) throw ConfigError("Objective: p must lie in (0,1]");
    if (lipschitz_ <= 0) throw ConfigError("Objective: lipschitz must be positive");
}

void Objective::set_coupling(double rho1, ComplexImage target) {
    if (rho1 < 0) throw ConfigError("Objective: coupling weight must be >= 0");
    if (target.height != y_.height || target.width != y_.width)
        throw ShapeError("Objective: coupling target shape mismatch");
    if (target.domain != Domain::image)
        throw ShapeError("Objective: coupling target must be image-domain");
    rho1_ = rho1;
    couple_target_ = std::move(target);
    lipschitz_ = 1.0 + rho1_;
}

void Objective::check_shape(const SparseCode& alpha) const {
    if (alpha.height != y_.height || alpha.width != y_.width)
        throw ShapeError("Objective: code shape " + std::to_string(alpha.height) + "x" +
                         std::to_string(alpha.width) + " does not match observation");
}

double Objective::eval_f(const SparseCode& alpha) const {
    check_shape(alpha);
    ComplexImage x = wavelet_synthesize(alpha, spec_);
    ComplexImage r = sample(fft_centered(x), mask_);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += std::norm(r.data[i] - y_.data[i]);
    double val = 0.5 * s;
    if (rho1_ > 0.0) {
        double c = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            c += std::norm(x.data[i] - couple_target_->data[i]);
        val += 0.5 * rho1_ * c;
    }
    return val;
}

SparseCode Objective::grad_f(const SparseCode& alpha) const {
    check_shape(alpha);
    ComplexImage x = wavelet_synthesize(alpha, spec_);
    ComplexImage r = sample(fft_centered(x), mask_);
    for (std::size_t i = 0; i < r.size(); ++i) r.data[i] -= y_.data[i];
    SparseCode g = adjoint_operator(r, mask_, spec_);
    if (rho1_ > 0.0) {
        ComplexImage dx = x;
        for (std::size_t i = 0; i < dx.size(); ++i) dx.data[i] -= couple_target_->data[i];
        SparseCode gc = wavelet_analyze(dx, spec_);
        for (std::size_t i = 0; i < g.size(); ++i) g.data[i] += rho1_ * gc.data[i];
    }
    return g;
}

double Objective::eval_g(const SparseCode& alpha) const {
    double s = 0.0;
    for (const cplx& z : alpha.data) s += std::pow(std::abs(z), p_);
    return lambda_ * s;
}

double Objective::eval_phi(const SparseCode& alpha) const {
    return eval_f(alpha) + eval_g(alpha);
}

} // namespace csmri
