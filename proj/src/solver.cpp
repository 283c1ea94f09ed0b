#include "csmri/solver.hpp"

namespace csmri {

Variant parse_variant(const std::string& name) {
    if (name == "P") return Variant::prior_only;
    if (name == "FN") return Variant::fn;
    if (name == "FNP") return Variant::fnp;
    if (name == "full") return Variant::full;
    throw ConfigError("unknown variant '" + name + "' (expected P, FN, FNP or full)");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::prior_only: return "P";
        case Variant::fn: return "FN";
        case Variant::fnp: return "FNP";
        case Variant::full: return "full";
    }
    return "?";
}

SolveResult solve_objective(const Objective& obj, const SolverConfig& cfg,
                            const Denoiser& denoiser, Variant variant,
                            const SparseCode* alpha0) {
    cfg.validate();
    const ComplexImage& y = obj.y();
    const SamplingMask& mask = obj.mask();
    const WaveletSpec& spec = obj.spec();

    SparseCode alpha = alpha0 ? *alpha0 : adjoint_operator(y, mask, spec);
    ComplexImage x = wavelet_synthesize(alpha, spec);
    double phi = obj.eval_phi(alpha);

    SolveResult res;
    res.trace.push_back(TraceRow{0, phi, phi, false, 0.0,
                                 cfg.c_of_eps(cfg.effective_epsilon0()), 0.0});

    const bool guaranteed = variant == Variant::full || variant == Variant::prior_only;
    bool converged = false;
    std::size_t k = 0;
    for (; k < cfg.max_iters && !converged; ++k) {
        const double level =
            cfg.max_iters > 1
                ? cfg.denoise_level_begin + (cfg.denoise_level_end - cfg.denoise_level_begin) *
                                                static_cast<double>(k) /
                                                static_cast<double>(cfg.max_iters - 1)
                : cfg.denoise_level_begin;
        const double eps_k = cfg.epsilon_at(k);

        SparseCode w = alpha;
        bool accepted = false;
        double c_k = cfg.c_of_eps(eps_k);
        if (variant != Variant::prior_only) {
            SparseCode u = fidelity_step(alpha, y, mask, cfg.rho, spec, obj.coupling_weight(),
                                         obj.coupling_weight() > 0 ? &obj.couple_target() : nullptr);
            ComplexImage v_img = denoise(wavelet_synthesize(u, spec), denoiser, level);
            SparseCode v = wavelet_analyze(v_img, spec);
            if (variant == Variant::full) {
                SparseCode beta = momentum_prox(v, alpha, cfg, obj);
                CheckOutcome outcome = check(v, beta, alpha, eps_k, cfg);
                accepted = outcome.accepted;
                c_k = outcome.c_k;
                if (accepted) {
                    const double phi_beta = obj.eval_phi(beta);
                    const double d = dist2(beta.data, alpha.data);
                    const double slack = 1e-9 * std::max(1.0, std::abs(phi));
                    if (phi_beta > phi - outcome.c_k * d * d + slack)
                        throw DescentViolation(
                            "check accepted a step violating the guaranteed decrease");
                }
                w = std::move(outcome.chosen);
            } else {
                w = std::move(v);
            }
        }

        const double phi_w = obj.eval_phi(w);
        SparseCode alpha_next = (variant == Variant::fn) ? w : prior_step(w, cfg, obj);
        const double phi_next = obj.eval_phi(alpha_next);
        if (guaranteed) {
            const double slack = 1e-9 * std::max(1.0, std::abs(phi));
            if (phi_w > phi + slack || phi_next > phi_w + slack)
                throw DescentViolation("objective increased along a guaranteed variant");
        }

        ComplexImage x_next = wavelet_synthesize(alpha_next, spec);
        const double xn = norm2(x.data);
        const double rel = xn > 0 ? dist2(x_next.data, x.data) / xn : norm2(x_next.data);
        converged = rel <= cfg.tol;

        res.trace.push_back(TraceRow{k + 1, phi_next, phi_w, accepted,
                                     dist2(alpha_next.data, w.data), c_k, rel});
        alpha = std::move(alpha_next);
        x = std::move(x_next);
        phi = phi_next;
    }

    res.alpha_star = std::move(alpha);
    res.x_star = std::move(x);
    res.iterations_used = k;
    res.converged = converged;
    return res;
}

SolveResult solve(const ComplexImage& y, const SamplingMask& mask, const SolverConfig& cfg,
                  const Denoiser& denoiser, Variant variant) {
    Objective obj(y, mask, cfg.wavelet_spec(), cfg.lambda, cfg.p, cfg.lipschitz);
    return solve_objective(obj, cfg, denoiser, variant, nullptr);
}

} // namespace csmri
