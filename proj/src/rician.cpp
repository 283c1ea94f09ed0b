#include "csmri/rician.hpp"

#include <random>

namespace csmri {

RealImage add_rician(const RealImage& x_c, const RicianParams& params) {
    params.validate();
    for (double v : x_c.data)
        if (v < 0) throw std::invalid_argument("add_rician: input must be nonnegative");
    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> gauss(0.0, params.sigma);
    RealImage out(x_c.height, x_c.width);
    for (std::size_t i = 0; i < x_c.size(); ++i) {
        const double n1 = gauss(rng), n2 = gauss(rng);
        out.data[i] = std::hypot(x_c.data[i] + n1, n2);
    }
    return out;
}

RealImage rician_bias_correct(const RealImage& x_n, double sigma, const Denoiser& denoiser,
                              double level) {
    if (sigma < 0) throw std::invalid_argument("rician_bias_correct: sigma must be >= 0");
    ComplexImage stage(x_n.height, x_n.width, Domain::image);
    for (std::size_t i = 0; i < x_n.size(); ++i) {
        const double sq = x_n.data[i] * x_n.data[i] - 2.0 * sigma * sigma;
        stage.data[i] = cplx{std::sqrt(std::max(sq, 0.0)), 0.0};
    }
    ComplexImage den = denoise(stage, denoiser, level);
    RealImage out(x_n.height, x_n.width);
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = std::abs(den.data[i]);
    return out;
}

Denoiser make_rician_remover(double sigma, const Denoiser& inner, double level) {
    return {"rician-remover(" + inner.name + ")",
            [sigma, inner, level](const ComplexImage& u, double) {
                RealImage mag(u.height, u.width);
                for (std::size_t i = 0; i < u.size(); ++i) mag.data[i] = std::abs(u.data[i]);
                RealImage corrected = rician_bias_correct(mag, sigma, inner, level);
                ComplexImage out(u.height, u.width, u.domain);
                for (std::size_t i = 0; i < out.size(); ++i)
                    out.data[i] = cplx{corrected.data[i], 0.0};
                return out;
            }};
}

SolveResult solve_rician(const ComplexImage& y, const SamplingMask& mask,
                         const RicianSolverConfig& cfg, const Denoiser& remover,
                         const Denoiser& inner_denoiser) {
    cfg.validate();
    const WaveletSpec spec = cfg.inner.wavelet_spec();

    SolverConfig zcfg = cfg.inner;
    zcfg.lambda = cfg.lambda1;
    zcfg.lipschitz = 1.0 + cfg.rho1;
    // Keep the guaranteed step-size regime on the extended objective.
    zcfg.eta1 = std::min(zcfg.eta1, 0.9 / zcfg.lipschitz);
    zcfg.eta2 = std::min(zcfg.eta2, 0.9 / zcfg.lipschitz);
    zcfg.validate();

    // Current magnitude estimate; the z-step pulls toward it.
    SparseCode alpha_zf = adjoint_operator(y, mask, spec);
    ComplexImage x_est = wavelet_synthesize(alpha_zf, spec);
    for (cplx& z : x_est.data) z = cplx{std::abs(z), 0.0};

    SolveResult last_inner;
    SparseCode alpha_x;
    std::vector<double> mismatch;
    std::optional<SparseCode> warm;
    for (std::size_t t = 0; t < cfg.outer_iters; ++t) {
        Objective obj(y, mask, spec, cfg.lambda1, cfg.inner.p, zcfg.lipschitz);
        obj.set_coupling(cfg.rho1, x_est);
        last_inner = solve_objective(obj, zcfg, inner_denoiser, Variant::full,
                                     warm ? &*warm : nullptr);
        warm = last_inner.alpha_star;
        const ComplexImage& z_img = last_inner.x_star;

        // Squared-domain data mismatch || sqrt(x^2 + 2 sigma^2) - |z| ||.
        double mm = 0.0;
        for (std::size_t i = 0; i < z_img.size(); ++i) {
            const double xm = std::abs(x_est.data[i]);
            const double model = std::sqrt(xm * xm + 2.0 * cfg.sigma * cfg.sigma);
            const double d = model - std::abs(z_img.data[i]);
            mm += d * d;
        }
        mismatch.push_back(std::sqrt(mm));

        // x-step: remover then lp shrinkage with lambda2.
        ComplexImage x_den = denoise(z_img, remover);
        alpha_x = wavelet_analyze(x_den, spec);
        if (cfg.lambda2 > 0.0)
            alpha_x = prox_lp(alpha_x, ProxParams{cfg.inner.eta2 * cfg.lambda2, cfg.inner.p});
        x_est = wavelet_synthesize(alpha_x, spec);
        for (cplx& z : x_est.data) z = cplx{std::abs(z), 0.0};
    }

    SolveResult res;
    res.alpha_star = std::move(alpha_x);
    res.x_star = wavelet_synthesize(res.alpha_star, spec);
    res.trace = std::move(last_inner.trace);
    res.iterations_used = last_inner.iterations_used;
    res.converged = last_inner.converged;
    res.rician_mismatch = std::move(mismatch);
    return res;
}

} // namespace csmri
