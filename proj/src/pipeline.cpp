#include "csmri/pipeline.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <random>

namespace csmri {
namespace {

ComplexImage gauss_blur(const ComplexImage& u, double sigma) {
    if (sigma <= 0.0) return u;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    const auto h = static_cast<long>(u.height), w = static_cast<long>(u.width);
    ComplexImage tmp(u.height, u.width, u.domain), out(u.height, u.width, u.domain);
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c) {
            cplx acc{0, 0};
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * u.data[r * w + ((c + i) % w + w) % w];
            tmp.data[r * w + c] = acc;
        }
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c) {
            cplx acc{0, 0};
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.data[(((r + i) % h + h) % h) * w + c];
            out.data[r * w + c] = acc;
        }
    return out;
}

ComplexImage median3_magnitude(const ComplexImage& u) {
    const auto h = static_cast<long>(u.height), w = static_cast<long>(u.width);
    ComplexImage out(u.height, u.width, u.domain);
    std::array<double, 9> window;
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c) {
            int n = 0;
            for (long dr = -1; dr <= 1; ++dr)
                for (long dc = -1; dc <= 1; ++dc) {
                    const long rr = std::clamp(r + dr, 0L, h - 1);
                    const long cc = std::clamp(c + dc, 0L, w - 1);
                    window[n++] = std::abs(u.data[rr * w + cc]);
                }
            std::nth_element(window.begin(), window.begin() + 4, window.end());
            const cplx z = u.data[r * w + c];
            const double m = std::abs(z);
            out.data[r * w + c] = (m > 0) ? z * (window[4] / m) : cplx{window[4], 0.0};
        }
    return out;
}

} // namespace

std::vector<std::string> denoiser_names() {
    return {"identity", "gauss", "wavelet-thresh", "median", "random"};
}

Denoiser make_denoiser(const std::string& name, const DenoiserOptions& opts) {
    if (name == "identity")
        return {name, [](const ComplexImage& u, double) { return u; }};
    if (name == "gauss")
        return {name, [sigma = opts.param](const ComplexImage& u, double level) {
                    return gauss_blur(u, sigma * level);
                }};
    if (name == "wavelet-thresh")
        return {name, [thr = opts.param, spec = opts.spec](const ComplexImage& u, double level) {
                    SparseCode code = wavelet_analyze(u, spec);
                    const double t = thr * level;
                    for (cplx& z : code.data) {
                        const double m = std::abs(z);
                        z = (m > t) ? z * ((m - t) / m) : cplx{0.0, 0.0};
                    }
                    return wavelet_synthesize(code, spec);
                }};
    if (name == "median")
        return {name, [](const ComplexImage& u, double) { return median3_magnitude(u); }};
    if (name == "random") {
        auto rng = std::make_shared<std::mt19937_64>(opts.seed);
        return {name, [rng, amp = opts.param](const ComplexImage& u, double) {
                    std::uniform_real_distribution<double> dist(-1.0, 1.0);
                    ComplexImage out(u.height, u.width, u.domain);
                    for (cplx& z : out.data) z = amp * cplx{dist(*rng), dist(*rng)};
                    return out;
                }};
    }
    throw ConfigError("unknown denoiser '" + name + "'");
}

SparseCode fidelity_step(const SparseCode& alpha_k, const ComplexImage& y,
                         const SamplingMask& mask, double rho, const WaveletSpec& spec,
                         double couple_rho1, const ComplexImage* couple_target) {
    if (rho <= 0) throw ConfigError("fidelity_step: rho must be positive");
    validate_shapes(y, mask);
    if (alpha_k.height != y.height || alpha_k.width != y.width)
        throw ShapeError("fidelity_step: code/observation shape mismatch");
    ComplexImage khat = fft_centered(wavelet_synthesize(alpha_k, spec));
    ComplexImage shat(y.height, y.width, Domain::kspace);
    if (couple_rho1 > 0.0) {
        if (!couple_target) throw ConfigError("fidelity_step: coupling target missing");
        shat = fft_centered(*couple_target);
    }
    ComplexImage sol(y.height, y.width, Domain::kspace);
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double m = mask.indicator[i] ? 1.0 : 0.0;
        sol.data[i] = (m * y.data[i] + couple_rho1 * shat.data[i] + rho * khat.data[i]) /
                      (m + couple_rho1 + rho);
    }
    return wavelet_analyze(ifft_centered(sol), spec);
}

ComplexImage denoise(const ComplexImage& u, const Denoiser& denoiser, double level) {
    ComplexImage v = denoiser.fn(u, level);
    if (v.height != u.height || v.width != u.width)
        throw std::runtime_error("denoiser '" + denoiser.name + "' changed the image shape");
    for (const cplx& z : v.data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::runtime_error("denoiser '" + denoiser.name + "' produced non-finite output");
    return v;
}

SparseCode momentum_prox(const SparseCode& v, const SparseCode& alpha_k,
                         const SolverConfig& cfg, const Objective& obj) {
    if (v.size() != alpha_k.size())
        throw ShapeError("momentum_prox: code shape mismatch");
    SparseCode g = obj.grad_f(v);
    SparseCode d(v.height, v.width);
    for (std::size_t i = 0; i < v.size(); ++i)
        d.data[i] = v.data[i] - cfg.eta1 * (g.data[i] + cfg.rho * (v.data[i] - alpha_k.data[i]));
    return prox_lp(d, ProxParams{cfg.eta1 * cfg.lambda, cfg.p});
}

CheckOutcome check(const SparseCode& v, const SparseCode& beta, const SparseCode& alpha_k,
                   double eps_k, const SolverConfig& cfg) {
    if (eps_k <= 0) throw ConfigError("check: eps_k must be positive");
    const double c_k = cfg.c_of_eps(eps_k);
    if (c_k <= 0)
        throw ConfigError("check: C^k = " + std::to_string(c_k) + " is not positive");
    double lhs, rhs;
    if (cfg.check_rule == CheckRule::prop1) {
        lhs = dist2(v.data, alpha_k.data);
        rhs = eps_k * dist2(beta.data, alpha_k.data);
    } else {
        lhs = dist2(v.data, beta.data);
        rhs = eps_k * dist2(alpha_k.data, beta.data);
    }
    CheckOutcome out;
    out.accepted = lhs <= rhs;
    out.chosen = out.accepted ? beta : alpha_k;
    out.beta = beta;
    out.lhs = lhs;
    out.rhs = rhs;
    out.c_k = c_k;
    return out;
}

SparseCode prior_step(const SparseCode& w, const SolverConfig& cfg, const Objective& obj) {
    if (!(cfg.eta2 < 1.0 / obj.lipschitz()))
        throw ConfigError("prior_step: eta2 must be < 1/L_f");
    SparseCode g = obj.grad_f(w);
    SparseCode d(w.height, w.width);
    for (std::size_t i = 0; i < w.size(); ++i)
        d.data[i] = w.data[i] - cfg.eta2 * g.data[i];
    SparseCode next = prox_lp(d, ProxParams{cfg.eta2 * cfg.lambda, cfg.p});

    const double phi_w = obj.eval_phi(w);
    const double phi_next = obj.eval_phi(next);
    const double margin = 1.0 / (2.0 * cfg.eta2) - obj.lipschitz() / 2.0;
    const double step = dist2(next.data, w.data);
    const double slack = 1e-9 * std::max(1.0, std::abs(phi_w));
    if (phi_next > phi_w - margin * step * step + slack)
        throw DescentViolation("prior_step: sufficient decrease violated (Phi(w)=" +
                               std::to_string(phi_w) + ", Phi(next)=" + std::to_string(phi_next) +
                               ")");
    return next;
}

} // namespace csmri
