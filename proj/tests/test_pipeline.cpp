#include <doctest.h>

#include "csmri/masks.hpp"
#include "csmri/pipeline.hpp"
#include "test_helpers.hpp"

using namespace csmri;
using namespace csmri::testing;

namespace {

// Conjugate gradient on the normal equations of the fidelity subproblem:
// (A^H F^H P^T P F A + rho I) u = A^H F^H P^T y + rho alpha_k.
SparseCode fidelity_cg_oracle(const SparseCode& alpha_k, const ComplexImage& y,
                              const SamplingMask& mask, double rho, const WaveletSpec& spec) {
    auto apply = [&](const SparseCode& u) {
        SparseCode out = adjoint_operator(forward_operator(u, mask, spec), mask, spec);
        for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += rho * u.data[i];
        return out;
    };
    SparseCode b = adjoint_operator(y, mask, spec);
    for (std::size_t i = 0; i < b.size(); ++i) b.data[i] += rho * alpha_k.data[i];

    SparseCode x(alpha_k.height, alpha_k.width);
    SparseCode r = b, p = b;
    double rs = inner(r.data, r.data).real();
    for (int it = 0; it < 500 && rs > 1e-26; ++it) {
        SparseCode ap = apply(p);
        const double alpha = rs / inner(p.data, ap.data).real();
        for (std::size_t i = 0; i < x.size(); ++i) {
            x.data[i] += alpha * p.data[i];
            r.data[i] -= alpha * ap.data[i];
        }
        const double rs_new = inner(r.data, r.data).real();
        for (std::size_t i = 0; i < p.size(); ++i)
            p.data[i] = r.data[i] + (rs_new / rs) * p.data[i];
        rs = rs_new;
    }
    return x;
}

} // namespace

TEST_CASE("fidelity_step: consistent data is a fixed point") {
    std::mt19937_64 rng(31);
    const std::size_t n = 16;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SamplingMask full(n, n, std::vector<std::uint8_t>(n * n, 1));
    SparseCode alpha = random_code(n, rng);
    ComplexImage y = forward_operator(alpha, full, spec);

    for (double rho : {0.1, 5.0, 100.0}) {
        SparseCode u = fidelity_step(alpha, y, full, rho, spec);
        CHECK(dist2(u.data, alpha.data) < 1e-10 * norm2(alpha.data));
    }
}

TEST_CASE("fidelity_step: huge rho pins the previous iterate") {
    std::mt19937_64 rng(33);
    const std::size_t n = 16;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SamplingMask mask = radial_mask(n, n, 0.4, 2);
    ComplexImage y = sample(random_image(n, rng, Domain::kspace), mask);
    SparseCode alpha = random_code(n, rng);
    SparseCode u = fidelity_step(alpha, y, mask, 1e8, spec);
    CHECK(dist2(u.data, alpha.data) < 1e-6 * norm2(alpha.data));
}

TEST_CASE("fidelity_step matches the CG oracle and kills the gradient") {
    std::mt19937_64 rng(35);
    const std::size_t n = 16;
    WaveletSpec spec{WaveletFamily::db4, 2};
    for (int t = 0; t < 5; ++t) {
        SamplingMask mask = gaussian_mask(n, n, 0.4, rng());
        ComplexImage y = sample(random_image(n, rng, Domain::kspace), mask);
        SparseCode alpha = random_code(n, rng);
        const double rho = 5.0;

        SparseCode u = fidelity_step(alpha, y, mask, rho, spec);
        SparseCode cg = fidelity_cg_oracle(alpha, y, mask, rho, spec);
        CHECK(dist2(u.data, cg.data) < 1e-8 * (1.0 + norm2(cg.data)));

        // First-order condition of the subproblem at u.
        SparseCode g = adjoint_operator(forward_operator(u, mask, spec), mask, spec);
        SparseCode ay = adjoint_operator(y, mask, spec);
        for (std::size_t i = 0; i < g.size(); ++i)
            g.data[i] += -ay.data[i] + rho * (u.data[i] - alpha.data[i]);
        CHECK(norm2(g.data) <= 1e-8 * (1.0 + norm2(y.data)));
    }
}

TEST_CASE("denoiser built-ins") {
    std::mt19937_64 rng(37);
    ComplexImage u = random_image(16, rng);

    SUBCASE("identity") {
        ComplexImage v = denoise(u, make_denoiser("identity"));
        CHECK(dist2(v.data, u.data) == 0.0);
    }
    SUBCASE("wavelet threshold 0 is the identity") {
        DenoiserOptions opts;
        opts.param = 0.0;
        opts.spec = WaveletSpec{WaveletFamily::db4, 2};
        ComplexImage v = denoise(u, make_denoiser("wavelet-thresh", opts));
        CHECK(dist2(v.data, u.data) < 1e-10 * norm2(u.data));
    }
    SUBCASE("gaussian blur of a delta is the (unit-mass) kernel") {
        ComplexImage delta(16, 16, Domain::image);
        delta.at(8, 8) = cplx{1.0, 0.0};
        DenoiserOptions opts;
        opts.param = 1.2;
        ComplexImage v = denoise(delta, make_denoiser("gauss", opts));
        cplx mass{0, 0};
        for (const cplx& z : v.data) mass += z;
        CHECK(std::abs(mass - cplx{1.0, 0.0}) < 1e-12);
        // Separable kernel value at the center equals the 1D peak squared.
        CHECK(std::abs(v.at(8, 8)) > std::abs(v.at(8, 9)));
    }
    SUBCASE("random denoiser is deterministic under its seed") {
        DenoiserOptions opts;
        opts.seed = 99;
        ComplexImage a = denoise(u, make_denoiser("random", opts));
        ComplexImage b = denoise(u, make_denoiser("random", opts));
        CHECK(dist2(a.data, b.data) == 0.0);
    }
    SUBCASE("unknown plug-in") {
        CHECK_THROWS_AS(make_denoiser("nope"), ConfigError);
    }
    SUBCASE("contract violation is caught") {
        Denoiser bad{"bad", [](const ComplexImage& img, double) {
                         return ComplexImage(img.height / 2, img.width / 2, img.domain);
                     }};
        CHECK_THROWS_WITH_AS(denoise(u, bad), doctest::Contains("bad"), std::runtime_error);
    }
}

TEST_CASE("momentum_prox limiting cases") {
    std::mt19937_64 rng(41);
    const std::size_t n = 8;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SamplingMask full(n, n, std::vector<std::uint8_t>(n * n, 1));
    SparseCode alpha = random_code(n, rng);
    ComplexImage y = forward_operator(alpha, full, spec);

    SolverConfig cfg;
    cfg.lambda = 0.0;
    Objective obj(y, full, spec, cfg.lambda, cfg.p);

    // v = alpha at the exact fit: stationary.
    SparseCode beta = momentum_prox(alpha, alpha, cfg, obj);
    CHECK(dist2(beta.data, alpha.data) < 1e-12 * norm2(alpha.data));

    // lambda = 0: plain gradient step with the momentum correction.
    SparseCode v = random_code(n, rng);
    SparseCode g = obj.grad_f(v);
    beta = momentum_prox(v, alpha, cfg, obj);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx expect =
            v.data[i] - cfg.eta1 * (g.data[i] + cfg.rho * (v.data[i] - alpha.data[i]));
        CHECK(std::abs(beta.data[i] - expect) < 1e-12);
    }
}

TEST_CASE("momentum_prox decreases its inner objective") {
    std::mt19937_64 rng(43);
    const std::size_t n = 8;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SamplingMask mask = gaussian_mask(n, n, 0.5, 7);
    ComplexImage y = sample(random_image(n, rng, Domain::kspace), mask);
    SolverConfig cfg;
    cfg.lambda = 0.01;
    Objective obj(y, mask, spec, cfg.lambda, cfg.p);

    SparseCode alpha = random_code(n, rng);
    SparseCode v = random_code(n, rng);
    SparseCode beta = momentum_prox(v, alpha, cfg, obj);

    SparseCode g = obj.grad_f(v);
    SparseCode d(n, n);
    for (std::size_t i = 0; i < v.size(); ++i)
        d.data[i] = v.data[i] - cfg.eta1 * (g.data[i] + cfg.rho * (v.data[i] - alpha.data[i]));
    auto inner_obj = [&](const SparseCode& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += cfg.lambda * std::pow(std::abs(x.data[i]), cfg.p) +
                 std::norm(x.data[i] - d.data[i]) / (2.0 * cfg.eta1);
        return s;
    };
    CHECK(inner_obj(beta) <= inner_obj(v) + 1e-12);
    CHECK(inner_obj(beta) <= inner_obj(alpha) + 1e-12);
}

TEST_CASE("check outcomes") {
    std::mt19937_64 rng(47);
    const std::size_t n = 8;
    SolverConfig cfg;
    const double eps = cfg.effective_epsilon0();
    SparseCode alpha = random_code(n, rng);
    SparseCode beta = random_code(n, rng);

    // v = alpha: lhs = 0, always accepted.
    CheckOutcome acc = check(alpha, beta, alpha, eps, cfg);
    CHECK(acc.accepted);
    CHECK(dist2(acc.chosen.data, beta.data) == 0.0);
    CHECK(acc.c_k > 0.0);

    // beta = alpha but v != alpha: rhs = 0 < lhs, rejected.
    SparseCode v = random_code(n, rng);
    CheckOutcome rej = check(v, alpha, alpha, eps, cfg);
    CHECK(!rej.accepted);
    CHECK(dist2(rej.chosen.data, alpha.data) == 0.0);

    // Scale consistency: scaling both displacements preserves the decision.
    SparseCode v2 = alpha, beta2 = alpha;
    for (std::size_t i = 0; i < n * n; ++i) {
        v2.data[i] += 3.7 * (v.data[i] - alpha.data[i]);
        beta2.data[i] += 3.7 * (beta.data[i] - alpha.data[i]);
    }
    CHECK(check(v, beta, alpha, eps, cfg).accepted ==
          check(v2, beta2, alpha, eps, cfg).accepted);

    // Nonpositive C^k is a configuration error.
    CHECK_THROWS_AS(check(v, beta, alpha, 1e9, cfg), ConfigError);
}

TEST_CASE("prior_step descent property sweep") {
    std::mt19937_64 rng(53);
    const std::size_t n = 8;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SolverConfig cfg;
    cfg.lambda = 0.05;
    int runs = 0;
    for (int t = 0; t < 100; ++t) {
        SamplingMask mask = gaussian_mask(n, n, 0.4, rng());
        ComplexImage y = sample(random_image(n, rng, Domain::kspace), mask);
        Objective obj(y, mask, spec, cfg.lambda, cfg.p);
        SparseCode w = random_code(n, rng);
        SparseCode next = prior_step(w, cfg, obj); // throws on violation
        const double margin = 1.0 / (2.0 * cfg.eta2) - obj.lipschitz() / 2.0;
        const double step = dist2(next.data, w.data);
        CHECK(obj.eval_phi(next) <=
              obj.eval_phi(w) - margin * step * step + 1e-9 * (1.0 + obj.eval_phi(w)));
        ++runs;
    }
    CHECK(runs == 100);
}

TEST_CASE("prior_step limiting cases") {
    std::mt19937_64 rng(59);
    const std::size_t n = 8;
    WaveletSpec spec{WaveletFamily::db4, 2};
    SamplingMask full(n, n, std::vector<std::uint8_t>(n * n, 1));
    SparseCode w = random_code(n, rng);
    ComplexImage y = forward_operator(w, full, spec);

    SolverConfig cfg;
    cfg.lambda = 0.0;
    Objective obj(y, full, spec, 0.0, cfg.p);

    // Zero gradient and identity prox: fixed point.
    SparseCode next = prior_step(w, cfg, obj);
    CHECK(dist2(next.data, w.data) < 1e-12 * norm2(w.data));

    // lambda = 0: plain gradient descent step decreases f.
    SparseCode off = random_code(n, rng);
    CHECK(obj.eval_f(prior_step(off, cfg, obj)) <= obj.eval_f(off));
}
