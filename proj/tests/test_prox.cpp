#include <doctest.h>

#include <random>

#include "csmri/prox.hpp"

using namespace csmri;

namespace {

double prox_objective(double x, double v, double tau, double p) {
    return tau * std::pow(x, p) + 0.5 * (x - v) * (x - v);
}

// Dense-grid argmin oracle: coarse pass at 1e-4, refined pass at 1e-6
// around the coarse winner, with 0 always a candidate.
double grid_oracle(double v, double tau, double p) {
    double best_x = 0.0, best = prox_objective(0.0, v, tau, p);
    for (double x = 0.0; x <= v + 1e-4; x += 1e-4) {
        const double f = prox_objective(x, v, tau, p);
        if (f < best) { best = f; best_x = x; }
    }
    const double lo = std::max(0.0, best_x - 2e-4), hi = std::min(v, best_x + 2e-4);
    for (double x = lo; x <= hi; x += 1e-6) {
        const double f = prox_objective(x, v, tau, p);
        if (f < best) { best = f; best_x = x; }
    }
    return best_x;
}

} // namespace

TEST_CASE("prox p=1 reduces to the soft threshold") {
    CHECK(prox_lp_scalar(3.0, {1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(prox_lp_scalar(0.5, {1.0, 1.0}) == 0.0);
    CHECK(prox_lp_scalar(0.0, {0.7, 0.9}) == 0.0);
}

TEST_CASE("prox golden value against frozen grid oracle") {
    // grid_oracle(2.0, 0.5, 0.8) computed once up front: 1.637574
    const double x = prox_lp_scalar(2.0, {0.5, 0.8});
    CHECK(std::abs(x - grid_oracle(2.0, 0.5, 0.8)) < 1e-4);
    CHECK(x == doctest::Approx(1.637574).epsilon(1e-4));
}

TEST_CASE("prox matches the grid oracle on random triples") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> up(0.3, 0.95), utau(1e-3, 10.0), uv(0.0, 20.0);
    for (int t = 0; t < 300; ++t) {
        const double p = up(rng), tau = utau(rng), v = uv(rng);
        const double mine = prox_lp_scalar(v, {tau, p});
        const double oracle = grid_oracle(v, tau, p);
        // Near the hard threshold both branches have nearly equal objective
        // values; compare objectives there instead of argmins.
        if (std::abs(mine - oracle) >= 1e-4) {
            CHECK(prox_objective(mine, v, tau, p) <=
                  prox_objective(oracle, v, tau, p) + 1e-10);
        } else {
            CHECK(std::abs(mine - oracle) < 1e-4);
        }
    }
}

TEST_CASE("prox shrinkage and monotonicity") {
    const ProxParams params{0.8, 0.6};
    double prev = 0.0;
    for (double v = 0.0; v <= 8.0; v += 0.01) {
        const double x = prox_lp_scalar(v, params);
        CHECK(x >= 0.0);
        CHECK(x <= v);
        CHECK(x >= prev - 1e-12);
        prev = x;
    }
}

TEST_CASE("vector prox preserves phase and handles zeros") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 2.0);
    SparseCode v(4, 4);
    for (cplx& z : v.data) z = cplx{g(rng), g(rng)};
    v.data[3] = cplx{0.0, 0.0};

    const ProxParams params{0.5, 0.7};
    SparseCode out = prox_lp(v, params);
    CHECK(out.data[3] == cplx{0.0, 0.0});
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(out.data[i]) <= std::abs(v.data[i]) + 1e-15);
        if (std::abs(out.data[i]) > 0) {
            const double dphase = std::arg(out.data[i]) - std::arg(v.data[i]);
            CHECK(std::abs(dphase) < 1e-12);
        }
    }

    CHECK(norm2(prox_lp(SparseCode(4, 4), params).data) == 0.0);
}

TEST_CASE("vector prox is elementwise optimal (stochastic audit)") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0.0, 1.5);
    SparseCode v(4, 4);
    for (cplx& z : v.data) z = cplx{g(rng), g(rng)};
    const ProxParams params{0.4, 0.8};
    SparseCode out = prox_lp(v, params);

    auto total = [&](const SparseCode& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += params.tau * std::pow(std::abs(x.data[i]), params.p) +
                 0.5 * std::norm(x.data[i] - v.data[i]);
        return s;
    };
    const double best = total(out);
    std::normal_distribution<double> pert(0.0, 0.3);
    for (int t = 0; t < 10000; ++t) {
        SparseCode cand = out;
        for (cplx& z : cand.data) z += cplx{pert(rng), pert(rng)};
        CHECK(total(cand) >= best - 1e-10);
    }
}
