#include "csmri/prox.hpp"

namespace csmri {
namespace {

double objective(double x, double v, double tau, double p) {
    return tau * std::pow(x, p) + 0.5 * (x - v) * (x - v);
}

} // namespace

double prox_lp_scalar(double v, const ProxParams& params) {
    params.validate();
    if (v < 0) throw std::invalid_argument("prox_lp_scalar: v must be >= 0");
    const double tau = params.tau, p = params.p;
    if (tau == 0.0) return v;
    if (v == 0.0) return 0.0;
    if (p == 1.0) return std::max(v - tau, 0.0);

    // Hard threshold of generalized soft-thresholding; at v == t_star pick 0.
    const double x_lb = std::pow(2.0 * tau * (1.0 - p), 1.0 / (2.0 - p));
    const double t_star = x_lb + tau * p * std::pow(x_lb, p - 1.0);
    if (v <= t_star) return 0.0;

    // Larger root of h(x) = x - v + tau p x^{p-1}; h is increasing on [x_lb, v].
    double lo = x_lb, hi = v, x = v;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double h = x - v + tau * p * std::pow(x, p - 1.0);
        if (std::abs(h) < 1e-12 * std::max(1.0, v)) {
            converged = true;
            break;
        }
        if (h > 0) hi = x; else lo = x;
        const double dh = 1.0 + tau * p * (p - 1.0) * std::pow(x, p - 2.0);
        double next = (dh > 0) ? x - h / dh : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-15 * std::max(1.0, v)) {
            x = next;
            converged = true;
            break;
        }
        x = next;
    }
    if (!converged && hi - lo > 1e-9 * std::max(1.0, v))
        throw std::runtime_error("prox_lp_scalar: root finder failed to converge");
    return objective(x, v, tau, p) < objective(0.0, v, tau, p) ? x : 0.0;
}

SparseCode prox_lp(const SparseCode& v, const ProxParams& params) {
    params.validate();
    SparseCode out(v.height, v.width);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::abs(v.data[i]);
        if (m == 0.0) {
            out.data[i] = cplx{0.0, 0.0};
            continue;
        }
        const double s = prox_lp_scalar(m, params);
        out.data[i] = v.data[i] * (s / m);
    }
    return out;
}

} // namespace csmri
