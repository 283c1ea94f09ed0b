#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csmri {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DescentViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_finite(const std::vector<double>& data, const char* what) {
    for (double v : data)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

inline void require_finite(const std::vector<cplx>& data, const char* what) {
    for (const cplx& v : data)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

inline void require_dims(std::size_t h, std::size_t w, std::size_t n, const char* what) {
    if (h == 0 || w == 0)
        throw ShapeError(std::string(what) + ": zero dimension");
    if (n != h * w)
        throw ShapeError(std::string(what) + ": data length " + std::to_string(n) +
                         " does not match " + std::to_string(h) + "x" + std::to_string(w));
}

} // namespace detail

/// Real-valued H x W grid (magnitude images, masks as reals, phantoms).
struct RealImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> data; // row-major

    RealImage() = default;
    RealImage(std::size_t h, std::size_t w) : height(h), width(w), data(h * w, 0.0) {
        detail::require_dims(h, w, data.size(), "RealImage");
    }
    RealImage(std::size_t h, std::size_t w, std::vector<double> d)
        : height(h), width(w), data(std::move(d)) {
        detail::require_dims(h, w, data.size(), "RealImage");
        detail::require_finite(data, "RealImage");
    }

    double& at(std::size_t r, std::size_t c) { return data[r * width + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * width + c]; }
    std::size_t size() const { return data.size(); }
};

enum class Domain { image, kspace };

/// Complex H x W grid; carries whether it lives in image or k-space domain.
struct ComplexImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<cplx> data; // row-major
    Domain domain = Domain::image;

    ComplexImage() = default;
    ComplexImage(std::size_t h, std::size_t w, Domain dom)
        : height(h), width(w), data(h * w, cplx{0.0, 0.0}), domain(dom) {
        detail::require_dims(h, w, data.size(), "ComplexImage");
    }
    ComplexImage(std::size_t h, std::size_t w, std::vector<cplx> d, Domain dom)
        : height(h), width(w), data(std::move(d)), domain(dom) {
        detail::require_dims(h, w, data.size(), "ComplexImage");
        detail::require_finite(data, "ComplexImage");
    }

    cplx& at(std::size_t r, std::size_t c) { return data[r * width + c]; }
    cplx at(std::size_t r, std::size_t c) const { return data[r * width + c]; }
    std::size_t size() const { return data.size(); }
};

/// Wavelet coefficient grid alpha, same cardinality as the source image.
struct SparseCode {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<cplx> data;

    SparseCode() = default;
    SparseCode(std::size_t h, std::size_t w)
        : height(h), width(w), data(h * w, cplx{0.0, 0.0}) {
        detail::require_dims(h, w, data.size(), "SparseCode");
    }
    SparseCode(std::size_t h, std::size_t w, std::vector<cplx> d)
        : height(h), width(w), data(std::move(d)) {
        detail::require_dims(h, w, data.size(), "SparseCode");
        detail::require_finite(data, "SparseCode");
    }

    std::size_t size() const { return data.size(); }
};

/// Binary indicator of acquired k-space locations (the operator P).
struct SamplingMask {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> indicator;
    double ratio = 0.0;

    SamplingMask() = default;
    SamplingMask(std::size_t h, std::size_t w, std::vector<std::uint8_t> ind)
        : height(h), width(w), indicator(std::move(ind)) {
        detail::require_dims(h, w, indicator.size(), "SamplingMask");
        std::size_t ones = 0;
        for (auto v : indicator) {
            if (v != 0 && v != 1)
                throw std::invalid_argument("SamplingMask: indicator must be 0/1");
            ones += v;
        }
        if (ones == 0)
            throw std::invalid_argument("SamplingMask: empty mask");
        ratio = static_cast<double>(ones) / static_cast<double>(h * w);
    }

    std::size_t count() const {
        std::size_t ones = 0;
        for (auto v : indicator) ones += v;
        return ones;
    }
};

enum class CheckRule {
    prop1, // ||v - alpha|| <= eps * ||beta - alpha||
    eq8,   // ||v - beta||  <= eps * ||alpha - beta||  (ablation switch)
};

enum class WaveletFamily { haar, db4 };

struct WaveletSpec {
    WaveletFamily family = WaveletFamily::db4;
    std::size_t levels = 3;
};

/// All scalar hyperparameters of the solver. eps0 <= 0 means "derive a
/// default so C^0 = 0.1 * (1/(2 eta1) - L/2)".
struct SolverConfig {
    double lambda = 1e-5;
    double p = 0.8;
    double rho = 5.0;
    double eta1 = 0.9;
    double eta2 = 0.9;
    double lipschitz = 1.0;
    double epsilon0 = 0.0;
    double epsilon_decay = 0.95;
    double tol = 1e-4;
    std::size_t max_iters = 50;
    std::size_t wavelet_levels = 3;
    WaveletFamily wavelet_family = WaveletFamily::db4;
    CheckRule check_rule = CheckRule::prop1;
    double denoise_level_begin = 1.0;
    double denoise_level_end = 1.0;

    /// C^k = 1/(2 eta1) - L/2 - (L + |rho - 1/eta1|) * eps.
    double c_of_eps(double eps) const {
        return 1.0 / (2.0 * eta1) - lipschitz / 2.0 -
               (lipschitz + std::abs(rho - 1.0 / eta1)) * eps;
    }

    double effective_epsilon0() const {
        if (epsilon0 > 0.0) return epsilon0;
        const double base = 1.0 / (2.0 * eta1) - lipschitz / 2.0;
        return 0.9 * base / (lipschitz + std::abs(rho - 1.0 / eta1));
    }

    double epsilon_at(std::size_t k) const {
        return effective_epsilon0() * std::pow(epsilon_decay, static_cast<double>(k));
    }

    void validate() const {
        if (lambda < 0) throw ConfigError("SolverConfig: lambda must be >= 0");
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("SolverConfig: p must lie in (0,1)");
        if (rho <= 0) throw ConfigError("SolverConfig: rho must be positive");
        if (eta1 <= 0 || eta2 <= 0) throw ConfigError("SolverConfig: step sizes must be positive");
        if (lipschitz <= 0) throw ConfigError("SolverConfig: lipschitz must be positive");
        if (!(eta2 < 1.0 / lipschitz))
            throw ConfigError("SolverConfig: eta2 must be < 1/lipschitz (got eta2=" +
                              std::to_string(eta2) + ", 1/L=" + std::to_string(1.0 / lipschitz) + ")");
        if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0))
            throw ConfigError("SolverConfig: epsilon_decay must lie in (0,1]");
        if (tol <= 0) throw ConfigError("SolverConfig: tol must be positive");
        if (max_iters == 0) throw ConfigError("SolverConfig: max_iters must be positive");
        if (wavelet_levels == 0) throw ConfigError("SolverConfig: wavelet_levels must be positive");
        // eps decays, so C^k is smallest at k = 0.
        if (c_of_eps(effective_epsilon0()) <= 0.0)
            throw ConfigError("SolverConfig: C^0 = " + std::to_string(c_of_eps(effective_epsilon0())) +
                              " is not positive; shrink epsilon0 or eta1");
    }

    WaveletSpec wavelet_spec() const { return WaveletSpec{wavelet_family, wavelet_levels}; }
};

struct TraceRow {
    std::size_t k = 0;
    double phi = 0.0;
    double phi_w = 0.0;
    bool accepted = false;
    double step_norm = 0.0;
    double c_k = 0.0;
    double rel_change = 0.0;
};

using IterateTrace = std::vector<TraceRow>;

inline void validate_shapes(const ComplexImage& a, const SamplingMask& b) {
    if (a.height != b.height || a.width != b.width)
        throw ShapeError("shape mismatch: image " + std::to_string(a.height) + "x" +
                         std::to_string(a.width) + " vs mask " + std::to_string(b.height) +
                         "x" + std::to_string(b.width));
}

// --- small vector helpers shared across modules ---

inline double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double dist2(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

inline cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace csmri
