#include "csmri/transforms.hpp"

#include <array>
#include <numbers>

namespace csmri {
namespace {

void require_pow2_square(std::size_t h, std::size_t w, const char* what) {
    if (h != w)
        throw ShapeError(std::string(what) + ": image must be square, got " +
                         std::to_string(h) + "x" + std::to_string(w));
    if (!is_pow2(h))
        throw ShapeError(std::string(what) + ": side must be a power of two, got " +
                         std::to_string(h));
}

// Iterative radix-2 Cooley-Tukey, in place, unscaled. sign = -1 forward.
void fft1d(cplx* x, std::size_t n, int sign) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = x[i + j];
                cplx v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Swap quadrants; self-inverse for even dimensions.
void fftshift2d(std::vector<cplx>& d, std::size_t h, std::size_t w) {
    const std::size_t h2 = h / 2, w2 = w / 2;
    for (std::size_t r = 0; r < h2; ++r)
        for (std::size_t c = 0; c < w; ++c)
            std::swap(d[r * w + c], d[((r + h2) % h) * w + (c + w2) % w]);
}

void fft2d_unitary(std::vector<cplx>& d, std::size_t h, std::size_t w, int sign) {
    for (std::size_t r = 0; r < h; ++r) fft1d(d.data() + r * w, w, sign);
    std::vector<cplx> col(h);
    for (std::size_t c = 0; c < w; ++c) {
        for (std::size_t r = 0; r < h; ++r) col[r] = d[r * w + c];
        fft1d(col.data(), h, sign);
        for (std::size_t r = 0; r < h; ++r) d[r * w + c] = col[r];
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(h * w));
    for (cplx& z : d) z *= scale;
}

struct FilterPair {
    std::vector<double> lo;
    std::vector<double> hi;
};

FilterPair filters(WaveletFamily fam) {
    switch (fam) {
        case WaveletFamily::haar: {
            const double s = 1.0 / std::sqrt(2.0);
            return {{s, s}, {s, -s}};
        }
        case WaveletFamily::db4: {
            const double r3 = std::sqrt(3.0), d = 4.0 * std::sqrt(2.0);
            std::vector<double> lo = {(1 + r3) / d, (3 + r3) / d, (3 - r3) / d, (1 - r3) / d};
            std::vector<double> hi(4);
            for (int k = 0; k < 4; ++k) hi[k] = (k % 2 == 0 ? 1.0 : -1.0) * lo[3 - k];
            return {lo, hi};
        }
    }
    throw ConfigError("unknown wavelet family");
}

// One periodic analysis step along a strided length-n signal.
void dwt_step(cplx* x, std::size_t n, std::size_t stride, const FilterPair& f,
              std::vector<cplx>& tmp) {
    const std::size_t half = n / 2, taps = f.lo.size();
    for (std::size_t i = 0; i < half; ++i) {
        cplx a{0, 0}, d{0, 0};
        for (std::size_t k = 0; k < taps; ++k) {
            const cplx v = x[((2 * i + k) % n) * stride];
            a += f.lo[k] * v;
            d += f.hi[k] * v;
        }
        tmp[i] = a;
        tmp[half + i] = d;
    }
    for (std::size_t i = 0; i < n; ++i) x[i * stride] = tmp[i];
}

// Adjoint of dwt_step (exact inverse by orthonormality).
void idwt_step(cplx* x, std::size_t n, std::size_t stride, const FilterPair& f,
               std::vector<cplx>& tmp) {
    const std::size_t half = n / 2, taps = f.lo.size();
    std::fill(tmp.begin(), tmp.begin() + n, cplx{0, 0});
    for (std::size_t i = 0; i < half; ++i) {
        const cplx a = x[i * stride], d = x[(half + i) * stride];
        for (std::size_t k = 0; k < taps; ++k)
            tmp[(2 * i + k) % n] += f.lo[k] * a + f.hi[k] * d;
    }
    for (std::size_t i = 0; i < n; ++i) x[i * stride] = tmp[i];
}

} // namespace

void validate_wavelet_spec(std::size_t height, std::size_t width, const WaveletSpec& spec) {
    require_pow2_square(height, width, "wavelet");
    if (spec.levels == 0) throw ConfigError("wavelet: levels must be positive");
    std::size_t n = std::min(height, width);
    std::size_t max_levels = 0;
    while (n > 1) { n >>= 1; ++max_levels; }
    if (spec.levels > max_levels)
        throw ConfigError("wavelet: " + std::to_string(spec.levels) +
                          " levels exceed log2(min(H,W)) = " + std::to_string(max_levels));
}

ComplexImage fft_centered(const ComplexImage& img) {
    require_pow2_square(img.height, img.width, "fft_centered");
    if (img.domain != Domain::image) throw ShapeError("fft_centered: expects image-domain input");
    std::vector<cplx> d = img.data;
    fftshift2d(d, img.height, img.width);
    fft2d_unitary(d, img.height, img.width, -1);
    fftshift2d(d, img.height, img.width);
    return ComplexImage(img.height, img.width, std::move(d), Domain::kspace);
}

ComplexImage ifft_centered(const ComplexImage& k) {
    require_pow2_square(k.height, k.width, "ifft_centered");
    if (k.domain != Domain::kspace) throw ShapeError("ifft_centered: expects kspace-domain input");
    std::vector<cplx> d = k.data;
    fftshift2d(d, k.height, k.width);
    fft2d_unitary(d, k.height, k.width, +1);
    fftshift2d(d, k.height, k.width);
    return ComplexImage(k.height, k.width, std::move(d), Domain::image);
}

SparseCode wavelet_analyze(const ComplexImage& x, const WaveletSpec& spec) {
    validate_wavelet_spec(x.height, x.width, spec);
    if (x.domain != Domain::image) throw ShapeError("wavelet_analyze: expects image-domain input");
    const FilterPair f = filters(spec.family);
    std::vector<cplx> d = x.data;
    std::vector<cplx> tmp(std::max(x.height, x.width));
    std::size_t hb = x.height, wb = x.width;
    for (std::size_t lvl = 0; lvl < spec.levels; ++lvl) {
        for (std::size_t r = 0; r < hb; ++r)
            dwt_step(d.data() + r * x.width, wb, 1, f, tmp);
        for (std::size_t c = 0; c < wb; ++c)
            dwt_step(d.data() + c, hb, x.width, f, tmp);
        hb /= 2;
        wb /= 2;
        if (hb < 2 || wb < 2) break;
    }
    return SparseCode(x.height, x.width, std::move(d));
}

ComplexImage wavelet_synthesize(const SparseCode& code, const WaveletSpec& spec) {
    validate_wavelet_spec(code.height, code.width, spec);
    const FilterPair f = filters(spec.family);
    // Replay the analysis block sizes so truncation at small blocks matches.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t hb = code.height, wb = code.width;
    for (std::size_t lvl = 0; lvl < spec.levels; ++lvl) {
        blocks.emplace_back(hb, wb);
        hb /= 2;
        wb /= 2;
        if (hb < 2 || wb < 2) break;
    }
    std::vector<cplx> d = code.data;
    std::vector<cplx> tmp(std::max(code.height, code.width));
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        const auto [h, w] = *it;
        for (std::size_t c = 0; c < w; ++c)
            idwt_step(d.data() + c, h, code.width, f, tmp);
        for (std::size_t r = 0; r < h; ++r)
            idwt_step(d.data() + r * code.width, w, 1, f, tmp);
    }
    return ComplexImage(code.height, code.width, std::move(d), Domain::image);
}

ComplexImage sample(const ComplexImage& k, const SamplingMask& mask) {
    validate_shapes(k, mask);
    std::vector<cplx> d = k.data;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!mask.indicator[i]) d[i] = cplx{0.0, 0.0};
    return ComplexImage(k.height, k.width, std::move(d), Domain::kspace);
}

ComplexImage forward_operator(const SparseCode& alpha, const SamplingMask& mask,
                              const WaveletSpec& spec) {
    ComplexImage x = wavelet_synthesize(alpha, spec);
    return sample(fft_centered(x), mask);
}

SparseCode adjoint_operator(const ComplexImage& k, const SamplingMask& mask,
                            const WaveletSpec& spec) {
    return wavelet_analyze(ifft_centered(sample(k, mask)), spec);
}

} // namespace csmri
