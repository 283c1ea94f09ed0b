#include "csmri/phantom.hpp"

#include "csmri/transforms.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace csmri {
namespace {

struct Ellipse {
    double intensity, a, b, x0, y0, phi_deg;
};

// Modified Shepp-Logan parameter table (intensity, semi-axes, center, tilt).
constexpr std::array<Ellipse, 10> kSheppLogan = {{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.605, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

RealImage shepp_logan(std::size_t n) {
    RealImage img(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            // Pixel centers on [-1, 1]^2, y up.
            const double x = -1.0 + 2.0 * (static_cast<double>(c) + 0.5) / static_cast<double>(n);
            const double y = 1.0 - 2.0 * (static_cast<double>(r) + 0.5) / static_cast<double>(n);
            double v = 0.0;
            for (const Ellipse& e : kSheppLogan) {
                const double ang = e.phi_deg * std::numbers::pi / 180.0;
                const double dx = x - e.x0, dy = y - e.y0;
                const double xr = dx * std::cos(ang) + dy * std::sin(ang);
                const double yr = -dx * std::sin(ang) + dy * std::cos(ang);
                if (xr * xr / (e.a * e.a) + yr * yr / (e.b * e.b) <= 1.0) v += e.intensity;
            }
            img.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    return img;
}

RealImage blocks(std::size_t n) {
    RealImage img(n, n);
    const std::size_t q = n / 4;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double v = 0.0;
            if (r >= q && r < 3 * q && c >= q && c < 3 * q) v = 0.5;
            if (r >= q && r < 2 * q && c >= q && c < 2 * q) v = 1.0;
            if (r >= 2 * q + q / 2 && r < 3 * q && c >= 2 * q && c < 3 * q) v = 0.75;
            if (r < q / 2 && c >= n - q) v = 0.25;
            img.at(r, c) = v;
        }
    return img;
}

} // namespace

RealImage phantom(std::size_t size, const std::string& kind) {
    if (size < 32 || !is_pow2(size))
        throw ConfigError("phantom: size must be a power of two >= 32");
    if (kind == "shepp-logan") return shepp_logan(size);
    if (kind == "blocks") return blocks(size);
    throw ConfigError("phantom: unknown kind '" + kind + "'");
}

ComplexImage corrupt(const RealImage& x, const SamplingMask& mask, const RicianParams* rician) {
    RealImage src = rician ? add_rician(x, *rician) : x;
    ComplexImage img(src.height, src.width, Domain::image);
    for (std::size_t i = 0; i < src.size(); ++i) img.data[i] = cplx{src.data[i], 0.0};
    validate_shapes(img, mask);
    return sample(fft_centered(img), mask);
}

} // namespace csmri
