#include "csmri/masks.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

namespace csmri {
namespace {

void require_ratio(double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw ConfigError("mask: ratio must lie in (0,1], got " + std::to_string(ratio));
}

SamplingMask all_ones(std::size_t h, std::size_t w) {
    return SamplingMask(h, w, std::vector<std::uint8_t>(h * w, 1));
}

void rasterize_spoke(std::vector<std::uint8_t>& ind, long h, long w, double angle) {
    // Bresenham-style walk from center to boundary, both directions.
    const long cr = h / 2, cc = w / 2;
    const double dr = std::sin(angle), dc = std::cos(angle);
    const double reach = std::hypot(static_cast<double>(h), static_cast<double>(w));
    for (int dir : {1, -1}) {
        for (double t = 0.0; t <= reach; t += 0.5) {
            const long r = cr + static_cast<long>(std::llround(dir * t * dr));
            const long c = cc + static_cast<long>(std::llround(dir * t * dc));
            if (r < 0 || r >= h || c < 0 || c >= w) break;
            ind[r * w + c] = 1;
        }
    }
}

std::size_t spoke_count_pixels(long h, long w, std::size_t spokes, double angle0,
                               std::vector<std::uint8_t>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::size_t s = 0; s < spokes; ++s)
        rasterize_spoke(scratch, h, w, angle0 + std::numbers::pi * s / static_cast<double>(spokes));
    return static_cast<std::size_t>(std::accumulate(scratch.begin(), scratch.end(), 0L));
}

} // namespace

SamplingMask cartesian_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed) {
    require_ratio(ratio);
    if (ratio == 1.0) return all_ones(h, w);
    const std::size_t total_rows =
        std::max<std::size_t>(1, static_cast<std::size_t>(ratio * static_cast<double>(h)));
    const std::size_t band =
        std::min(total_rows,
                 static_cast<std::size_t>(std::ceil(0.32 * ratio * static_cast<double>(h))));

    std::vector<std::uint8_t> row_sel(h, 0);
    const std::size_t center = h / 2;
    const std::size_t band_start = center - band / 2;
    for (std::size_t i = 0; i < band; ++i) row_sel[band_start + i] = 1;

    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < h; ++r)
        if (!row_sel[r]) rest.push_back(r);
    std::mt19937_64 rng(seed);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; i < total_rows - band && i < rest.size(); ++i) row_sel[rest[i]] = 1;

    std::vector<std::uint8_t> ind(h * w, 0);
    for (std::size_t r = 0; r < h; ++r)
        if (row_sel[r]) std::fill_n(ind.begin() + r * w, w, std::uint8_t{1});
    return SamplingMask(h, w, std::move(ind));
}

SamplingMask radial_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed) {
    require_ratio(ratio);
    if (ratio == 1.0) return all_ones(h, w);
    const auto hl = static_cast<long>(h), wl = static_cast<long>(w);
    const auto target = static_cast<double>(h * w) * ratio;
    std::mt19937_64 rng(seed);
    const double angle0 =
        std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);

    std::vector<std::uint8_t> scratch(h * w, 0);
    std::size_t lo = 1, hi = 4 * std::max(h, w);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (static_cast<double>(spoke_count_pixels(hl, wl, mid, angle0, scratch)) < target)
            lo = mid + 1;
        else
            hi = mid;
    }
    // Pick the bracketing count closer to the target.
    std::size_t best = lo;
    if (lo > 1) {
        const double above = static_cast<double>(spoke_count_pixels(hl, wl, lo, angle0, scratch));
        const double below =
            static_cast<double>(spoke_count_pixels(hl, wl, lo - 1, angle0, scratch));
        if (std::abs(below - target) < std::abs(above - target)) best = lo - 1;
    }
    spoke_count_pixels(hl, wl, best, angle0, scratch);
    scratch[(h / 2) * w + w / 2] = 1;
    return SamplingMask(h, w, std::move(scratch));
}

SamplingMask gaussian_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed) {
    require_ratio(ratio);
    if (ratio == 1.0) return all_ones(h, w);
    const std::size_t n = h * w;
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(ratio * n));

    std::vector<double> r2(n);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            const double dr = static_cast<double>(r) - static_cast<double>(h) / 2.0;
            const double dc = static_cast<double>(c) - static_cast<double>(w) / 2.0;
            r2[r * w + c] = dr * dr + dc * dc;
        }

    // Calibrate s so the expected count sum min(1, exp(-r^2/2s^2)) hits the target.
    double s_lo = 1e-3, s_hi = static_cast<double>(h + w);
    for (int it = 0; it < 200; ++it) {
        const double s = 0.5 * (s_lo + s_hi);
        double expect = 0.0;
        for (double v : r2) expect += std::exp(-v / (2.0 * s * s));
        if (expect < static_cast<double>(count)) s_lo = s; else s_hi = s;
    }
    const double s = 0.5 * (s_lo + s_hi);

    // Weighted sampling without replacement: top-k of log(u)/q keys.
    // DC is forced, the remaining count-1 are drawn from everything else.
    const std::size_t dc = (h / 2) * w + w / 2;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(1e-12, 1.0);
    std::vector<std::pair<double, std::size_t>> keys;
    keys.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == dc) continue;
        const double q = std::max(std::exp(-r2[i] / (2.0 * s * s)), 1e-300);
        keys.emplace_back(std::log(uni(rng)) / q, i);
    }
    const std::size_t pick = count - 1;
    std::partial_sort(keys.begin(), keys.begin() + pick, keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::uint8_t> ind(n, 0);
    ind[dc] = 1;
    for (std::size_t i = 0; i < pick; ++i) ind[keys[i].second] = 1;
    return SamplingMask(h, w, std::move(ind));
}

SamplingMask make_mask(const std::string& type, std::size_t h, std::size_t w, double ratio,
                       std::uint64_t seed) {
    if (type == "cartesian") return cartesian_mask(h, w, ratio, seed);
    if (type == "radial") return radial_mask(h, w, ratio, seed);
    if (type == "gaussian") return gaussian_mask(h, w, ratio, seed);
    throw ConfigError("unknown mask type '" + type + "'");
}

} // namespace csmri
