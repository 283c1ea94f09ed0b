#include "csmri/metrics.hpp"

namespace csmri {
namespace {

void require_same_shape(const RealImage& a, const RealImage& b, const char* what) {
    if (a.height != b.height || a.width != b.width)
        throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.height) +
                         "x" + std::to_string(a.width) + " vs " + std::to_string(b.height) +
                         "x" + std::to_string(b.width));
}

} // namespace

double mse(const RealImage& a, const RealImage& b) {
    require_same_shape(a, b, "mse");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

double psnr(const RealImage& ref, const RealImage& rec, double peak) {
    require_same_shape(ref, rec, "psnr");
    if (peak <= 0.0) {
        peak = 0.0;
        for (double v : ref.data) peak = std::max(peak, v);
        if (peak <= 0.0) throw std::invalid_argument("psnr: reference peak is not positive");
    }
    const double m = mse(ref, rec);
    if (m == 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / m));
}

double rlne(const RealImage& ref, const RealImage& rec) {
    require_same_shape(ref, rec, "rlne");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double d = rec.data[i] - ref.data[i];
        num += d * d;
        den += ref.data[i] * ref.data[i];
    }
    if (den == 0.0) throw std::invalid_argument("rlne: reference has zero norm");
    return std::sqrt(num / den);
}

RealImage magnitude(const ComplexImage& x) {
    RealImage out(x.height, x.width);
    for (std::size_t i = 0; i < x.size(); ++i) out.data[i] = std::abs(x.data[i]);
    return out;
}

} // namespace csmri
