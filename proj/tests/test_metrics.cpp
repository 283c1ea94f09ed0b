#include <doctest.h>

#include <random>

#include "csmri/metrics.hpp"

using namespace csmri;

TEST_CASE("mse and psnr closed forms") {
    RealImage ref(4, 4, std::vector<double>(16, 255.0));
    RealImage rec(4, 4, std::vector<double>(16, 254.0)); // mse = 1
    CHECK(mse(ref, rec) == doctest::Approx(1.0));
    CHECK(psnr(ref, rec, 255.0) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK(psnr(ref, rec) == doctest::Approx(48.1308).epsilon(1e-5)); // peak inferred

    // Doubling the error amplitude costs 10*log10(4) = 6.0206 dB.
    RealImage rec2(4, 4, std::vector<double>(16, 253.0));
    CHECK(psnr(ref, rec) - psnr(ref, rec2) == doctest::Approx(6.0206).epsilon(1e-4));
}

TEST_CASE("psnr cap and identical inputs") {
    RealImage ref(4, 4, std::vector<double>(16, 0.5));
    CHECK(psnr(ref, ref) == kPsnrCap);
    RealImage rec = ref;
    rec.data[0] += 1e-9;
    CHECK(psnr(ref, rec) == kPsnrCap); // above the cap, clamped
}

TEST_CASE("rlne closed forms") {
    RealImage ref(2, 2, {3.0, 0.0, 4.0, 0.0}); // ||ref|| = 5
    RealImage same = ref;
    CHECK(rlne(ref, same) == 0.0);
    RealImage zero(2, 2);
    CHECK(rlne(ref, zero) == doctest::Approx(1.0));
    RealImage off(2, 2, {3.0, 1.0, 4.0, 0.0});
    CHECK(rlne(ref, off) == doctest::Approx(0.2));
    CHECK_THROWS(rlne(zero, ref));
}

TEST_CASE("metric error paths") {
    RealImage a(4, 4), b(2, 2);
    CHECK_THROWS_AS(mse(a, b), ShapeError);
    CHECK_THROWS_AS(psnr(a, RealImage(8, 8)), ShapeError);
    CHECK_THROWS(psnr(a, a)); // all-zero reference, no usable peak
}

TEST_CASE("magnitude of a complex image") {
    ComplexImage x(2, 2, Domain::image);
    x.data = {cplx{3.0, 4.0}, cplx{0.0, -2.0}, cplx{-1.0, 0.0}, cplx{0.0, 0.0}};
    RealImage m = magnitude(x);
    CHECK(m.data == std::vector<double>{5.0, 2.0, 1.0, 0.0});
}

TEST_CASE("psnr against a brute-force recomputation on random data") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RealImage ref(8, 8), rec(8, 8);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        ref.data[i] = u(rng);
        rec.data[i] = u(rng);
    }
    double peak = 0.0, s = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        peak = std::max(peak, ref.data[i]);
        const double d = ref.data[i] - rec.data[i];
        s += d * d;
    }
    s /= static_cast<double>(ref.size());
    CHECK(psnr(ref, rec) == doctest::Approx(10.0 * std::log10(peak * peak / s)).epsilon(1e-12));
}
