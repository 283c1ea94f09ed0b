#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "csmri/io.hpp"

using namespace csmri;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_CASE("RIMG real round trip is bit-exact at float precision") {
    TempFile f("csmri_test_real.rimg");
    RealImage img(3, 5);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.data[i] = static_cast<float>(0.1 * static_cast<double>(i) - 0.7);
    write_rimg(f.path, img);

    RealImage back = read_rimg_real(f.path);
    REQUIRE(back.height == 3);
    REQUIRE(back.width == 5);
    for (std::size_t i = 0; i < img.size(); ++i) CHECK(back.data[i] == img.data[i]);

    // Writing twice yields byte-identical files.
    TempFile g("csmri_test_real2.rimg");
    write_rimg(g.path, img);
    std::ifstream a(f.path, std::ios::binary), b(g.path, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), {});
    std::string sb((std::istreambuf_iterator<char>(b)), {});
    CHECK(sa == sb);
    CHECK(sa.size() == 4 + 2 + 1 + 4 + 4 + 15 * 4);
    CHECK(sa.substr(0, 4) == "RIMG");
}

TEST_CASE("RIMG complex round trip and dtype dispatch") {
    TempFile f("csmri_test_cplx.rimg");
    ComplexImage img(2, 4, Domain::kspace);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.data[i] = cplx{static_cast<float>(i) * 0.25f, -static_cast<float>(i) * 0.5f};
    write_rimg(f.path, img);

    LoadedImage li = read_rimg(f.path);
    CHECK(li.is_complex);
    ComplexImage back = read_rimg_complex(f.path, Domain::kspace);
    CHECK(back.domain == Domain::kspace);
    for (std::size_t i = 0; i < img.size(); ++i) CHECK(back.data[i] == img.data[i]);

    CHECK_THROWS(read_rimg_real(f.path)); // dtype mismatch

    // A real file promotes cleanly to complex.
    TempFile g("csmri_test_promote.rimg");
    write_rimg(g.path, RealImage(2, 2, {1.0, 2.0, 3.0, 4.0}));
    ComplexImage promoted = read_rimg_complex(g.path, Domain::image);
    CHECK(promoted.data[2] == cplx{3.0, 0.0});
}

TEST_CASE("RIMG rejects garbage") {
    TempFile f("csmri_test_bad.rimg");
    std::ofstream(f.path, std::ios::binary) << "not an image at all";
    CHECK_THROWS(read_rimg(f.path));
    CHECK_THROWS(read_rimg(std::filesystem::temp_directory_path() / "csmri_missing.rimg"));

    // Truncated payload: valid header claiming more data than present.
    TempFile g("csmri_test_trunc.rimg");
    {
        RealImage img(4, 4);
        write_rimg(g.path, img);
        std::filesystem::resize_file(g.path, 20); // header + one pixel
    }
    CHECK_THROWS(read_rimg(g.path));
}

TEST_CASE("PGM parsing, 8-bit and 16-bit, with comments") {
    TempFile f("csmri_test.pgm");
    {
        std::ofstream os(f.path, std::ios::binary);
        os << "P5\n# a comment line\n2 2\n255\n";
        const unsigned char px[4] = {0, 51, 102, 255};
        os.write(reinterpret_cast<const char*>(px), 4);
    }
    RealImage img = read_pgm(f.path);
    REQUIRE(img.height == 2);
    REQUIRE(img.width == 2);
    CHECK(img.data[0] == 0.0);
    CHECK(img.data[1] == doctest::Approx(51.0 / 255.0));
    CHECK(img.data[3] == 1.0);

    TempFile g("csmri_test16.pgm");
    {
        std::ofstream os(g.path, std::ios::binary);
        os << "P5 1 2 65535\n";
        const unsigned char px[4] = {0xff, 0xff, 0x00, 0x01}; // 65535, 1 (big-endian)
        os.write(reinterpret_cast<const char*>(px), 4);
    }
    RealImage wide = read_pgm(g.path);
    CHECK(wide.data[0] == 1.0);
    CHECK(wide.data[1] == doctest::Approx(1.0 / 65535.0));

    TempFile h("csmri_test_p2.pgm");
    std::ofstream(h.path) << "P2\n2 2\n255\n0 0 0 0\n";
    CHECK_THROWS(read_pgm(h.path));
    CHECK(read_real_image(f.path).data == img.data); // dispatch by extension
}

TEST_CASE("trace CSV layout") {
    TempFile f("csmri_test_trace.csv");
    IterateTrace trace;
    trace.push_back(TraceRow{0, 1.5, 1.5, true, 0.0, 0.25, 1.0});
    trace.push_back(TraceRow{1, 0.75, 0.9, false, 0.125, 0.25, 0.5});
    write_trace_csv(f.path, trace);

    std::ifstream is(f.path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "k,phi,phi_w,accepted,step_norm,c_k,rel_change");
    std::size_t rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == trace.size());

    is.clear();
    is.seekg(0);
    std::getline(is, line); // header
    std::getline(is, line);
    CHECK(line == "0,1.5,1.5,1,0,0.25,1");
    std::getline(is, line);
    CHECK(line == "1,0.75,0.90000000000000002,0,0.125,0.25,0.5");
}

TEST_CASE("experiment config parsing") {
    ExperimentConfig cfg = parse_config_text(
        "# experiment\n"
        "lambda = 0.01\n"
        "p=0.5\n"
        "rho = 2.5 # inline comment\n"
        "max_iters = 12\n"
        "wavelet_family = haar\n"
        "wavelet_levels = 2\n"
        "check_rule = eq8\n"
        "mask_type = gaussian\n"
        "mask_ratio = 0.4\n"
        "denoiser = gauss\n"
        "denoiser_param = 0.7\n"
        "sigma = 0.05\n"
        "outer_iters = 4\n"
        "seed = 77\n");
    CHECK(cfg.solver.lambda == 0.01);
    CHECK(cfg.solver.p == 0.5);
    CHECK(cfg.solver.rho == 2.5);
    CHECK(cfg.solver.max_iters == 12);
    CHECK(cfg.solver.wavelet_family == WaveletFamily::haar);
    CHECK(cfg.solver.wavelet_levels == 2);
    CHECK(cfg.solver.check_rule == CheckRule::eq8);
    CHECK(cfg.mask_type == "gaussian");
    CHECK(cfg.mask_ratio == 0.4);
    CHECK(cfg.denoiser == "gauss");
    CHECK(cfg.denoiser_param == 0.7);
    CHECK(cfg.rician.sigma == 0.05);
    CHECK(cfg.rician.outer_iters == 4);
    CHECK(cfg.seed == 77);
    // Inner solver settings propagate to the extended solver.
    CHECK(cfg.rician.inner.lambda == 0.01);
    CHECK(cfg.rician.inner.max_iters == 12);

    // Defaults survive an empty config.
    ExperimentConfig d = parse_config_text("");
    CHECK(d.solver.lambda == 1e-5);
    CHECK(d.solver.p == 0.8);
    CHECK(d.solver.rho == 5.0);
    CHECK(d.mask_type == "radial");

    CHECK_THROWS_AS(parse_config_text("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("lambda 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("lambda = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("wavelet_family = sym8\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("check_rule = maybe\n"), ConfigError);
}
