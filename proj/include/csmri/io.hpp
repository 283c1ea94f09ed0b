#pragma once

#include <filesystem>
#include <map>

#include "csmri/core.hpp"
#include "csmri/rician.hpp"

namespace csmri {

// "RIMG" container: magic, u16 version = 1, u8 dtype (0 real / 1 complex),
// u32 height, u32 width, little-endian f32 payload.
void write_rimg(const std::filesystem::path& path, const RealImage& img);
void write_rimg(const std::filesystem::path& path, const ComplexImage& img);

struct LoadedImage {
    bool is_complex = false;
    RealImage real;
    ComplexImage complex;
};

LoadedImage read_rimg(const std::filesystem::path& path);
RealImage read_rimg_real(const std::filesystem::path& path);
ComplexImage read_rimg_complex(const std::filesystem::path& path, Domain domain);

/// 8/16-bit binary PGM (P5), normalized to [0,1].
RealImage read_pgm(const std::filesystem::path& path);

/// Reads RIMG or PGM depending on extension/magic.
RealImage read_real_image(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const IterateTrace& trace);

/// key=value experiment configuration; unknown keys are rejected.
struct ExperimentConfig {
    SolverConfig solver;
    RicianSolverConfig rician;
    std::string mask_type = "radial";
    double mask_ratio = 0.3;
    std::string denoiser = "wavelet-thresh";
    double denoiser_param = 1.0;
    std::uint64_t seed = 0;
};

ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

} // namespace csmri
