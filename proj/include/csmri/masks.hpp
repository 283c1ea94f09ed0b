#pragma once

#include "csmri/core.hpp"

namespace csmri {

/// Full phase-encode rows: a centered low-frequency band plus random rows.
SamplingMask cartesian_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed);

/// Uniformly spaced spokes through the grid center; spoke count searched so
/// the achieved ratio is within 0.01 of the target. DC always sampled.
SamplingMask radial_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed);

/// Variable-density random selection, probability ~ exp(-r^2 / (2 s^2));
/// exact count enforced. DC always sampled.
SamplingMask gaussian_mask(std::size_t h, std::size_t w, double ratio, std::uint64_t seed);

SamplingMask make_mask(const std::string& type, std::size_t h, std::size_t w, double ratio,
                       std::uint64_t seed);

} // namespace csmri
