#pragma once

#include "csmri/core.hpp"
#include "csmri/rician.hpp"

namespace csmri {

/// Deterministic analytic test images in [0,1]: "shepp-logan" (standard
/// 10-ellipse table) or "blocks" (piecewise constant).
RealImage phantom(std::size_t size, const std::string& kind = "shepp-logan");

/// y = P F (x or add_rician(x)); unsampled entries exactly zero.
ComplexImage corrupt(const RealImage& x, const SamplingMask& mask,
                     const RicianParams* rician = nullptr);

} // namespace csmri
