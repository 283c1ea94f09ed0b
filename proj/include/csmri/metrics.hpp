#pragma once

#include "csmri/core.hpp"

namespace csmri {

inline constexpr double kPsnrCap = 99.0;

double mse(const RealImage& a, const RealImage& b);

/// peak <= 0 means "use max of ref". Identical images report the 99.0 cap.
double psnr(const RealImage& ref, const RealImage& rec, double peak = 0.0);

double rlne(const RealImage& ref, const RealImage& rec);

/// MR convention: complex reconstructions are compared by magnitude.
RealImage magnitude(const ComplexImage& x);

} // namespace csmri
