#pragma once

#include "csmri/core.hpp"

namespace csmri {

/// Unitary centered 2-D FFT: zero frequency at (H/2, W/2), 1/sqrt(HW) scaling.
ComplexImage fft_centered(const ComplexImage& img);
ComplexImage ifft_centered(const ComplexImage& k);

/// Orthonormal multi-level 2-D DWT (periodic boundary). analyze = A^T, synthesize = A.
SparseCode wavelet_analyze(const ComplexImage& x, const WaveletSpec& spec);
ComplexImage wavelet_synthesize(const SparseCode& code, const WaveletSpec& spec);

/// P: elementwise product with the 0/1 indicator; self-adjoint.
ComplexImage sample(const ComplexImage& k, const SamplingMask& mask);

/// P F A applied to a code.
ComplexImage forward_operator(const SparseCode& alpha, const SamplingMask& mask,
                              const WaveletSpec& spec);

/// A^T F^H P^T applied to k-space data (adjoint of forward_operator).
SparseCode adjoint_operator(const ComplexImage& k, const SamplingMask& mask,
                            const WaveletSpec& spec);

void validate_wavelet_spec(std::size_t height, std::size_t width, const WaveletSpec& spec);

} // namespace csmri
