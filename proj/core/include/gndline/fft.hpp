#pragma once

#include "gndline/linalg.hpp"

#include <vector>

namespace gndline {

/// Forward DFT, X[k] = sum_n x[n] exp(-2*pi*i*k*n/N). No scaling.
std::vector<Complex> fft_forward(const std::vector<Complex>& x);

/// Inverse DFT with 1/N scaling.
std::vector<Complex> fft_inverse(const std::vector<Complex>& x);

}  // namespace gndline
