#pragma once

#include <span>

#include "cyl/grid.hpp"

namespace cyl::detail {

enum class FftDirection { kForward, kBackward };

// Unnormalized in-place 2D DFT of an nx-by-ny row-major array.
// Plans are cached per shape; execution is safe from several threads.
void fft2d(std::span<Complex> data, int nx, int ny, FftDirection dir);

}  // namespace cyl::detail
