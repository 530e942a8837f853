#pragma once

#include <span>
#include <vector>

#include "potentia/grid.hpp"

namespace potentia::fft {

/// Multidimensional complex DFT over `howmany` interleaved components
/// (component stride = howmany). The inverse is normalised by 1/size.
void transform(std::vector<Complex>& data, std::span<const int> dims, int howmany, bool inverse);

void forward(Field& f);
void inverse(Field& f);

}  // namespace potentia::fft
