#pragma once

#include <complex>
#include <cstddef>

namespace mdc::fft {

/// In-place 3-D DFT over an n^3 lattice of `ncomp`-interleaved complex data
/// (raw exponential sums, no normalization).  sign = -1 forward, +1 backward.
/// Plans are cached per (n, ncomp, sign) and created with FFTW_ESTIMATE so
/// results are reproducible run to run.
void dft3(int n, int ncomp, std::complex<double>* data, int sign);

} // namespace mdc::fft
