// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace isacpn {

using cplx = std::complex<double>;

namespace fft {

// Unnormalized in-place transforms backed by FFTW. forward uses e^{-j...}.
void forward(cplx* data, std::size_t n);
void inverse(cplx* data, std::size_t n);

// Unitary variants (scaled by 1/sqrt(n)).
void forward_unitary(cplx* data, std::size_t n);
void inverse_unitary(cplx* data, std::size_t n);

// Half spectrum (n/2+1 bins) to a real series of length n, unnormalized.
std::vector<double> inverse_real(std::vector<cplx> half, std::size_t n);

// Smallest 2/3/5/7-smooth integer >= n.
std::size_t fast_size(std::size_t n);

}  // namespace fft
}  // namespace isacpn
