// SPDX-License-Identifier: Apache-2.0
#include "isacpn/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace isacpn::fft {
namespace {

std::mutex g_plan_mutex;

enum class Kind { Forward, Inverse, C2R };

fftw_plan plan_for(Kind kind, std::size_t n) {
    static std::map<std::tuple<Kind, std::size_t>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_tuple(kind, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int len = static_cast<int>(n);
    fftw_plan p = nullptr;
    if (kind == Kind::C2R) {
        auto* in = fftw_alloc_complex(n / 2 + 1);
        auto* out = fftw_alloc_real(n);
        p = fftw_plan_dft_c2r_1d(len, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
    } else {
        auto* buf = fftw_alloc_complex(n);
        int sign = kind == Kind::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        p = fftw_plan_dft_1d(len, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
    }
    cache.emplace(key, p);
    return p;
}

void run(Kind kind, cplx* data, std::size_t n) {
    if (n <= 1) return;
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(kind, n), p, p);
}

}  // namespace

void forward(cplx* data, std::size_t n) { run(Kind::Forward, data, n); }
void inverse(cplx* data, std::size_t n) { run(Kind::Inverse, data, n); }

void forward_unitary(cplx* data, std::size_t n) {
    forward(data, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

void inverse_unitary(cplx* data, std::size_t n) {
    inverse(data, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

std::vector<double> inverse_real(std::vector<cplx> half, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = half[0].real();
        return out;
    }
    fftw_execute_dft_c2r(plan_for(Kind::C2R, n), reinterpret_cast<fftw_complex*>(half.data()),
                         out.data());
    return out;
}

std::size_t fast_size(std::size_t n) {
    if (n <= 1) return 1;
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t f : {2u, 3u, 5u, 7u})
            while (r % f == 0) r /= f;
        if (r == 1) return m;
    }
}

}  // namespace isacpn::fft
