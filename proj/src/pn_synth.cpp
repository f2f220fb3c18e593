// SPDX-License-Identifier: Apache-2.0
#include "isacpn/pn_synth.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "isacpn/errors.hpp"
#include "isacpn/fft.hpp"

namespace isacpn {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PnRealization synthesize(const PnPsdModel& model, double sample_rate, std::size_t n_samples,
                         std::uint64_t seed, double f_min) {
    if (n_samples == 0) throw DomainError("n_samples must be positive");
    if (!(sample_rate > 0)) throw DomainError("sample_rate must be positive");

    PnRealization r{std::vector<double>(n_samples, 0.0), sample_rate, seed, model.describe()};
    const double gamma = model.gamma();
    if (gamma == 0.0 || n_samples < 2) return r;

    const std::size_t n = n_samples;
    const std::size_t half = n / 2;
    const double df = sample_rate / static_cast<double>(n);
    const auto& base = model.base();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> spec(half + 1, cplx{});
    for (std::size_t j = 1; j <= half; ++j) {
        const double a = normal(rng);
        const double b = normal(rng);
        const double f = static_cast<double>(j) * df;
        if (f < f_min) continue;
        const double var = gamma * eval_psd(base, f) * df;
        if (2 * j == n) {
            spec[j] = cplx{std::sqrt(var) * a, 0.0};
        } else {
            const double s = std::sqrt(var / 2.0);
            spec[j] = cplx{s * a, s * b};
        }
    }
    r.samples = fft::inverse_real(std::move(spec), n);
    return r;
}

std::vector<double> delayed_view(const PnRealization& r, long long delay_samples, std::size_t offset,
                                 std::size_t length) {
    const long long start = static_cast<long long>(offset) - delay_samples;
    if (start < 0 || static_cast<std::size_t>(start) + length > r.samples.size())
        throw RangeError("delayed view outside the generated span");
    return {r.samples.begin() + start, r.samples.begin() + start + static_cast<long long>(length)};
}

PsdEstimate estimate_psd_welch(const PnRealization& r, std::size_t segment_length, double overlap_fraction) {
    const std::size_t L = segment_length;
    if (L < 2 || L > r.samples.size()) throw DomainError("invalid Welch segment length");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) throw DomainError("invalid overlap fraction");
    const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(L * (1.0 - overlap_fraction))));

    std::vector<double> w(L);
    double w2 = 0.0;
    for (std::size_t i = 0; i < L; ++i) {
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(L));
        w2 += w[i] * w[i];
    }

    PsdEstimate est;
    const std::size_t bins = L / 2 + 1;
    est.freq.resize(bins);
    est.psd.assign(bins, 0.0);
    for (std::size_t j = 0; j < bins; ++j) est.freq[j] = r.sample_rate * static_cast<double>(j) / static_cast<double>(L);

    std::vector<cplx> buf(L);
    std::size_t count = 0;
    for (std::size_t start = 0; start + L <= r.samples.size(); start += hop, ++count) {
        for (std::size_t i = 0; i < L; ++i) buf[i] = r.samples[start + i] * w[i];
        fft::forward(buf.data(), L);
        for (std::size_t j = 0; j < bins; ++j) est.psd[j] += std::norm(buf[j]);
    }
    const double scale = 1.0 / (static_cast<double>(count) * r.sample_rate * w2);
    for (auto& v : est.psd) v *= scale;
    return est;
}

void dump_realization(const PnRealization& r, const std::string& path) {
    static_assert(std::endian::native == std::endian::little, "dump assumes a little-endian host");
    std::ofstream bin(path, std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + path);
    bin.write(reinterpret_cast<const char*>(r.samples.data()),
              static_cast<std::streamsize>(r.samples.size() * sizeof(double)));
    std::ofstream hdr(path + ".hdr");
    hdr.precision(17);
    hdr << "sample_rate " << r.sample_rate << "\n"
        << "seed " << r.seed << "\n"
        << "n_samples " << r.samples.size() << "\n"
        << "model " << r.model_id << "\n";
}

PnRealization load_realization(const std::string& path) {
    PnRealization r;
    std::ifstream hdr(path + ".hdr");
    if (!hdr) throw std::runtime_error("cannot open " + path + ".hdr");
    std::size_t n = 0;
    std::string key;
    while (hdr >> key) {
        if (key == "sample_rate") hdr >> r.sample_rate;
        else if (key == "seed") hdr >> r.seed;
        else if (key == "n_samples") hdr >> n;
        else if (key == "model") {
            hdr >> std::ws;
            std::getline(hdr, r.model_id);
        }
    }
    r.samples.resize(n);
    std::ifstream bin(path, std::ios::binary);
    bin.read(reinterpret_cast<char*>(r.samples.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!bin) throw std::runtime_error("short read from " + path);
    return r;
}

}  // namespace isacpn
