// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isacpn/pn_model.hpp"

namespace isacpn {

struct PnRealization {
    std::vector<double> samples;  // rad
    double sample_rate = 0.0;
    std::uint64_t seed = 0;
    std::string model_id;
};

/// Frequency-domain shaped Gaussian phase series. Bins below f_min and the DC
/// bin are left empty.
PnRealization synthesize(const PnPsdModel& model, double sample_rate, std::size_t n_samples,
                         std::uint64_t seed, double f_min = kDefaultFMin);

/// theta[offset - delay, offset - delay + length)
std::vector<double> delayed_view(const PnRealization& r, long long delay_samples, std::size_t offset,
                                 std::size_t length);

struct PsdEstimate {
    std::vector<double> freq;  // Hz, 0..fs/2
    std::vector<double> psd;   // double-sided density, rad^2/Hz
};

/// Hann-windowed averaged periodogram.
PsdEstimate estimate_psd_welch(const PnRealization& r, std::size_t segment_length,
                               double overlap_fraction = 0.5);

/// Writes <path> (little-endian float64) and <path>.hdr.
void dump_realization(const PnRealization& r, const std::string& path);
PnRealization load_realization(const std::string& path);

/// Mixes a base seed with a stream tag (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace isacpn
