// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "isacpn/channel.hpp"
#include "isacpn/ofdm.hpp"

namespace isacpn {

struct WindowSpec {
    enum class Kind { Rectangular, Chebyshev } kind = Kind::Rectangular;
    double attenuation_db = 100.0;  // Chebyshev only

    static WindowSpec rectangular() { return {}; }
    static WindowSpec chebyshev(double db) { return {Kind::Chebyshev, db}; }
    std::string describe() const;
};

/// Weights normalized to mean 1 (sum equals length).
std::vector<double> make_window(const WindowSpec& spec, std::size_t length);

/// Range x Doppler image, column-major by Doppler bin. Column j holds Doppler
/// bin j - M/2. Transforms are unitary, so a unit static target gives a peak
/// power of N*M.
struct RadarImage {
    std::size_t n_range = 0;
    std::size_t n_doppler = 0;
    std::vector<cplx> grid;
    std::vector<double> range_axis;    // m
    std::vector<double> doppler_axis;  // Hz
    WindowSpec win_range;
    WindowSpec win_doppler;
    Architecture architecture = Architecture::Bistatic;

    cplx& at(std::size_t r, std::size_t d) { return grid[d * n_range + r]; }
    const cplx& at(std::size_t r, std::size_t d) const { return grid[d * n_range + r]; }
    /// Peak power of a unit static target without PN (N*M).
    double reference_power() const { return static_cast<double>(n_range * n_doppler); }
};

struct Axes {
    std::vector<double> range_m;
    std::vector<double> doppler_hz;
    double range_resolution;
    double r_max_ua;
    double doppler_resolution;
};

Axes axes(const WaveformConfig& c, Architecture arch);

RadarImage form_image(const FreqFrame& received, const FreqFrame& known, const WindowSpec& win_range,
                      const WindowSpec& win_doppler, Architecture arch = Architecture::Bistatic);

/// Column index of the Doppler bin nearest to f_d (after aliasing).
std::size_t doppler_column(const WaveformConfig& c, double f_d);

/// Rows of (range_m, doppler_hz, magnitude_db) normalized to `ref_power`.
void write_image_csv(const RadarImage& img, const std::string& path, double ref_power,
                     const std::string& header = {});

}  // namespace isacpn
