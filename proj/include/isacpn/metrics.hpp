// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "isacpn/radar.hpp"

namespace isacpn {

struct Bin {
    std::size_t range = 0;
    std::size_t doppler = 0;  // image column
    bool operator==(const Bin&) const = default;
};

/// Mainlobe on the native grid: bins [peak - left, peak + right] on each axis
/// (circular). The 2-D region is the rectangle they span.
struct MainlobeMask {
    Bin peak;
    std::size_t range_left = 0, range_right = 0;
    std::size_t doppler_left = 0, doppler_right = 0;

    bool contains(std::size_t r, std::size_t d, std::size_t n_range, std::size_t n_doppler) const;
};

/// Mainlobe of a 1-D power cut: [peak - left, peak + right], circular.
struct CutMask {
    std::size_t peak = 0;
    std::size_t left = 0;
    std::size_t right = 0;
};

inline constexpr std::size_t kCutOversampling = 10;

Bin find_peak(const RadarImage& img);

/// Power along range at a Doppler column, trigonometrically interpolated by `os`.
std::vector<double> range_cut(const RadarImage& img, std::size_t doppler_col, std::size_t os = 1);
/// Power along Doppler at a range bin, interpolated by `os`.
std::vector<double> doppler_cut(const RadarImage& img, std::size_t range_bin, std::size_t os = 1);

/// Out to the first local minimum on each side of `peak`.
CutMask cut_mainlobe(const std::vector<double>& cut, std::size_t peak);
/// Highest sample within +-radius of `center` (circular).
std::size_t local_peak(const std::vector<double>& cut, std::size_t center, std::size_t radius);

MainlobeMask mainlobe_mask(const RadarImage& img, Bin peak);

double pslr(const std::vector<double>& cut, const CutMask& mask);
double islr(const std::vector<double>& cut, const CutMask& mask);

/// 10 log10(max |pn|^2 / |ideal(target)|^2). The PN peak is searched over the
/// whole image unless a search radius (in bins, per axis) is given.
double pplr(const RadarImage& pn, const RadarImage& ideal, Bin target,
            std::optional<std::size_t> search_radius = std::nullopt);

struct ImageSir {
    double mean_db;
    double min_db;
};

/// Peak is the mask's peak bin. mean = 20 log10(|peak| / mean |pixel|),
/// min = min over pixels of 20 log10(|peak| / |pixel|), over pixels outside
/// the mask.
ImageSir image_sir(const RadarImage& img, const MainlobeMask& mask);

struct CutMetrics {
    double pslr_db;
    double islr_db;
};

/// Range and Doppler PSLR/ISLR through `at`, on oversampled cuts.
CutMetrics range_metrics(const RadarImage& img, Bin at, std::size_t os = kCutOversampling);
CutMetrics doppler_metrics(const RadarImage& img, Bin at, std::size_t os = kCutOversampling);

}  // namespace isacpn
