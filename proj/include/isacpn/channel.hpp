// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "isacpn/ofdm.hpp"
#include "isacpn/pn_model.hpp"
#include "isacpn/pn_synth.hpp"

namespace isacpn {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class Architecture { Monostatic, Bistatic };

struct Path {
    cplx alpha{1.0, 0.0};
    std::size_t delay_samples = 0;
    double doppler_hz = 0.0;
    double psi = 0.0;
};

struct PathSet {
    Architecture architecture = Architecture::Bistatic;
    std::vector<Path> paths;
};

struct PnMode {
    enum class Kind { None, Monostatic, Bistatic } kind = Kind::None;
    std::optional<PnPsdModel> tx;  // also the shared model in monostatic mode
    std::optional<PnPsdModel> rx;

    static PnMode none() { return {}; }
    static PnMode monostatic(const PnPsdModel& m) { return {Kind::Monostatic, m, m}; }
    static PnMode bistatic(const PnPsdModel& tx, const PnPsdModel& rx) { return {Kind::Bistatic, tx, rx}; }
};

enum class PnApplication { Exact, SmallAngle };

/// Tx and Rx phase series covering a frame. Frame sample s maps to series
/// index origin + s. In monostatic mode tx and rx point to the same series.
struct PnPair {
    std::shared_ptr<const PnRealization> tx;
    std::shared_ptr<const PnRealization> rx;
    std::size_t origin = 0;
    double scale = 1.0;  // amplitude factor applied to both series

    bool empty() const { return !tx && !rx; }
    double theta_tx(long long idx) const;
    double theta_rx(long long idx) const;
};

struct ChannelOptions {
    PnApplication application = PnApplication::Exact;
    double f_min = kDefaultFMin;
};

double wrap_phase(double x);

/// psi_tx - psi_rx - 2*pi*fc*tau wrapped to (-pi, pi].
double derive_psi(double psi_tx, double psi_rx, double fc, double tau);

std::size_t max_delay(const PathSet& paths);

/// Realization length used for a frame: covers the span and reaches down to f_min.
std::size_t pn_series_length(const WaveformConfig& c, std::size_t max_delay, double f_min);

/// Draws the Tx/Rx series for one frame.
PnPair draw_pn(const WaveformConfig& c, const PathSet& paths, const PnMode& mode, std::uint64_t seed,
               double f_min = kDefaultFMin);

TimeFrame apply_channel(const TimeFrame& t, const PathSet& paths, const PnMode& pn, std::uint64_t seed,
                        ChannelOptions opt = {});

TimeFrame apply_channel(const TimeFrame& t, const PathSet& paths, const PnPair& pn, ChannelOptions opt = {});

}  // namespace isacpn
