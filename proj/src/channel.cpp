// SPDX-License-Identifier: Apache-2.0
#include "isacpn/channel.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "isacpn/errors.hpp"

namespace isacpn {

double PnPair::theta_tx(long long idx) const {
    if (!tx) return 0.0;
    const long long i = static_cast<long long>(origin) + idx;
    if (i < 0 || static_cast<std::size_t>(i) >= tx->samples.size()) throw RangeError("Tx PN index outside span");
    return scale * tx->samples[static_cast<std::size_t>(i)];
}

double PnPair::theta_rx(long long idx) const {
    if (!rx) return 0.0;
    const long long i = static_cast<long long>(origin) + idx;
    if (i < 0 || static_cast<std::size_t>(i) >= rx->samples.size()) throw RangeError("Rx PN index outside span");
    return scale * rx->samples[static_cast<std::size_t>(i)];
}

double wrap_phase(double x) {
    const double two_pi = 2.0 * std::numbers::pi;
    double y = std::fmod(x, two_pi);
    if (y > std::numbers::pi) y -= two_pi;
    if (y <= -std::numbers::pi) y += two_pi;
    return y;
}

double derive_psi(double psi_tx, double psi_rx, double fc, double tau) {
    // Reduce fc*tau to its fractional cycle first to keep precision for long delays.
    const double cycles = fc * tau;
    const double frac = cycles - std::round(cycles);
    return wrap_phase(psi_tx - psi_rx - 2.0 * std::numbers::pi * frac);
}

std::size_t max_delay(const PathSet& paths) {
    std::size_t d = 0;
    for (const auto& p : paths.paths) d = std::max(d, p.delay_samples);
    return d;
}

std::size_t pn_series_length(const WaveformConfig& c, std::size_t delay, double f_min) {
    const std::size_t span = c.frame_length() + delay;
    const auto floor_len = static_cast<std::size_t>(std::ceil(c.bandwidth / f_min));
    return fft::fast_size(std::max(span, floor_len));
}

PnPair draw_pn(const WaveformConfig& c, const PathSet& paths, const PnMode& mode, std::uint64_t seed,
               double f_min) {
    PnPair pair;
    if (mode.kind == PnMode::Kind::None) return pair;
    const std::size_t delay = max_delay(paths);
    const std::size_t n = pn_series_length(c, delay, f_min);
    pair.origin = delay;
    pair.tx = std::make_shared<const PnRealization>(
        synthesize(*mode.tx, c.bandwidth, n, derive_seed(seed, 101), f_min));
    if (mode.kind == PnMode::Kind::Monostatic) {
        pair.rx = pair.tx;
    } else {
        pair.rx = std::make_shared<const PnRealization>(
            synthesize(*mode.rx, c.bandwidth, n, derive_seed(seed, 202), f_min));
    }
    return pair;
}

TimeFrame apply_channel(const TimeFrame& t, const PathSet& paths, const PnMode& pn, std::uint64_t seed,
                        ChannelOptions opt) {
    return apply_channel(t, paths, draw_pn(t.config, paths, pn, seed, opt.f_min), opt);
}

TimeFrame apply_channel(const TimeFrame& t, const PathSet& paths, const PnPair& pn, ChannelOptions opt) {
    const auto& c = t.config;
    const std::size_t len = t.samples.size();
    TimeFrame out{c, std::vector<cplx>(len, cplx{})};

    const std::size_t delay = max_delay(paths);
    if (!pn.empty()) {
        if (delay > pn.origin) throw RangeError("path delay exceeds PN pre-extension");
        const std::size_t need = pn.origin + len;
        if ((pn.tx && pn.tx->samples.size() < need) || (pn.rx && pn.rx->samples.size() < need))
            throw RangeError("PN series shorter than frame");
    }

    const double* tx = pn.tx ? pn.tx->samples.data() + pn.origin : nullptr;
    const double* rx = pn.rx ? pn.rx->samples.data() + pn.origin : nullptr;
    const double scale = pn.scale;
    const bool small = opt.application == PnApplication::SmallAngle;

    for (const auto& p : paths.paths) {
        if (p.delay_samples > c.cp_length) {
            static bool warned = false;
            if (!warned) std::cerr << "warning: path delay exceeds N_CP, ISI present\n";
            warned = true;
        }
        const double w = 2.0 * std::numbers::pi * p.doppler_hz / c.bandwidth;
        const long long nd = static_cast<long long>(p.delay_samples);
        const cplx gain = p.alpha * std::polar(1.0, p.psi);
        for (std::size_t s = nd; s < len; ++s) {
            const long long sd = static_cast<long long>(s) - nd;
            const double dtheta = scale * ((tx ? tx[sd] : 0.0) - (rx ? rx[s] : 0.0));
            const double doppler = w * static_cast<double>(s);
            cplx g;
            if (small) g = std::polar(1.0, doppler) * cplx{1.0, dtheta};
            else g = std::polar(1.0, doppler + dtheta);
            out.samples[s] += gain * t.samples[static_cast<std::size_t>(sd)] * g;
        }
    }
    return out;
}

}  // namespace isacpn
