// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "isacpn/channel.hpp"
#include "isacpn/ofdm.hpp"

namespace isacpn {

struct WindowSpec;

struct CpeSeries {
    std::vector<double> phase;  // rad, one per symbol
};

struct CpeIciTerms {
    FreqFrame cpe;
    FreqFrame ici;
};

/// PN-free received frame of a single path with the Doppler phase taken at
/// each symbol's payload start.
FreqFrame pn_free_frame(const FreqFrame& ideal, const Path& path);

/// Per-symbol mean of theta_tx(n - n_delta) - theta_rx(n) over the payload.
std::vector<double> symbol_pn_mean(const PnPair& pn, const WaveformConfig& c, const Path& path);

CpeIciTerms decompose(const PnPair& pn, const FreqFrame& ideal, const PathSet& paths);

CpeSeries estimate_cpe(const FreqFrame& received, const FreqFrame& known);

FreqFrame correct_cpe(const FreqFrame& received, const CpeSeries& cpe);

/// Phase of a given CIR bin per symbol, from the windowed Y/X.
std::vector<double> cir_bin_phase(const FreqFrame& received, const FreqFrame& known, const WindowSpec& window,
                                  std::size_t bin);

struct ReferenceOptions {
    double dominance_db = 20.0;
};

CpeSeries estimate_cpe_from_reference(const FreqFrame& received, const FreqFrame& known, const WindowSpec& window,
                                      ReferenceOptions opt = {});

void write_cpe_csv(const CpeSeries& s, const std::string& path, const std::string& header = {});

}  // namespace isacpn
