// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isacpn/fft.hpp"

namespace isacpn {

enum class Modulation { QPSK, QAM16, QAM64, QAM256 };

Modulation parse_modulation(const std::string& s);
std::string to_string(Modulation m);
int bits_per_symbol(Modulation m);

struct WaveformConfig {
    double fc = 26.2e9;
    double bandwidth = 1e9;
    std::size_t n_subcarriers = 2048;
    std::size_t cp_length = 512;
    std::size_t n_symbols = 128;
    Modulation modulation = Modulation::QPSK;

    double subcarrier_spacing() const { return bandwidth / static_cast<double>(n_subcarriers); }
    std::size_t symbol_length() const { return n_subcarriers + cp_length; }
    std::size_t frame_length() const { return n_symbols * symbol_length(); }
    void validate() const;
};

/// N x M grid, column-major by symbol. Rows are in DFT order: row i holds
/// subcarrier k = i for i < N/2 and k = i - N otherwise.
struct FreqFrame {
    WaveformConfig config;
    std::vector<cplx> grid;

    FreqFrame() = default;
    explicit FreqFrame(const WaveformConfig& c);

    std::size_t rows() const { return config.n_subcarriers; }
    std::size_t cols() const { return config.n_symbols; }
    cplx& at_row(std::size_t i, std::size_t m) { return grid[m * rows() + i]; }
    const cplx& at_row(std::size_t i, std::size_t m) const { return grid[m * rows() + i]; }
    /// Signed subcarrier index k in [-N/2, N/2).
    cplx& at(long k, std::size_t m);
    const cplx& at(long k, std::size_t m) const;
    cplx* column(std::size_t m) { return grid.data() + m * rows(); }
    const cplx* column(std::size_t m) const { return grid.data() + m * rows(); }
};

long subcarrier_of_row(std::size_t row, std::size_t n);
std::size_t row_of_subcarrier(long k, std::size_t n);

struct TimeFrame {
    WaveformConfig config;
    std::vector<cplx> samples;
};

/// Gray-coded square constellation at unit average power, indexed by the bit
/// label.
const std::vector<cplx>& alphabet(Modulation m);

FreqFrame random_frame(const WaveformConfig& config, std::uint64_t seed);
TimeFrame modulate(const FreqFrame& frame);
FreqFrame demodulate(const TimeFrame& t);

/// Error-to-signal power ratio in dB at or below this is reported as the floor.
inline constexpr double kEvmFloorDb = -300.0;

struct EvmOptions {
    bool equalize = true;
};

double evm(const FreqFrame& received, const FreqFrame& reference, EvmOptions opt = {});
double subcarrier_sir(const FreqFrame& received, const FreqFrame& reference, EvmOptions opt = {});

/// Rows of (I, Q, symbol, subcarrier).
void write_constellation_csv(const FreqFrame& frame, const std::string& path, const std::string& header = {});

}  // namespace isacpn
