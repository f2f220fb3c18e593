// SPDX-License-Identifier: Apache-2.0
#include "isacpn/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "isacpn/errors.hpp"

namespace isacpn {
namespace {

std::vector<cplx> make_square_qam(int bits) {
    const int per_axis = bits / 2;
    const int side = 1 << per_axis;
    std::vector<double> levels(side);
    // Gray code g -> amplitude level: binary-reflected per axis.
    for (int b = 0; b < side; ++b) {
        const int gray_inv = [&] {
            int v = b;
            for (int s = 1; s < per_axis; s <<= 1) v ^= v >> s;
            return v;
        }();
        levels[b] = static_cast<double>(2 * gray_inv - (side - 1));
    }
    double power = 0.0;
    for (double l : levels) power += l * l;
    power = 2.0 * power / side;
    const double scale = 1.0 / std::sqrt(power);

    std::vector<cplx> pts(1u << bits);
    for (int label = 0; label < (1 << bits); ++label) {
        const int bi = label >> per_axis;
        const int bq = label & (side - 1);
        pts[label] = cplx{levels[bi] * scale, levels[bq] * scale};
    }
    return pts;
}

}  // namespace

Modulation parse_modulation(const std::string& s) {
    std::string u = s;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
    u.erase(std::remove(u.begin(), u.end(), '-'), u.end());
    if (u == "QPSK" || u == "4QAM" || u == "QAM4") return Modulation::QPSK;
    if (u == "16QAM" || u == "QAM16") return Modulation::QAM16;
    if (u == "64QAM" || u == "QAM64") return Modulation::QAM64;
    if (u == "256QAM" || u == "QAM256") return Modulation::QAM256;
    throw ConfigError("unknown modulation: " + s);
}

std::string to_string(Modulation m) {
    switch (m) {
        case Modulation::QPSK: return "QPSK";
        case Modulation::QAM16: return "16-QAM";
        case Modulation::QAM64: return "64-QAM";
        case Modulation::QAM256: return "256-QAM";
    }
    return "?";
}

int bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::QPSK: return 2;
        case Modulation::QAM16: return 4;
        case Modulation::QAM64: return 6;
        case Modulation::QAM256: return 8;
    }
    return 0;
}

void WaveformConfig::validate() const {
    if (!(bandwidth > 0)) throw ConfigError("bandwidth must be positive");
    if (n_subcarriers < 2 || n_symbols < 1) throw ConfigError("N >= 2 and M >= 1 required");
    if (cp_length > n_subcarriers) throw ConfigError("N_CP must not exceed N");
}

FreqFrame::FreqFrame(const WaveformConfig& c) : config(c), grid(c.n_subcarriers * c.n_symbols) {}

long subcarrier_of_row(std::size_t row, std::size_t n) {
    return row < n / 2 ? static_cast<long>(row) : static_cast<long>(row) - static_cast<long>(n);
}

std::size_t row_of_subcarrier(long k, std::size_t n) {
    const long ln = static_cast<long>(n);
    if (k < -ln / 2 || k >= ln - ln / 2) throw RangeError("subcarrier index out of range");
    return static_cast<std::size_t>(k < 0 ? k + ln : k);
}

cplx& FreqFrame::at(long k, std::size_t m) { return at_row(row_of_subcarrier(k, rows()), m); }
const cplx& FreqFrame::at(long k, std::size_t m) const { return at_row(row_of_subcarrier(k, rows()), m); }

const std::vector<cplx>& alphabet(Modulation m) {
    static const std::vector<cplx> qpsk = make_square_qam(2);
    static const std::vector<cplx> q16 = make_square_qam(4);
    static const std::vector<cplx> q64 = make_square_qam(6);
    static const std::vector<cplx> q256 = make_square_qam(8);
    switch (m) {
        case Modulation::QPSK: return qpsk;
        case Modulation::QAM16: return q16;
        case Modulation::QAM64: return q64;
        case Modulation::QAM256: return q256;
    }
    return qpsk;
}

FreqFrame random_frame(const WaveformConfig& config, std::uint64_t seed) {
    config.validate();
    FreqFrame f(config);
    const auto& pts = alphabet(config.modulation);
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = pts.size() - 1;
    for (auto& v : f.grid) v = pts[rng() & mask];
    return f;
}

TimeFrame modulate(const FreqFrame& frame) {
    const auto& c = frame.config;
    const std::size_t n = c.n_subcarriers, ncp = c.cp_length, len = c.symbol_length();
    TimeFrame t{c, std::vector<cplx>(c.frame_length())};
    std::vector<cplx> buf(n);
    for (std::size_t m = 0; m < c.n_symbols; ++m) {
        std::copy_n(frame.column(m), n, buf.begin());
        fft::inverse_unitary(buf.data(), n);
        cplx* out = t.samples.data() + m * len;
        std::copy(buf.end() - static_cast<long>(ncp), buf.end(), out);
        std::copy(buf.begin(), buf.end(), out + ncp);
    }
    return t;
}

FreqFrame demodulate(const TimeFrame& t) {
    const auto& c = t.config;
    if (t.samples.size() != c.frame_length()) throw FrameError("time frame length does not match config");
    const std::size_t n = c.n_subcarriers, ncp = c.cp_length, len = c.symbol_length();
    FreqFrame f(c);
    for (std::size_t m = 0; m < c.n_symbols; ++m) {
        cplx* col = f.column(m);
        std::copy_n(t.samples.data() + m * len + ncp, n, col);
        fft::forward_unitary(col, n);
    }
    return f;
}

namespace {

double error_ratio(const FreqFrame& y, const FreqFrame& x, EvmOptions opt) {
    if (y.grid.size() != x.grid.size()) throw FrameError("frame dimensions differ");
    double px = 0.0, py = 0.0;
    cplx cross{};
    for (std::size_t i = 0; i < x.grid.size(); ++i) {
        px += std::norm(x.grid[i]);
        py += std::norm(y.grid[i]);
        cross += x.grid[i] * std::conj(y.grid[i]);
    }
    if (px == 0.0) throw DomainError("reference frame has zero power");
    const cplx c = (opt.equalize && py > 0.0) ? cross / py : cplx{1.0, 0.0};
    double err = 0.0;
    for (std::size_t i = 0; i < x.grid.size(); ++i) err += std::norm(c * y.grid[i] - x.grid[i]);
    return err / px;
}

}  // namespace

double evm(const FreqFrame& received, const FreqFrame& reference, EvmOptions opt) {
    const double r = error_ratio(received, reference, opt);
    const double db = 10.0 * std::log10(r);
    return (r <= 0.0 || db <= kEvmFloorDb) ? kEvmFloorDb : db;
}

double subcarrier_sir(const FreqFrame& received, const FreqFrame& reference, EvmOptions opt) {
    return -evm(received, reference, opt);
}

void write_constellation_csv(const FreqFrame& frame, const std::string& path, const std::string& header) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (!header.empty()) os << header;
    os << "i,q,symbol,subcarrier\n";
    os.precision(9);
    for (std::size_t m = 0; m < frame.cols(); ++m)
        for (std::size_t r = 0; r < frame.rows(); ++r) {
            const long k = subcarrier_of_row(r, frame.rows());
            const cplx v = frame.at_row(r, m);
            os << v.real() << "," << v.imag() << "," << m << "," << k << "\n";
        }
}

}  // namespace isacpn
