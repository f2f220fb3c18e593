// SPDX-License-Identifier: Apache-2.0
#include "isacpn/cpe.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "isacpn/errors.hpp"
#include "isacpn/radar.hpp"

namespace isacpn {
namespace {

constexpr std::size_t kDirectIciLimit = 1024;

std::vector<double> symbol_dtheta(const PnPair& pn, const WaveformConfig& c, const Path& path, std::size_t m) {
    const std::size_t n = c.n_subcarriers;
    const long long base = static_cast<long long>(m * c.symbol_length() + c.cp_length);
    const long long nd = static_cast<long long>(path.delay_samples);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long s = base + static_cast<long long>(i);
        d[i] = pn.theta_tx(s - nd) - pn.theta_rx(s);
    }
    return d;
}

}  // namespace

FreqFrame pn_free_frame(const FreqFrame& ideal, const Path& path) {
    const auto& c = ideal.config;
    const std::size_t n = c.n_subcarriers;
    FreqFrame out(c);
    const cplx gain = path.alpha * std::polar(1.0, path.psi);
    for (std::size_t m = 0; m < c.n_symbols; ++m) {
        const double t0 = static_cast<double>(m * c.symbol_length() + c.cp_length) / c.bandwidth;
        const cplx dop = std::polar(1.0, 2.0 * std::numbers::pi * path.doppler_hz * t0);
        for (std::size_t r = 0; r < n; ++r) {
            const double k = static_cast<double>(subcarrier_of_row(r, n));
            const cplx ramp = std::polar(1.0, -2.0 * std::numbers::pi * k * static_cast<double>(path.delay_samples) /
                                                  static_cast<double>(n));
            out.at_row(r, m) = gain * ideal.at_row(r, m) * ramp * dop;
        }
    }
    return out;
}

std::vector<double> symbol_pn_mean(const PnPair& pn, const WaveformConfig& c, const Path& path) {
    std::vector<double> phi(c.n_symbols);
    for (std::size_t m = 0; m < c.n_symbols; ++m) {
        const auto d = symbol_dtheta(pn, c, path, m);
        double acc = 0.0;
        for (double v : d) acc += v;
        phi[m] = acc / static_cast<double>(d.size());
    }
    return phi;
}

CpeIciTerms decompose(const PnPair& pn, const FreqFrame& ideal, const PathSet& paths) {
    if (paths.paths.size() != 1) throw UnsupportedConfiguration("CPE/ICI decomposition needs exactly one path");
    const auto& path = paths.paths.front();
    const auto& c = ideal.config;
    const std::size_t n = c.n_subcarriers;
    const auto ytilde = pn_free_frame(ideal, path);
    const cplx j_over_n{0.0, 1.0 / static_cast<double>(n)};

    CpeIciTerms t{FreqFrame(c), FreqFrame(c)};
    std::vector<cplx> theta(n), buf(n);
    for (std::size_t m = 0; m < c.n_symbols; ++m) {
        const auto d = symbol_dtheta(pn, c, path, m);
        // theta[q] = sum_n dtheta[n] e^{+j 2 pi q n / N}
        for (std::size_t i = 0; i < n; ++i) theta[i] = d[i];
        fft::inverse(theta.data(), n);
        const cplx* y = ytilde.column(m);
        for (std::size_t r = 0; r < n; ++r) t.cpe.at_row(r, m) = j_over_n * y[r] * theta[0];

        if (n <= kDirectIciLimit) {
            // Explicit kappa != k leakage sum.
            for (std::size_t r = 0; r < n; ++r) {
                cplx acc{};
                for (std::size_t q = 1; q < n; ++q) acc += y[(r + q) % n] * theta[q];
                t.ici.at_row(r, m) = j_over_n * acc;
            }
        } else {
            // Same sum via the time domain: DFT(dtheta * IDFT(Ytilde)) minus the kappa = k term.
            std::copy_n(y, n, buf.begin());
            fft::inverse(buf.data(), n);
            for (std::size_t i = 0; i < n; ++i) buf[i] *= d[i];
            fft::forward(buf.data(), n);
            for (std::size_t r = 0; r < n; ++r) t.ici.at_row(r, m) = j_over_n * buf[r] - t.cpe.at_row(r, m);
        }
    }
    return t;
}

CpeSeries estimate_cpe(const FreqFrame& received, const FreqFrame& known) {
    if (received.grid.size() != known.grid.size()) throw FrameError("frame dimensions differ");
    CpeSeries s;
    s.phase.resize(received.cols());
    for (std::size_t m = 0; m < received.cols(); ++m) {
        cplx acc{};
        const cplx* y = received.column(m);
        const cplx* x = known.column(m);
        for (std::size_t r = 0; r < received.rows(); ++r) acc += y[r] * std::conj(x[r]);
        if (acc == cplx{}) throw EstimationError("symbol " + std::to_string(m) + " carries no energy");
        s.phase[m] = std::arg(acc);
    }
    return s;
}

FreqFrame correct_cpe(const FreqFrame& received, const CpeSeries& cpe) {
    if (cpe.phase.size() != received.cols()) throw FrameError("CPE series length does not match frame");
    FreqFrame out = received;
    for (std::size_t m = 0; m < out.cols(); ++m) {
        const cplx rot = std::polar(1.0, -cpe.phase[m]);
        cplx* col = out.column(m);
        for (std::size_t r = 0; r < out.rows(); ++r) col[r] *= rot;
    }
    return out;
}

namespace {

std::vector<cplx> symbol_cir(const FreqFrame& y, const FreqFrame& x, const std::vector<double>& w, std::size_t m) {
    const std::size_t n = y.rows();
    std::vector<cplx> h(n);
    for (std::size_t r = 0; r < n; ++r) {
        const long k = subcarrier_of_row(r, n);
        h[r] = y.at_row(r, m) / x.at_row(r, m) * w[static_cast<std::size_t>(k + static_cast<long>(n / 2))];
    }
    fft::inverse_unitary(h.data(), n);
    return h;
}

}  // namespace

std::vector<double> cir_bin_phase(const FreqFrame& received, const FreqFrame& known, const WindowSpec& window,
                                  std::size_t bin) {
    if (received.grid.size() != known.grid.size()) throw FrameError("frame dimensions differ");
    if (bin >= received.rows()) throw RangeError("CIR bin out of range");
    const auto w = make_window(window, received.rows());
    std::vector<double> out(received.cols());
    for (std::size_t m = 0; m < received.cols(); ++m) out[m] = std::arg(symbol_cir(received, known, w, m)[bin]);
    return out;
}

CpeSeries estimate_cpe_from_reference(const FreqFrame& received, const FreqFrame& known, const WindowSpec& window,
                                      ReferenceOptions opt) {
    if (received.grid.size() != known.grid.size()) throw FrameError("frame dimensions differ");
    const std::size_t n = received.rows();
    const auto w = make_window(window, n);
    const double ratio = std::pow(10.0, opt.dominance_db / 10.0);
    CpeSeries s;
    s.phase.resize(received.cols());
    for (std::size_t m = 0; m < received.cols(); ++m) {
        const auto h = symbol_cir(received, known, w, m);
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = std::norm(h[i]);
        // Reference mainlobe: walk away from bin 0 while power keeps falling.
        std::size_t right = 0;
        while (right + 1 < n && p[right + 1] < p[right]) ++right;
        std::size_t left = 0;  // steps to the left of bin 0
        while (left + 1 < n && p[(n - left - 1) % n] < p[(n - left) % n]) ++left;
        double side = 0.0;
        for (std::size_t i = right + 1; i + left < n; ++i) side = std::max(side, p[i]);
        if (!(p[0] > 0.0) || p[0] < ratio * side)
            throw EstimationError("reference path not dominant in symbol " + std::to_string(m));
        s.phase[m] = std::arg(h[0]);
    }
    return s;
}

void write_cpe_csv(const CpeSeries& s, const std::string& path, const std::string& header) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (!header.empty()) os << header;
    os << "symbol,phase_rad\n";
    os.precision(12);
    for (std::size_t m = 0; m < s.phase.size(); ++m) os << m << "," << s.phase[m] << "\n";
}

}  // namespace isacpn
