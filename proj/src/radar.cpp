// SPDX-License-Identifier: Apache-2.0
#include "isacpn/radar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "isacpn/errors.hpp"

namespace isacpn {
namespace {

// Dolph-Chebyshev weights, same construction as scipy.signal.windows.chebwin.
std::vector<double> chebwin(std::size_t m, double at) {
    const double order = static_cast<double>(m) - 1.0;
    const double beta = std::cosh(std::acosh(std::pow(10.0, std::abs(at) / 20.0)) / order);
    std::vector<cplx> p(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = beta * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
        double v;
        if (x > 1.0) v = std::cosh(order * std::acosh(x));
        else if (x < -1.0) v = (2.0 * static_cast<double>(m % 2) - 1.0) * std::cosh(order * std::acosh(-x));
        else v = std::cos(order * std::acos(x));
        p[k] = v;
    }
    std::vector<double> w;
    if (m % 2) {
        fft::forward(p.data(), m);
        const std::size_t n = (m + 1) / 2;
        for (std::size_t i = n - 1; i >= 1; --i) w.push_back(p[i].real());
        for (std::size_t i = 0; i < n; ++i) w.push_back(p[i].real());
    } else {
        for (std::size_t k = 0; k < m; ++k)
            p[k] *= std::polar(1.0, std::numbers::pi / static_cast<double>(m) * static_cast<double>(k));
        fft::forward(p.data(), m);
        const std::size_t n = m / 2 + 1;
        for (std::size_t i = n - 1; i >= 1; --i) w.push_back(p[i].real());
        for (std::size_t i = 1; i < n; ++i) w.push_back(p[i].real());
    }
    return w;
}

}  // namespace

std::string WindowSpec::describe() const {
    if (kind == Kind::Rectangular) return "rectangular";
    std::ostringstream os;
    os << "chebyshev(" << attenuation_db << "dB)";
    return os.str();
}

std::vector<double> make_window(const WindowSpec& spec, std::size_t length) {
    if (length < 2) throw DomainError("window length must be at least 2");
    if (spec.kind == WindowSpec::Kind::Rectangular) return std::vector<double>(length, 1.0);
    if (!(spec.attenuation_db > 0)) throw DomainError("window attenuation must be positive");
    auto w = chebwin(length, spec.attenuation_db);
    double sum = 0.0;
    for (double v : w) sum += v;
    const double s = static_cast<double>(length) / sum;
    for (double& v : w) v *= s;
    return w;
}

Axes axes(const WaveformConfig& c, Architecture arch) {
    Axes a;
    const double dr = arch == Architecture::Monostatic ? kSpeedOfLight / (2.0 * c.bandwidth) : kSpeedOfLight / c.bandwidth;
    a.range_resolution = dr;
    a.r_max_ua = static_cast<double>(c.n_subcarriers) * dr;
    a.doppler_resolution = c.bandwidth / (static_cast<double>(c.n_symbols) * static_cast<double>(c.symbol_length()));
    a.range_m.resize(c.n_subcarriers);
    for (std::size_t i = 0; i < c.n_subcarriers; ++i) a.range_m[i] = dr * static_cast<double>(i);
    a.doppler_hz.resize(c.n_symbols);
    const long half = static_cast<long>(c.n_symbols / 2);
    for (std::size_t j = 0; j < c.n_symbols; ++j)
        a.doppler_hz[j] = a.doppler_resolution * static_cast<double>(static_cast<long>(j) - half);
    return a;
}

std::size_t doppler_column(const WaveformConfig& c, double f_d) {
    const auto a = axes(c, Architecture::Bistatic);
    const long m = static_cast<long>(c.n_symbols);
    long bin = std::lround(f_d / a.doppler_resolution);
    bin = ((bin % m) + m) % m;  // FFT order
    const long col = (bin + m / 2) % m;
    return static_cast<std::size_t>(col);
}

RadarImage form_image(const FreqFrame& received, const FreqFrame& known, const WindowSpec& win_range,
                      const WindowSpec& win_doppler, Architecture arch) {
    if (received.grid.size() != known.grid.size() || received.rows() != known.rows())
        throw FrameError("received and known frames differ in size");
    const std::size_t n = received.rows(), m = received.cols();
    const auto wr = make_window(win_range, n);
    const auto wd = m >= 2 ? make_window(win_doppler, m) : std::vector<double>(m, 1.0);

    RadarImage img;
    img.n_range = n;
    img.n_doppler = m;
    img.win_range = win_range;
    img.win_doppler = win_doppler;
    img.architecture = arch;
    auto ax = axes(received.config, arch);
    img.range_axis = std::move(ax.range_m);
    img.doppler_axis = std::move(ax.doppler_hz);

    std::vector<cplx> d(n * m);
    for (std::size_t col = 0; col < m; ++col) {
        cplx* dst = d.data() + col * n;
        for (std::size_t r = 0; r < n; ++r) {
            const cplx x = known.at_row(r, col);
            if (x == cplx{}) throw DomainError("known frame has a zero entry");
            const long k = subcarrier_of_row(r, n);
            const auto wi = static_cast<std::size_t>(k + static_cast<long>(n / 2));
            dst[r] = received.at_row(r, col) / x * (wr[wi] * wd[col]);
        }
        fft::inverse_unitary(dst, n);
    }

    img.grid.assign(n * m, cplx{});
    std::vector<cplx> row(m);
    const std::size_t half = m / 2;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t col = 0; col < m; ++col) row[col] = d[col * n + r];
        fft::forward_unitary(row.data(), m);
        for (std::size_t b = 0; b < m; ++b) {
            const std::size_t j = (b + half) % m;
            img.grid[j * n + r] = row[b];
        }
    }
    return img;
}

void write_image_csv(const RadarImage& img, const std::string& path, double ref_power, const std::string& header) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    if (!header.empty()) os << header;
    os << "range_m,doppler_hz,magnitude_db\n";
    os.precision(8);
    for (std::size_t d = 0; d < img.n_doppler; ++d)
        for (std::size_t r = 0; r < img.n_range; ++r) {
            const double p = std::norm(img.at(r, d)) / ref_power;
            os << img.range_axis[r] << "," << img.doppler_axis[d] << "," << (p > 0 ? 10.0 * std::log10(p) : -400.0)
               << "\n";
        }
}

}  // namespace isacpn
