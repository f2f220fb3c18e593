#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isacpn/fft.hpp"
#include "isacpn/metrics.hpp"
#include "isacpn/radar.hpp"

using namespace isacpn;

namespace {

WaveformConfig wf(std::size_t n = 256, std::size_t ncp = 64, std::size_t m = 32) {
    WaveformConfig c;
    c.n_subcarriers = n;
    c.cp_length = ncp;
    c.n_symbols = m;
    return c;
}

RadarImage image_for(const WaveformConfig& c, const PathSet& ps, WindowSpec w = WindowSpec::rectangular()) {
    const auto x = random_frame(c, 12);
    const auto y = demodulate(apply_channel(modulate(x), ps, PnMode::none(), 1));
    return form_image(y, x, w, w, ps.architecture);
}

// Independent Dolph-Chebyshev oracle: inverse DFT of the Chebyshev polynomial samples, odd length.
std::vector<double> dolph_oracle(std::size_t n, double db) {
    const double r = std::pow(10.0, db / 20.0);
    const double x0 = std::cosh(std::acosh(r) / static_cast<double>(n - 1));
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = x0 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
            const double t = std::abs(x) <= 1.0 ? std::cos((n - 1) * std::acos(x)) : std::cosh((n - 1) * std::acosh(std::abs(x))) * (x < 0 && (n - 1) % 2 ? -1.0 : 1.0);
            acc += t * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) *
                                (static_cast<double>(i) - (n - 1) / 2.0) / static_cast<double>(n));
        }
        w[i] = acc;
    }
    double mean = 0;
    for (double v : w) mean += v / static_cast<double>(n);
    for (auto& v : w) v /= mean;
    return w;
}

}  // namespace

TEST_CASE("rectangular window") {
    const auto w = make_window(WindowSpec::rectangular(), 8);
    CHECK(w == std::vector<double>(8, 1.0));
}

TEST_CASE("Chebyshev window symmetry, normalization and sidelobes") {
    for (std::size_t len : {31u, 128u, 2048u}) {
        const auto w = make_window(WindowSpec::chebyshev(100), len);
        double mean = 0;
        for (double v : w) mean += v / static_cast<double>(len);
        CHECK(mean == doctest::Approx(1.0));
        for (std::size_t i = 0; i < len; ++i) CHECK(w[i] == doctest::Approx(w[len - 1 - i]).epsilon(1e-9));

        std::vector<cplx> x(len * 32);
        for (std::size_t i = 0; i < len; ++i) x[i] = w[i];
        fft::forward(x.data(), x.size());
        std::vector<double> p(x.size() / 2);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(x[i]);
        std::size_t k = 1;
        while (k + 1 < p.size() && p[k + 1] < p[k]) ++k;
        const double sl = *std::max_element(p.begin() + static_cast<long>(k), p.end());
        CAPTURE(len);
        CHECK(std::abs(10 * std::log10(sl / p[0]) + 100.0) < 0.5);
    }
}

TEST_CASE("Chebyshev window matches a direct Dolph construction") {
    const std::size_t n = 31;
    const auto w = make_window(WindowSpec::chebyshev(60), n);
    const auto o = dolph_oracle(n, 60);
    for (std::size_t i = 0; i < n; ++i) CHECK(w[i] == doctest::Approx(o[i]).epsilon(1e-6));
}

TEST_CASE("unambiguous ranges and resolutions") {
    auto c = wf(16384, 0, 128);
    CHECK(std::abs(axes(c, Architecture::Monostatic).r_max_ua / 2450.0 - 1.0) < 0.005);
    CHECK(std::abs(axes(c, Architecture::Bistatic).r_max_ua / 4910.0 - 1.0) < 0.005);
    c.n_subcarriers = 256;
    CHECK(std::abs(axes(c, Architecture::Monostatic).r_max_ua - 38.4) < 0.1);
    CHECK(axes(c, Architecture::Monostatic).range_resolution == doctest::Approx(0.149896229));
}

TEST_CASE("static target at origin gives full coherent gain") {
    const auto c = wf();
    const auto img = image_for(c, {Architecture::Bistatic, {Path{}}});
    const Bin pk = find_peak(img);
    CHECK(pk.range == 0);
    CHECK(pk.doppler == doppler_column(c, 0.0));
    CHECK(std::norm(img.at(pk.range, pk.doppler)) == doctest::Approx(img.reference_power()));
}

TEST_CASE("delayed moving target lands at its bins") {
    const auto c = wf();
    PathSet ps{Architecture::Bistatic, {Path{}}};
    ps.paths[0].delay_samples = 33;
    ps.paths[0].doppler_hz = 0.1 * c.subcarrier_spacing();
    const auto img = image_for(c, ps);
    const auto a = axes(c, Architecture::Bistatic);
    const Bin pk = find_peak(img);
    CHECK(pk.range == 33);
    // Oracle: nearest axis entry to f_D.
    std::size_t best = 0;
    for (std::size_t j = 0; j < a.doppler_hz.size(); ++j)
        if (std::abs(a.doppler_hz[j] - ps.paths[0].doppler_hz) < std::abs(a.doppler_hz[best] - ps.paths[0].doppler_hz)) best = j;
    CHECK(pk.doppler == best);
    CHECK(doppler_column(c, ps.paths[0].doppler_hz) == best);
}

TEST_CASE("negative Doppler columns") {
    const auto c = wf();
    const double res = axes(c, Architecture::Bistatic).doppler_resolution;
    CHECK(doppler_column(c, -res) == c.n_symbols / 2 - 1);
    CHECK(doppler_column(c, 2 * res) == c.n_symbols / 2 + 2);
}

TEST_CASE("images are linear in the received frame") {
    const auto c = wf(64, 16, 8);
    const auto x = random_frame(c, 2);
    auto y = x;
    for (auto& v : y.grid) v *= 2.0;
    const auto a = form_image(x, x, WindowSpec::rectangular(), WindowSpec::rectangular());
    const auto b = form_image(y, x, WindowSpec::rectangular(), WindowSpec::rectangular());
    for (std::size_t i = 0; i < a.grid.size(); ++i) CHECK(std::abs(b.grid[i] - 2.0 * a.grid[i]) < 1e-12);
}
