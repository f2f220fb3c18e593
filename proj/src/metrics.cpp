// SPDX-License-Identifier: Apache-2.0
#include "isacpn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isacpn/errors.hpp"

namespace isacpn {
namespace {

bool in_arc(std::size_t i, std::size_t center, std::size_t left, std::size_t right, std::size_t n) {
    if (left + right + 1 >= n) return true;
    const std::size_t off = (i + n - center) % n;  // steps to the right
    return off <= right || n - off <= left;
}

// Trigonometric interpolation of a length-n sequence given as a sum of n
// harmonics centred on zero (rows of the transform domain in DFT order).
std::vector<double> interpolate_centered(std::vector<cplx> x, std::size_t os, bool inverse_domain) {
    const std::size_t n = x.size();
    if (os <= 1) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = std::norm(x[i]);
        return p;
    }
    // Back to the transform domain.
    if (inverse_domain) fft::forward_unitary(x.data(), n);
    else fft::inverse_unitary(x.data(), n);
    std::vector<cplx> big(n * os, cplx{});
    const std::size_t pos = (n + 1) / 2;
    for (std::size_t i = 0; i < pos; ++i) big[i] = x[i];
    for (std::size_t i = pos; i < n; ++i) big[n * os - (n - i)] = x[i];
    if (inverse_domain) fft::inverse_unitary(big.data(), n * os);
    else fft::forward_unitary(big.data(), n * os);
    std::vector<double> p(n * os);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(big[i]) * static_cast<double>(os);
    return p;
}

}  // namespace

bool MainlobeMask::contains(std::size_t r, std::size_t d, std::size_t n_range, std::size_t n_doppler) const {
    return in_arc(r, peak.range, range_left, range_right, n_range) &&
           in_arc(d, peak.doppler, doppler_left, doppler_right, n_doppler);
}

Bin find_peak(const RadarImage& img) {
    std::size_t best = 0;
    double bp = -1.0;
    for (std::size_t i = 0; i < img.grid.size(); ++i) {
        const double p = std::norm(img.grid[i]);
        if (p > bp) {
            bp = p;
            best = i;
        }
    }
    return {best % img.n_range, best / img.n_range};
}

std::vector<double> range_cut(const RadarImage& img, std::size_t doppler_col, std::size_t os) {
    std::vector<cplx> x(img.grid.begin() + static_cast<long>(doppler_col * img.n_range),
                        img.grid.begin() + static_cast<long>((doppler_col + 1) * img.n_range));
    // Range profiles came from an inverse DFT over subcarriers.
    return interpolate_centered(std::move(x), os, true);
}

std::vector<double> doppler_cut(const RadarImage& img, std::size_t range_bin, std::size_t os) {
    const std::size_t m = img.n_doppler;
    std::vector<cplx> x(m);
    // Undo the centring so index 0 is Doppler bin 0.
    for (std::size_t j = 0; j < m; ++j) x[(j + m - m / 2) % m] = img.at(range_bin, j);
    if (os <= 1) {
        std::vector<double> p(m);
        for (std::size_t j = 0; j < m; ++j) p[j] = std::norm(img.at(range_bin, j));
        return p;
    }
    // Symbols are a plain 0..M-1 sequence: pad after the last one.
    fft::inverse_unitary(x.data(), m);
    std::vector<cplx> big(m * os, cplx{});
    std::copy(x.begin(), x.end(), big.begin());
    fft::forward_unitary(big.data(), m * os);
    const std::size_t len = m * os, shift = (m / 2) * os;
    std::vector<double> p(len);
    for (std::size_t i = 0; i < len; ++i) p[(i + shift) % len] = std::norm(big[i]) * static_cast<double>(os);
    return p;
}

CutMask cut_mainlobe(const std::vector<double>& cut, std::size_t peak) {
    const std::size_t n = cut.size();
    CutMask mk{peak, 0, 0};
    while (mk.right + 1 < n && cut[(peak + mk.right + 1) % n] < cut[(peak + mk.right) % n]) ++mk.right;
    while (mk.left + 1 < n && cut[(peak + n - mk.left - 1) % n] < cut[(peak + n - mk.left) % n]) ++mk.left;
    return mk;
}

std::size_t local_peak(const std::vector<double>& cut, std::size_t center, std::size_t radius) {
    const std::size_t n = cut.size();
    std::size_t best = center % n;
    for (std::size_t o = 0; o <= 2 * radius; ++o) {
        const std::size_t i = (center + n * (radius / n + 1) + o - radius) % n;
        if (cut[i] > cut[best]) best = i;
    }
    return best;
}

MainlobeMask mainlobe_mask(const RadarImage& img, Bin peak) {
    MainlobeMask m;
    m.peak = peak;
    const auto rc = cut_mainlobe(range_cut(img, peak.doppler, 1), peak.range);
    const auto dc = cut_mainlobe(doppler_cut(img, peak.range, 1), peak.doppler);
    m.range_left = rc.left;
    m.range_right = rc.right;
    m.doppler_left = dc.left;
    m.doppler_right = dc.right;
    return m;
}

double pslr(const std::vector<double>& cut, const CutMask& mask) {
    const std::size_t n = cut.size();
    double side = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_arc(i, mask.peak, mask.left, mask.right, n)) side = std::max(side, cut[i]);
    if (side < 0.0) throw DomainError("cut has no sidelobe region");
    return 10.0 * std::log10(side / cut[mask.peak]);
}

double islr(const std::vector<double>& cut, const CutMask& mask) {
    const std::size_t n = cut.size();
    double side = 0.0, main = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_arc(i, mask.peak, mask.left, mask.right, n)) {
            main += cut[i];
        } else {
            side += cut[i];
            any = true;
        }
    }
    if (!any) throw DomainError("cut has no sidelobe region");
    return 10.0 * std::log10(side / main);
}

double pplr(const RadarImage& pn, const RadarImage& ideal, Bin target, std::optional<std::size_t> search_radius) {
    if (pn.grid.size() != ideal.grid.size()) throw DomainError("images differ in size");
    const double ref = std::norm(ideal.at(target.range, target.doppler));
    if (!(ref > 0.0)) throw DomainError("ideal image has no peak at the target");
    double best = 0.0;
    if (!search_radius) {
        for (const auto& v : pn.grid) best = std::max(best, std::norm(v));
    } else {
        const long rad = static_cast<long>(*search_radius);
        const long nr = static_cast<long>(pn.n_range), nd = static_cast<long>(pn.n_doppler);
        for (long dr = -rad; dr <= rad; ++dr)
            for (long dd = -rad; dd <= rad; ++dd) {
                const auto r = static_cast<std::size_t>(((static_cast<long>(target.range) + dr) % nr + nr) % nr);
                const auto d = static_cast<std::size_t>(((static_cast<long>(target.doppler) + dd) % nd + nd) % nd);
                best = std::max(best, std::norm(pn.at(r, d)));
            }
    }
    if (best == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(best / ref);
}

ImageSir image_sir(const RadarImage& img, const MainlobeMask& mask) {
    const double peak = std::abs(img.at(mask.peak.range, mask.peak.doppler));
    double sum = 0.0, worst = 0.0;
    std::size_t count = 0;
    for (std::size_t d = 0; d < img.n_doppler; ++d)
        for (std::size_t r = 0; r < img.n_range; ++r) {
            if (mask.contains(r, d, img.n_range, img.n_doppler)) continue;
            const double a = std::abs(img.at(r, d));
            sum += a;
            worst = std::max(worst, a);
            ++count;
        }
    if (count == 0) throw DomainError("no pixels outside the mainlobe");
    const double mean = sum / static_cast<double>(count);
    auto ratio_db = [&](double a) {
        if (a <= 0.0) return std::numeric_limits<double>::infinity();
        return 20.0 * std::log10(peak / a);
    };
    return {ratio_db(mean), ratio_db(worst)};
}

CutMetrics range_metrics(const RadarImage& img, Bin at, std::size_t os) {
    const auto cut = range_cut(img, at.doppler, os);
    const auto mk = cut_mainlobe(cut, local_peak(cut, at.range * os, os / 2));
    return {pslr(cut, mk), islr(cut, mk)};
}

CutMetrics doppler_metrics(const RadarImage& img, Bin at, std::size_t os) {
    const auto cut = doppler_cut(img, at.range, os);
    const auto mk = cut_mainlobe(cut, local_peak(cut, at.doppler * os, os / 2));
    return {pslr(cut, mk), islr(cut, mk)};
}

}  // namespace isacpn
