// SPDX-License-Identifier: Apache-2.0
// Acceptance suite. One PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (default: all)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isacpn/cpe.hpp"
#include "isacpn/experiments.hpp"
#include "isacpn/fft.hpp"
#include "isacpn/metrics.hpp"
#include "isacpn/studies.hpp"

using namespace isacpn;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (ok ? "" : "!") << what << "; ";
    }
    void near(double got, double want, double tol, const std::string& label) {
        char b[160];
        std::snprintf(b, sizeof b, "%s=%.3f (want %.3f+-%.2f)", label.c_str(), got, want, tol);
        check(std::abs(got - want) <= tol, b);
    }
};

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", v);
    return b;
}

std::string f2(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

std::size_t realizations() {
    if (const char* e = std::getenv("ISACPN_ACCEPT_REALIZATIONS")) return std::max(1, std::atoi(e));
    return 20;
}

ScenarioConfig sensing_cfg(std::size_t n, std::size_t ncp, std::size_t m, Modulation mod) {
    ScenarioConfig c;
    c.waveform.n_subcarriers = n;
    c.waveform.cp_length = ncp;
    c.waveform.n_symbols = m;
    c.waveform.modulation = mod;
    c.n_realizations = realizations();
    c.seed = 20240601;
    return c;
}

// Level used for "extreme PN": the right edge of the swept range, where every curve has flattened.
constexpr double kExtremeDbc = 35.0;

// ---------------------------------------------------------------- criteria

void c1(Outcome& o) {
    const auto m = reference_pll_model();
    o.near(lin_to_db(integrate_psd(m, 500e6)), -47.90, 0.05, "level(B=1GHz)");
    o.near(lin_to_db(integrate_psd(m, 150e3)), -52.78, 0.05, "level(B_PLL)");
}

void c2(Outcome& o) {
    auto c = sensing_cfg(2048, 512, 128, Modulation::QPSK);
    const auto known = random_frame(c.waveform, 3);
    const auto y = demodulate(apply_channel(modulate(known), c.paths, PnPair{}, {}));
    const auto img = form_image(y, known, WindowSpec::rectangular(), WindowSpec::rectangular());
    const Bin t{0, doppler_column(c.waveform, 0.0)};
    const auto rm = range_metrics(img, t);
    const auto dm = doppler_metrics(img, t);
    o.near(rm.pslr_db, -13.30, 0.1, "range PSLR");
    o.near(rm.islr_db, -9.68, 0.1, "range ISLR");
    o.near(dm.pslr_db, -13.30, 0.1, "Doppler PSLR");
    o.near(dm.islr_db, -9.68, 0.1, "Doppler ISLR");
}

void c3(Outcome& o) {
    WaveformConfig w;
    w.n_subcarriers = 256;
    w.cp_length = 64;
    w.n_symbols = 16;
    const auto tx = modulate(random_frame(w, 5));
    PathSet ps{Architecture::Monostatic, {Path{}}};
    ps.paths[0].psi = 0.7;
    const auto model = PnPsdModel::scaled(reference_pll_model(), db_to_lin(40));
    const auto out = apply_channel(tx, ps, PnMode::monostatic(model), 11);
    double num = 0, den = 0;
    const cplx rot = std::polar(1.0, 0.7);
    for (std::size_t i = 0; i < tx.samples.size(); ++i) {
        num += std::norm(out.samples[i] - tx.samples[i] * rot);
        den += std::norm(tx.samples[i]);
    }
    const double rel = std::sqrt(num / den);
    o.check(rel <= 1e-12, "rel err " + sci(rel));
}

void c4(Outcome& o) {
    WaveformConfig w;
    w.n_subcarriers = 256;
    w.cp_length = 32;
    w.n_symbols = 8;
    const auto known = random_frame(w, 9);
    PathSet ps{Architecture::Bistatic, {Path{}}};
    ps.paths[0].delay_samples = 5;
    ps.paths[0].psi = -0.3;
    auto pn = draw_pn(w, ps, PnMode::bistatic(reference_pll_model(), reference_pll_model()), 17);
    pn.scale = std::sqrt(db_to_lin(20));
    const auto y = demodulate(apply_channel(modulate(known), ps, pn, {PnApplication::SmallAngle}));
    const auto clean = demodulate(apply_channel(modulate(known), ps, PnPair{}, {PnApplication::SmallAngle}));
    const auto terms = decompose(pn, known, ps);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < y.grid.size(); ++i) {
        const cplx eta = y.grid[i] - clean.grid[i];
        num += std::norm(terms.cpe.grid[i] + terms.ici.grid[i] - eta);
        den += std::norm(eta);
    }
    const double rel = std::sqrt(num / den);
    o.check(rel <= 1e-10, "rel err " + sci(rel));
}

void c5(Outcome& o) {
    for (std::size_t len : {128u, 2048u}) {
        const auto w = make_window(WindowSpec::chebyshev(100), len);
        const std::size_t nfft = fft::fast_size(len * 64);
        std::vector<cplx> x(nfft);
        for (std::size_t i = 0; i < len; ++i) x[i] = w[i];
        fft::forward(x.data(), x.size());
        std::vector<double> p(nfft / 2);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(x[i]);
        std::size_t k = 1;
        while (k + 1 < p.size() && p[k + 1] < p[k]) ++k;
        const double sl = *std::max_element(p.begin() + static_cast<long>(k), p.end());
        o.near(lin_to_db(sl / p[0]), -100.0, 0.5, "sidelobe(L=" + std::to_string(len) + ")");
    }
}

void c6(Outcome& o) {
    WaveformConfig w;
    w.n_subcarriers = 16384;
    const double mono = axes(w, Architecture::Monostatic).r_max_ua, bi = axes(w, Architecture::Bistatic).r_max_ua;
    o.check(std::abs(mono / 2450.0 - 1) <= 0.005, "mono " + f2(mono / 1e3) + " km");
    o.check(std::abs(bi / 4910.0 - 1) <= 0.005, "bist " + f2(bi / 1e3) + " km");
}

void c7(Outcome& o) {
    const auto m = reference_pll_model();
    const double fs = 1e9;
    const std::size_t n = 1u << 22, seg = 1u << 16;
    const std::size_t reps = realizations();
    std::vector<double> welch;
    std::vector<double> freq;
    double var = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto pr = synthesize(m, fs, n, derive_seed(77, r));
        const auto e = estimate_psd_welch(pr, seg, 0.5);
        if (welch.empty()) {
            welch.assign(e.psd.size(), 0.0);
            freq = e.freq;
        }
        for (std::size_t i = 0; i < welch.size(); ++i) welch[i] += e.psd[i] / static_cast<double>(reps);
        double v = 0;
        for (double x : pr.samples) v += x * x;
        var += v / static_cast<double>(n) / static_cast<double>(reps);
    }
    // A decade is resolvable when it starts at least four Welch bins above DC.
    const double df = freq[1] - freq[0];
    for (double lo = std::pow(10.0, std::ceil(std::log10(4 * df))); lo < fs / 2; lo *= 10) {
        const double hi = std::min(lo * 10, fs / 2);
        double acc = 0;
        std::size_t cnt = 0;
        for (std::size_t i = 1; i < freq.size(); ++i)
            if (freq[i] >= lo && freq[i] < hi) {
                acc += lin_to_db(welch[i] / eval_psd(m, freq[i]));
                ++cnt;
            }
        o.check(cnt > 0 && std::abs(acc / cnt) <= 2.0, "decade " + f2(std::log10(lo)) + " err " + f2(acc / cnt) + " dB");
    }
    o.near(lin_to_db(var), lin_to_db(integrate_psd(m, fs / 2)), 1.0, "variance dBc");
}

void c8(Outcome& o) {
    // Averaged over the N and modulation set of the subcarrier SIR sweep.
    double lo = 0, hi = 0;
    int cnt = 0;
    for (std::size_t n : {256u, 2048u, 16384u})
        for (auto mod : {Modulation::QPSK, Modulation::QAM256}) {
            auto c = sensing_cfg(n, 0, 128, mod);
            const auto pts = comm_sweep(c, {gamma_for_level(c, -45), gamma_for_level(c, 0)});
            lo += -pts[0].evm_db.mean;
            hi += -pts[1].evm_db.mean;
            ++cnt;
        }
    o.near(lo / cnt, 45.72, 1.0, "SIR(-45 dBc)");
    o.near(hi / cnt, 1.5, 1.0, "SIR(0 dBc)");
}

void c9(Outcome& o) {
    const std::vector<double> g{0, 10, 20, 30, 40, 50};
    double worst_low = 0;
    for (auto mod : {Modulation::QPSK, Modulation::QAM16, Modulation::QAM64, Modulation::QAM256})
        for (std::size_t n = 256; n <= 16384; n *= 2) {
            auto c = sensing_cfg(n, 0, 128, mod);
            const auto pts = comm_sweep(c, g);
            for (std::size_t i = 1; i + 1 < g.size(); ++i)
                worst_low = std::max(worst_low, std::abs(pts[i].evm_db.mean - pts[0].evm_db.mean - g[i]));
            const double top = std::abs(pts.back().evm_db.mean - pts[0].evm_db.mean - g.back());
            o.check(top <= 1.0, to_string(mod) + "/N" + std::to_string(n) + " dev@50dB " + f2(top));
        }
    o.check(worst_low <= 1.0, "worst dev for gamma<=40 dB " + f2(worst_low));
    // Not gating: the same sweep with the first-order PN model.
    auto c = sensing_cfg(2048, 0, 128, Modulation::QPSK);
    c.application = PnApplication::SmallAngle;
    const auto pts = comm_sweep(c, g);
    o.detail << "(info: small-angle QPSK/N2048 dev@50dB " << f2(pts.back().evm_db.mean - pts[0].evm_db.mean - 50) << ")";
}

void c10(Outcome& o) {
    const std::vector<double> g{0, 10, 20, 30, 40, 50, 60};
    std::vector<double> gains;
    for (std::size_t n : {256u, 2048u, 16384u}) {
        auto c = sensing_cfg(n, 0, 128, Modulation::QPSK);
        double best = -1e9;
        for (const auto& p : comm_sweep(c, g, true)) best = std::max(best, p.evm_db.mean - p.evm_corrected_db.mean);
        gains.push_back(best);
    }
    o.near(gains[0], 9.78, 1.5, "gain N=256");
    o.check(gains[1] < gains[0] && gains[2] < gains[1], "gain N=2048 " + f2(gains[1]) + ", shrinking");
    o.near(gains[2], 0.0, 1.5, "gain N=16384");
}

// Floors shared by 11-13.
std::map<std::pair<std::size_t, Modulation>, SensingPoint>& floors() {
    static std::map<std::pair<std::size_t, Modulation>, SensingPoint> f;
    if (f.empty())
        for (std::size_t n : {256u, 2048u, 16384u})
            for (auto mod : {Modulation::QPSK, Modulation::QAM256}) {
                auto c = sensing_cfg(n, n, 128, mod);
                f[{n, mod}] = sensing_sweep(c, {gamma_for_level(c, kExtremeDbc)}).front();
            }
    return f;
}

void c11(Outcome& o) {
    const std::vector<double> want{-33.67, -42.13, -50.66};
    std::size_t i = 0;
    for (std::size_t n : {256u, 2048u, 16384u}) {
        const auto& q = floors()[{n, Modulation::QPSK}];
        const auto& h = floors()[{n, Modulation::QAM256}];
        o.near(q.pplr.mean, want[i++], 1.5, "PPLR N=" + std::to_string(n));
        o.near(h.pplr.mean - q.pplr.mean, 5.28, 1.0, "256QAM offset N=" + std::to_string(n));
    }
}

void c12(Outcome& o) {
    const std::vector<double> ps{-3.42, -2.97, -2.28}, is{12.99, 21.53, 30.02};
    std::size_t i = 0;
    for (std::size_t n : {256u, 2048u, 16384u}) {
        const auto& q = floors()[{n, Modulation::QPSK}];
        o.near(q.range_pslr.mean, ps[i], 1.5, "range PSLR N=" + std::to_string(n));
        o.near(q.range_islr.mean, is[i], 1.5, "range ISLR N=" + std::to_string(n));
        ++i;
    }
}

void c13(Outcome& o) {
    const std::vector<double> ps{-3.02, -4.07, -5.07}, is{10.88, 9.57, 8.97};
    std::size_t i = 0;
    for (std::size_t n : {256u, 2048u, 16384u}) {
        const auto& q = floors()[{n, Modulation::QPSK}];
        o.near(q.doppler_pslr.mean, ps[i], 1.5, "Doppler PSLR N=" + std::to_string(n));
        o.near(q.doppler_islr.mean, is[i], 1.5, "Doppler ISLR N=" + std::to_string(n));
        ++i;
    }
}

void c14(Outcome& o) {
    const std::vector<std::size_t> ms{32, 128, 512, 2048};
    const std::vector<double> want{-36.58, -42.08, -47.76, -53.21};
    std::vector<double> got;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        auto c = sensing_cfg(2048, 2048, ms[i], Modulation::QPSK);
        SensingOptions so;
        const auto p = sensing_sweep(c, {gamma_for_level(c, kExtremeDbc)}, so).front();
        got.push_back(p.pplr.mean);
        o.near(p.pplr.mean, want[i], 1.5, "PPLR M=" + std::to_string(ms[i]));
    }
    o.near((got.front() - got.back()) / 3.0, 5.58, 1.0, "avg step");
}

void c15(Outcome& o) {
    const std::vector<double> levels{-45, -25, -5, 5, kExtremeDbc};
    std::map<double, std::vector<double>> pplr;
    for (double frac : {0.0, 0.1, -0.1, 0.5, -0.5}) {
        auto c = sensing_cfg(2048, 2048, 128, Modulation::QPSK);
        c.paths.paths[0].doppler_hz = frac * c.waveform.subcarrier_spacing();
        std::vector<double> g;
        for (double l : levels) g.push_back(gamma_for_level(c, l));
        for (const auto& p : sensing_sweep(c, g)) pplr[frac].push_back(p.pplr.mean);
    }
    double spread = 0;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        double lo = 1e9, hi = -1e9;
        for (auto& [f, v] : pplr) lo = std::min(lo, v[i]), hi = std::max(hi, v[i]);
        spread = std::max(spread, hi - lo);
    }
    o.check(spread <= 1.0, "spread below 5 dBc " + f2(spread) + " dB");
    const std::size_t last = levels.size() - 1;
    const double gain = 0.5 * (pplr[0.5][last] + pplr[-0.5][last]) - pplr[0.0][last];
    o.near(gain, 4.0, 1.5, "+-0.5df floor gain");
}

void c16(Outcome& o) {
    SensingOptions so;
    so.cuts = false;
    so.sir = true;
    auto c = sensing_cfg(2048, 2048, 128, Modulation::QPSK);
    const auto off = sensing_sweep(c, {gamma_for_level(c, -15), gamma_for_level(c, kExtremeDbc)}, so);
    c.cpe_correction = CpeCorrection::FullFrame;
    const auto on = sensing_sweep(c, {gamma_for_level(c, -15), gamma_for_level(c, kExtremeDbc)}, so);
    o.near(off[0].sir_mean.mean, 60.0, 2.0, "mean SIR(-15 dBc)");
    o.near(off[0].sir_min.mean, 30.0, 2.0, "min SIR(-15 dBc)");
    o.check(on[0].sir_min.mean - off[0].sir_min.mean >= 15.0,
            "CPE min SIR gain " + f2(on[0].sir_min.mean - off[0].sir_min.mean) + " dB");
    o.near(on[1].sir_mean.mean, 15.0, 2.0, "CPE mean SIR floor");
}

void c17(Outcome& o) {
    const auto dir = std::filesystem::path(data_dir()) / "pn";
    const auto gnb = load_psd_model((dir / "tr38803_gnb.yaml").string());
    const auto ue = load_psd_model((dir / "tr38803_ue.yaml").string());
    const double l1 = lin_to_db(integrate_psd(gnb, 0.8e9)), l2 = lin_to_db(integrate_psd(gnb, 95e6)),
                 l3 = lin_to_db(integrate_psd(ue, 95e6));
    Outcome pre;
    pre.near(l1, -34.45, 0.3, "gNB level 1.6GHz");
    pre.near(l2, -35.07, 0.3, "gNB level 190MHz");
    pre.near(l3, -27.01, 0.3, "UE level 190MHz");
    o.detail << pre.detail.str();
    if (!pre.pass) {
        o.check(false, "PSD data files do not reproduce the reference levels, table not run");
        return;
    }
    ExperimentOptions eo;
    eo.out_dir = "acceptance_table_iii";
    eo.realizations = realizations();
    run_experiment("table-iii", eo);
    o.check(false, "table rows not yet compared");
}

void c18(Outcome& o) {
    std::map<std::size_t, std::vector<CpeRangePoint>> res;
    for (std::size_t n : {256u, 2048u, 16384u}) {
        auto c = sensing_cfg(n, n, 128, Modulation::QPSK);
        c.gamma_db = 30;
        const double rmax = axes(c.waveform, Architecture::Bistatic).r_max_ua;
        std::vector<double> ranges;
        for (double f = 0.05; f <= 0.95 + 1e-9; f += 0.15) ranges.push_back(f * rmax);
        res[n] = cpe_rmse_vs_range(c, ranges);
    }
    for (auto& [n, pts] : res) {
        std::size_t up = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) up += pts[i].rmse.mean > pts[i - 1].rmse.mean;
        o.check(pts.back().rmse.mean > pts.front().rmse.mean && 2 * up >= pts.size() - 1,
                "N=" + std::to_string(n) + " rmse " + f2(pts.front().rmse.mean) + "->" + f2(pts.back().rmse.mean));
        const double bound = std::hypot(pts.front().std_ref.mean, pts.front().std_target.mean);
        o.check(pts.front().rmse.mean <= bound, "N=" + std::to_string(n) + " near-range bound " + f2(bound));
    }
    // Compare at a common physical range: the farthest N=256 point.
    const double r0 = res[256].back().range_m;
    auto at = [&](std::size_t n) {
        const auto& v = res[n];
        return std::min_element(v.begin(), v.end(), [&](auto& a, auto& b) {
                   return std::abs(a.range_m - r0) < std::abs(b.range_m - r0);
               })->rmse.mean;
    };
    o.check(at(256) > at(2048) && at(256) > at(16384), "N=256 largest at " + f2(r0) + " m");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<void(Outcome&)>>> all{
        {1, c1},   {2, c2},   {3, c3},   {4, c4},   {5, c5},   {6, c6},   {7, c7},   {8, c8},   {9, c9},
        {10, c10}, {11, c11}, {12, c12}, {13, c13}, {14, c14}, {15, c15}, {16, c16}, {17, c17}, {18, c18}};
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& [id, fn] : all) {
        if (!pick.empty() && !pick.count(id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  [%.1fs] %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
