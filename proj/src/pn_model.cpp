// SPDX-License-Identifier: Apache-2.0
#include "isacpn/pn_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "isacpn/errors.hpp"

namespace isacpn {
namespace {

constexpr int kPointsPerDecade = 256;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Log grid anchored at f_min so that the grid for a smaller f_max is a prefix
// of the grid for a larger one; this keeps the integral monotone in f_max.
std::vector<double> log_grid(double f_min, double f_max) {
    std::vector<double> g;
    const double step = std::pow(10.0, 1.0 / kPointsPerDecade);
    for (double f = f_min; f < f_max; f *= step) g.push_back(f);
    g.push_back(f_max);
    return g;
}

double trapezoid(const std::vector<double>& f, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) acc += 0.5 * (y[i] + y[i - 1]) * (f[i] - f[i - 1]);
    return acc;
}

}  // namespace

PnPsdModel PnPsdModel::pll(const PllPsdParams& p) {
    if (!(p.l0 > 0 && p.l_floor > 0 && p.f_corner > 0 && p.b_pll > 0))
        throw DomainError("PLL PSD parameters must be strictly positive");
    if (!(p.l_floor < p.l0)) throw DomainError("PLL PSD floor must be below L0");
    return PnPsdModel(p);
}

PnPsdModel PnPsdModel::pole_zero(const PoleZeroPsdParams& p) {
    if (!(p.psd0 > 0)) throw DomainError("pole-zero PSD0 must be positive");
    if (p.zeros.empty() || p.poles.empty()) throw DomainError("pole-zero lists must be nonempty");
    for (const auto& list : {p.zeros, p.poles})
        for (const auto& [f, a] : list)
            if (!(f > 0)) throw DomainError("pole/zero frequencies must be positive");
    return PnPsdModel(p);
}

PnPsdModel PnPsdModel::scaled(const PnPsdModel& inner, double gamma) {
    if (!(gamma >= 0)) throw DomainError("gamma must be nonnegative");
    // Collapse nested scaling so base() is always one hop away.
    if (auto* s = std::get_if<ScaledPsd>(&inner.v_))
        return PnPsdModel(ScaledPsd{s->inner, s->gamma * gamma});
    return PnPsdModel(ScaledPsd{std::make_shared<const PnPsdModel>(inner), gamma});
}

double PnPsdModel::gamma() const {
    if (auto* s = std::get_if<ScaledPsd>(&v_)) return s->gamma;
    return 1.0;
}

const PnPsdModel& PnPsdModel::base() const {
    if (auto* s = std::get_if<ScaledPsd>(&v_)) return s->inner->base();
    return *this;
}

std::string PnPsdModel::describe() const {
    std::ostringstream os;
    os.precision(10);
    std::visit(overloaded{
                   [&](const PllPsdParams& p) {
                       os << "pll(l0_dbchz=" << lin_to_db(p.l0) << ",l_floor_dbchz=" << lin_to_db(p.l_floor)
                          << ",f_corner_hz=" << p.f_corner << ",b_pll_hz=" << p.b_pll << ")";
                   },
                   [&](const PoleZeroPsdParams& p) {
                       os << "pole_zero(psd0_dbchz=" << lin_to_db(p.psd0) << ",zeros=[";
                       for (auto& [f, a] : p.zeros) os << f << ":" << a << ";";
                       os << "],poles=[";
                       for (auto& [f, a] : p.poles) os << f << ":" << a << ";";
                       os << "])";
                   },
                   [&](const ScaledPsd& s) { os << "scaled(gamma_db=" << lin_to_db(s.gamma) << "," << s.inner->describe() << ")"; },
               },
               v_);
    return os.str();
}

bool PnPsdModel::operator==(const PnPsdModel& other) const {
    return describe() == other.describe();
}

PnPsdModel reference_pll_model() {
    return PnPsdModel::pll({db_to_lin(-105.0), db_to_lin(-155.0), 10e3, 150e3});
}

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

double eval_psd(const PnPsdModel& model, double f) {
    if (!(f > 0)) throw DomainError("PSD frequency must be positive");
    return std::visit(overloaded{
                          [&](const PllPsdParams& p) {
                              const double b2 = p.b_pll * p.b_pll;
                              return b2 * p.l0 / (b2 + f * f) * (1.0 + p.f_corner / f) + p.l_floor;
                          },
                          [&](const PoleZeroPsdParams& p) {
                              double v = p.psd0;
                              for (auto& [fz, a] : p.zeros) v *= 1.0 + std::pow(f / fz, a);
                              for (auto& [fp, a] : p.poles) v /= 1.0 + std::pow(f / fp, a);
                              return v;
                          },
                          [&](const ScaledPsd& s) { return s.gamma * eval_psd(*s.inner, f); },
                      },
                      model.variant());
}

double integrate_psd(const PnPsdModel& model, double f_max, double f_min) {
    if (!(f_min > 0)) throw DomainError("f_min must be positive");
    if (!(f_max > f_min)) throw DomainError("f_max must exceed f_min");
    const double gamma = model.gamma();
    if (gamma == 0.0) return 0.0;
    const auto& base = model.base();
    auto f = log_grid(f_min, f_max);
    std::vector<double> y(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) y[i] = eval_psd(base, f[i]);
    return gamma * 2.0 * trapezoid(f, y);
}

double combined_level(const PnPsdModel& tx, const PnPsdModel& rx, CombineMode mode, double f_max,
                      double f_min) {
    if (mode.kind == CombineMode::Kind::Bistatic)
        return integrate_psd(tx, f_max, f_min) + integrate_psd(rx, f_max, f_min);

    if (mode.tau < 0) throw DomainError("delay must be nonnegative");
    if (!(tx == rx)) throw DomainError("monostatic mode requires identical Tx and Rx models");
    if (!(f_max > f_min)) throw DomainError("f_max must exceed f_min");
    if (mode.tau == 0.0 || tx.gamma() == 0.0) return 0.0;

    // 2*int S*2(1-cos) = 4*int S - 4*int S cos. The cosine part is resolved on
    // a dense linear grid up to a few hundred periods and dropped beyond.
    const double tau = mode.tau;
    const double two_pi_tau = 2.0 * std::numbers::pi * tau;
    const double f_osc = std::min(f_max, 400.0 / tau);
    double cos_part = 0.0;
    if (f_osc > f_min) {
        auto f = log_grid(f_min, f_osc);
        std::vector<double> dense;
        const double max_step = 1.0 / (32.0 * tau);
        for (std::size_t i = 0; i + 1 < f.size(); ++i) {
            const double a = f[i], b = f[i + 1];
            const auto sub = static_cast<std::size_t>(std::ceil((b - a) / max_step));
            for (std::size_t j = 0; j < sub; ++j) dense.push_back(a + (b - a) * static_cast<double>(j) / sub);
        }
        dense.push_back(f.back());
        std::vector<double> y(dense.size());
        for (std::size_t i = 0; i < dense.size(); ++i)
            y[i] = eval_psd(tx, dense[i]) * std::cos(two_pi_tau * dense[i]);
        cos_part = trapezoid(dense, y);
    }
    const double level = 2.0 * integrate_psd(tx, f_max, f_min) - 4.0 * cos_part;
    return std::max(level, 0.0);
}

}  // namespace isacpn
