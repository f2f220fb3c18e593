#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isacpn/errors.hpp"
#include "isacpn/pn_model.hpp"

using namespace isacpn;

namespace {

// Antiderivative of the PLL PSD, used as an independent quadrature oracle.
double pll_antiderivative(const PllPsdParams& p, double f) {
    const double b = p.b_pll;
    return b * p.l0 * std::atan(f / b) + p.l0 * p.f_corner * (std::log(f) - 0.5 * std::log(b * b + f * f)) +
           p.l_floor * f;
}

double pll_level(const PllPsdParams& p, double f_lo, double f_hi) {
    return 2.0 * (pll_antiderivative(p, f_hi) - pll_antiderivative(p, f_lo));
}

const PllPsdParams kRef{std::pow(10.0, -10.5), std::pow(10.0, -15.5), 10e3, 150e3};

}  // namespace

TEST_CASE("PLL PSD point values") {
    const auto m = reference_pll_model();
    CHECK(std::abs(lin_to_db(eval_psd(m, 50e3)) + 105.0) < 1.0);
    CHECK(lin_to_db(eval_psd(m, 1e12)) == doctest::Approx(-155.0).epsilon(1e-6));

    // Term by term at 150 kHz: b^2/(b^2+f^2) = 1/2, (1 + fc/f) = 1 + 1/15.
    const double hand = 0.5 * std::pow(10.0, -10.5) * (1.0 + 1.0 / 15.0) + std::pow(10.0, -15.5);
    CHECK(eval_psd(m, 150e3) == doctest::Approx(hand).epsilon(1e-12));
    CHECK(lin_to_db(eval_psd(m, 150e3)) == doctest::Approx(-107.7295).epsilon(1e-5));
}

TEST_CASE("PSD rejects non-positive frequency") {
    CHECK_THROWS_AS(eval_psd(reference_pll_model(), 0.0), DomainError);
    CHECK_THROWS_AS(eval_psd(reference_pll_model(), -1.0), DomainError);
}

TEST_CASE("integrated level matches closed form") {
    const auto m = reference_pll_model();
    for (double f_max : {1e5, 150e3, 1e6, 95e6, 500e6}) {
        CAPTURE(f_max);
        CHECK(integrate_psd(m, f_max) == doctest::Approx(pll_level(kRef, kDefaultFMin, f_max)).epsilon(1e-4));
    }
    CHECK(integrate_psd(m, 1e6, 10.0) == doctest::Approx(pll_level(kRef, 10.0, 1e6)).epsilon(1e-4));
}

TEST_CASE("total level over 1 GHz") {
    CHECK(std::abs(lin_to_db(integrate_psd(reference_pll_model(), 500e6)) + 47.90) <= 0.05);
}

TEST_CASE("integration errors and zero scaling") {
    const auto m = reference_pll_model();
    CHECK_THROWS_AS(integrate_psd(m, kDefaultFMin), DomainError);
    CHECK_THROWS_AS(integrate_psd(m, 1e6, 0.0), DomainError);
    CHECK(integrate_psd(PnPsdModel::scaled(m, 0.0), 500e6) == 0.0);
}

TEST_CASE("integrated level is monotone in f_max") {
    const auto m = reference_pll_model();
    double prev = 0.0;
    for (double lf = 4.1; lf < 9.0; lf += 0.037) {
        const double v = integrate_psd(m, std::pow(10.0, lf));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("scaling multiplies PSD and level by gamma") {
    const auto m = reference_pll_model();
    const auto s = PnPsdModel::scaled(m, 1000.0);
    CHECK(eval_psd(s, 3e5) == doctest::Approx(1000.0 * eval_psd(m, 3e5)));
    CHECK(integrate_psd(s, 1e8) == doctest::Approx(1000.0 * integrate_psd(m, 1e8)));
    const auto ss = PnPsdModel::scaled(s, 10.0);
    CHECK(ss.gamma() == doctest::Approx(1e4));
    CHECK(ss.base() == m);
    CHECK_THROWS_AS(PnPsdModel::scaled(m, -1.0), DomainError);
}

TEST_CASE("pole-zero form") {
    const PoleZeroPsdParams p{1e-8, {{1e6, 2.0}}, {{1e5, 2.0}}};
    const auto m = PnPsdModel::pole_zero(p);
    const double f = 3e5;
    CHECK(eval_psd(m, f) == doctest::Approx(1e-8 * (1 + 9e-2) / (1 + 9.0)));
    CHECK_THROWS_AS(PnPsdModel::pole_zero({1e-8, {}, {{1e5, 2}}}), DomainError);
    CHECK_THROWS_AS(PnPsdModel::pole_zero({1e-8, {{-1, 2}}, {{1e5, 2}}}), DomainError);
}

TEST_CASE("combined levels") {
    const auto m = reference_pll_model();
    const double bi = combined_level(m, m, CombineMode::bistatic(), 500e6);
    CHECK(std::abs(lin_to_db(bi) + 44.90) <= 0.05);
    CHECK(combined_level(m, m, CombineMode::monostatic(0.0), 500e6) == 0.0);
    CHECK_THROWS_AS(combined_level(m, PnPsdModel::scaled(m, 2.0), CombineMode::monostatic(1e-6), 500e6), DomainError);
}

TEST_CASE("monostatic level against brute-force quadrature") {
    const auto m = reference_pll_model();
    const double tau = 2.0 * 1500.0 / 299792458.0;
    // Plain midpoint rule on a uniform grid fine enough for the 1/tau oscillation.
    const double f_max = 5e6, df = 1.0 / (200.0 * tau);
    double acc = 0.0;
    for (double f = kDefaultFMin + df / 2; f < f_max; f += df) {
        acc += eval_psd(m, f) * 2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * f * tau)) * df;
    }
    acc *= 2.0;
    CHECK(combined_level(m, m, CombineMode::monostatic(tau), f_max) == doctest::Approx(acc).epsilon(2e-3));
}

TEST_CASE("monostatic level grows with delay toward the bistatic value") {
    const auto m = reference_pll_model();
    const double bi = combined_level(m, m, CombineMode::bistatic(), 500e6);
    double prev = 0.0;
    for (double r : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const double v = combined_level(m, m, CombineMode::monostatic(2 * r / 299792458.0), 500e6);
        CHECK(v > prev);
        prev = v;
    }
    const double far = combined_level(m, m, CombineMode::monostatic(1e-3), 500e6);
    CHECK(std::abs(lin_to_db(far) - lin_to_db(bi)) < 0.5);
}

TEST_CASE("describe and equality") {
    CHECK(reference_pll_model() == reference_pll_model());
    CHECK_FALSE(reference_pll_model() == PnPsdModel::scaled(reference_pll_model(), 2.0));
    CHECK(reference_pll_model().describe().find("pll") != std::string::npos);
}
