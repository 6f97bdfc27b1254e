#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lab/fock_products.hpp"

using namespace lab;
using namespace lab::products;

namespace {
const double kPi = std::acos(-1.0);
const double kInf = std::numeric_limits<double>::infinity();

// Closed form for the quartic product over the full sqrt grid
// lambda_n = sqrt(n/delta): with u = delta z^2 the product telescopes to
// sin(pi u) / (pi u). Used as an independent oracle at modest |z|.
double quartic_closed_form_log(double delta, std::complex<double> z) {
    std::complex<double> u = delta * z * z;
    return std::log(std::abs(std::sin(kPi * u))) - std::log(std::abs(kPi * u));
}
}  // namespace

TEST_CASE("quartic_product_eval: tiny forced cases") {
    QuarticProduct p{sets::DiscreteSet({1.0})};
    CHECK(p.eval({2.0, 0.0}).log_magnitude == doctest::Approx(std::log(15.0)).epsilon(1e-12));
    CHECK(p.eval({1.0, 0.0}).log_magnitude == -kInf);
    CHECK(p.eval({0.0, 1.0}).log_magnitude == -kInf);  // i is a zero via z^4
}

TEST_CASE("quartic_product_eval: rejects undersized sqrt-grid truncation") {
    QuarticProduct p{sets::generate_sqrt_set(1.0, sets::SignPattern::positive, 20)};
    CHECK_THROWS_AS(p.eval({5.0, 0.0}), std::invalid_argument);  // lambda_20 < 10
    CHECK(p.eval({2.0, 0.0}).log_magnitude < 0.0);  // lambda_20 = sqrt(20) >= 4
}

TEST_CASE("quartic vs sin(pi delta z^2) closed form") {
    auto p = quartic_for_window(0.5, 4.0);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
        std::complex<double> z{uni(rng), uni(rng)};
        if (std::abs(z) < 0.3) continue;
        auto got = p.eval(z);
        double want = quartic_closed_form_log(0.5, z);
        if (got.log_magnitude == -kInf) continue;  // landed on a zero modulus
        REQUIRE(got.tail_bound.has_value());
        CHECK(std::abs(got.log_magnitude - want) <= *got.tail_bound + 1e-9);
    }
    // High-precision spot check with a deep truncation: the tail bound
    // 2|z|^4 Delta^2 / N drops below 1e-5.
    auto deep = QuarticProduct(
        sets::generate_sqrt_set(0.5, sets::SignPattern::positive, 200000));
    std::complex<double> z{1.3, 0.4};
    CHECK(deep.eval(z).log_magnitude ==
          doctest::Approx(quartic_closed_form_log(0.5, z)).epsilon(1e-4));
}

TEST_CASE("quartic symmetry: factorwise identity under rotation and conjugation") {
    auto p = quartic_for_window(0.4, 3.0);
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int i = 0; i < 8; ++i) {
        std::complex<double> z{uni(rng), uni(rng)};
        double base = p.eval(z).log_magnitude;
        CHECK(p.eval(z * std::complex<double>(0.0, 1.0)).log_magnitude == base);
        CHECK(p.eval(-z).log_magnitude == base);
        CHECK(p.eval(std::conj(z)).log_magnitude == base);
    }
}

TEST_CASE("quartic tail bound: doubling N moves the value less than the bound") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> uni(-2.5, 2.5);
    auto small = QuarticProduct(sets::generate_sqrt_set(0.5, sets::SignPattern::positive, 400));
    auto large = QuarticProduct(sets::generate_sqrt_set(0.5, sets::SignPattern::positive, 800));
    for (int i = 0; i < 6; ++i) {
        std::complex<double> z{uni(rng), uni(rng)};
        auto a = small.eval(z), b = large.eval(z);
        if (a.log_magnitude == -kInf || b.log_magnitude == -kInf) continue;
        REQUIRE(a.tail_bound.has_value());
        CHECK(std::abs(a.log_magnitude - b.log_magnitude) <= *a.tail_bound + 1e-12);
    }
}

TEST_CASE("genus2_product_eval: basics") {
    sets::ComplexZeroSet two;
    two.points = {{1.0, 0.0}, {0.0, 1.0}};
    Genus2Product p{two};
    CHECK(p.eval({0.0, 0.0}).log_magnitude == 0.0);  // every E_2 factor is 1 at 0
    CHECK(p.eval({1.0, 0.0}).log_magnitude == -kInf);
}

TEST_CASE("genus2 over full rotation orbits equals the quartic pairing") {
    // For Gamma from {+-1, +-2} the linear and quadratic exponential
    // corrections cancel over each orbit, leaving prod (1 - z^4/lambda^4).
    auto gamma = sets::union_with_rotation(sets::DiscreteSet({1.0, -1.0, 2.0, -2.0}));
    Genus2Product g2{gamma};
    QuarticProduct quartic{sets::DiscreteSet({1.0, 2.0})};
    std::complex<double> z{0.3, 0.2};
    // Direct factor-by-factor oracle.
    double direct = 0.0;
    for (const auto& gpt : gamma.points) {
        auto w = z / gpt;
        direct += std::log(std::abs(1.0 - w)) + w.real() + 0.5 * (w * w).real();
    }
    CHECK(g2.eval(z).log_magnitude == doctest::Approx(direct).epsilon(1e-12));
    CHECK(g2.eval(z).log_magnitude ==
          doctest::Approx(quartic.eval(z).log_magnitude).epsilon(1e-10));
}

TEST_CASE("annihilation_check") {
    auto p = QuarticProduct(sets::generate_sqrt_set(1.0, sets::SignPattern::positive, 100));
    std::vector<double> zeros{1.0, std::sqrt(2.0), std::sqrt(3.0)};
    CHECK(annihilation_check(p, zeros) == -kInf);
    std::vector<double> shifted{1.001};
    CHECK(annihilation_check(p, shifted) > -kInf);

    auto gamma = sets::union_with_rotation(sets::DiscreteSet({1.0, -1.0, 2.0, -2.0}));
    Genus2Product g2{gamma};
    std::vector<std::complex<double>> both{{1.0, 0.0}, {0.0, 1.0}};
    CHECK(annihilation_check(g2, both) == -kInf);
}

TEST_CASE("indicator_target") {
    CHECK(indicator_target(0.5, kPi / 4.0) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(indicator_target(3.0, 0.0) == 0.0);
    CHECK(indicator_target(0.25, kPi / 8.0) ==
          doctest::Approx(kPi * 0.25 * std::sin(kPi / 4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(indicator_target(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("indicator_estimate: quartic product reproduces pi Delta |sin 2 theta|") {
    auto p = quartic_for_window(0.5, 40.0);
    IndicatorWindow w{20.0, 40.0};
    auto est = indicator_estimate(p, kPi / 4.0, w);
    CHECK(est.h_hat == doctest::Approx(kPi / 2.0).epsilon(0.05));

    auto est0 = indicator_estimate(p, 0.0, w);
    CHECK(std::abs(est0.h_hat) < 0.05 * kPi / 2.0);

    auto est2 = indicator_estimate(p, 3.0 * kPi / 4.0, w);
    CHECK(std::abs(est.h_hat - est2.h_hat) <= 2.0 * (est.residual + est2.residual) + 1e-6);
}

TEST_CASE("indicator_estimate: window growth improves the estimate") {
    auto p = quartic_for_window(0.25, 80.0);
    auto narrow = indicator_estimate(p, kPi / 4.0, IndicatorWindow{20.0, 40.0});
    auto wide = indicator_estimate(p, kPi / 4.0, IndicatorWindow{40.0, 80.0});
    const double target = indicator_target(0.25, kPi / 4.0);
    CHECK(std::abs(narrow.h_hat - target) / target < 0.05);
    CHECK(std::abs(wide.h_hat - target) / target < 0.03);
}

TEST_CASE("indicator_estimate: rejects windows with too few usable radii") {
    QuarticProduct p{sets::DiscreteSet({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0})};
    IndicatorWindow w{1.0, 2.0};
    w.samples = 5;
    w.zero_exclusion = 2.0;  // excludes everything
    CHECK_THROWS_AS(indicator_estimate(p, 0.3, w), std::invalid_argument);
}

TEST_CASE("trig_convexity_check") {
    auto p = quartic_for_window(0.5, 40.0);
    IndicatorWindow w{20.0, 40.0};
    auto a = indicator_estimate(p, kPi / 4.0, w);
    auto b = indicator_estimate(p, 3.0 * kPi / 4.0, w);
    auto chk = trig_convexity_check(a, b);
    CHECK(chk.pass);
    CHECK(chk.sum == doctest::Approx(kPi).epsilon(0.1));

    auto z = indicator_estimate(p, 0.0, w);
    auto h = indicator_estimate(p, kPi / 2.0, w);
    CHECK(trig_convexity_check(z, h).pass);

    IndicatorEstimate degenerate_a{}, degenerate_b{};  // constant function: h == 0
    auto flat = trig_convexity_check(degenerate_a, degenerate_b);
    CHECK(flat.pass);
    CHECK(flat.sum == 0.0);
}

TEST_CASE("fock_membership_probe: clear cases either side of 1/2") {
    auto low = genus2_for_radius(0.25, 12.0);
    auto probe_low = fock_membership_probe(low, {4.0, 8.0, 12.0});
    CHECK(probe_low.verdict == FockVerdict::consistent_converging);
    CHECK(probe_low.matches_dichotomy);

    auto high = genus2_for_radius(0.75, 12.0);
    auto probe_high = fock_membership_probe(high, {4.0, 8.0, 12.0});
    CHECK(probe_high.verdict == FockVerdict::consistent_diverging);
    CHECK(probe_high.matches_dichotomy);
}

TEST_CASE("fock_membership_probe: critical density stays unclassified") {
    auto mid = genus2_for_radius(0.5, 12.0);
    auto probe = fock_membership_probe(mid, {4.0, 8.0, 12.0});
    CHECK(probe.verdict == FockVerdict::inconclusive);
}

TEST_CASE("fock_membership_probe: schedule beyond truncation is rejected") {
    auto p = genus2_for_radius(0.25, 4.0);
    CHECK_THROWS_AS(fock_membership_probe(p, {4.0, 8.0, 50.0}), std::invalid_argument);
}
