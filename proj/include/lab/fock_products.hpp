#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lab/bargmann.hpp"
#include "lab/lambda_sets.hpp"

namespace lab::products {

using Complex = std::complex<double>;

struct ProductEval {
    double log_magnitude = 0.0;  // -inf at a zero of the product
    std::optional<double> tail_bound;  // certified for sqrt-grid generators
};

/// Quartic Weierstrass product prod (1 - z^4 / lambda^4) over a real zero set.
class QuarticProduct {
public:
    explicit QuarticProduct(sets::DiscreteSet zeros);

    /// Requires |lambda_N| >= 2 |z| so the tail is dominated.
    ProductEval eval(Complex z) const;

    const sets::DiscreteSet& zeros() const { return zeros_; }
    /// Moduli at which the product vanishes (zeros sit at lambda * i^k).
    const std::vector<double>& zero_moduli() const { return moduli_; }
    /// Distance from z to the nearest zero in the plane.
    double min_zero_distance(Complex z) const;

private:
    sets::DiscreteSet zeros_;
    std::vector<double> moduli_;
    std::vector<double> fourth_powers_;
};

/// Genus-2 canonical product over a complex zero set, primary factors
/// E_2(z/g) = (1 - z/g) exp(z/g + z^2/(2 g^2)).
class Genus2Product {
public:
    explicit Genus2Product(sets::ComplexZeroSet zeros);

    ProductEval eval(Complex z) const;

    const sets::ComplexZeroSet& zeros() const { return zeros_; }
    const std::vector<double>& zero_moduli() const { return moduli_; }
    double min_zero_distance(Complex z) const;

private:
    sets::ComplexZeroSet zeros_;
    std::vector<double> moduli_;  // distinct moduli, ascending
};

struct IndicatorEstimate {
    double theta = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double h_hat = 0.0;     // fitted slope of log|F(r e^{i theta})| against r^2
    double residual = 0.0;  // standard error of the slope
    std::vector<double> excluded_radii;
};

struct IndicatorWindow {
    double r_min;
    double r_max;
    int samples = 40;
    double zero_exclusion = 0.1;
};

template <typename Product>
IndicatorEstimate indicator_estimate(const Product& product, double theta,
                                     const IndicatorWindow& window);

/// pi * Delta * |sin 2 theta|.
double indicator_target(double delta, double theta);

struct ConvexityCheck {
    double sum = 0.0;
    double allowance = 0.0;  // combined fit residuals
    bool pass = false;
    double margin = 0.0;  // sum + allowance
};

/// h(theta) + h(theta + pi/2) >= 0 up to the fit residuals.
ConvexityCheck trig_convexity_check(const IndicatorEstimate& at_theta,
                                    const IndicatorEstimate& at_theta_plus_half_pi);

enum class FockVerdict { consistent_converging, consistent_diverging, inconclusive };

struct MembershipProbe {
    bargmann::FockNormTrend trend;
    double delta_per_side = 0.0;
    FockVerdict verdict = FockVerdict::inconclusive;
    bool matches_dichotomy = false;  // meaningless when verdict is inconclusive
};

/// Truncated Fock norm trend of a genus-2 product over Gamma, with a verdict
/// against the density-1/2 dichotomy. Delta = 1/2 stays unclassified.
MembershipProbe fock_membership_probe(const Genus2Product& product,
                                      const std::vector<double>& schedule);

/// Builds the quartic product over a positive sqrt-grid with a truncation
/// adequate for indicator windows reaching r_max.
QuarticProduct quartic_for_window(double delta, double r_max);

/// Gamma = Lambda union i Lambda for a symmetric sqrt-grid of per-side
/// density delta, truncated for probe radii up to r_max.
Genus2Product genus2_for_radius(double delta, double r_max);

/// Max log-magnitude of the product over the sampled zero locations
/// (every value must be -inf).
template <typename Product, typename Point>
double annihilation_check(const Product& product, const std::vector<Point>& sample) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : sample)
        worst = std::max(worst, product.eval(Complex(p)).log_magnitude);
    return worst;
}

}  // namespace lab::products
