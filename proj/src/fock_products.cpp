#include "lab/fock_products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab::products {

namespace {
const double kPi = std::acos(-1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_truncation(double last_modulus, double z_mod, const char* who) {
    if (last_modulus < 2.0 * z_mod)
        throw std::invalid_argument(std::string(who) +
                                    ": truncation too small for |z| = " + std::to_string(z_mod) +
                                    "; largest zero modulus must be >= " +
                                    std::to_string(2.0 * z_mod));
}

std::vector<double> distinct_moduli(const std::vector<double>& mods) {
    std::vector<double> out = mods;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

QuarticProduct::QuarticProduct(sets::DiscreteSet zeros) : zeros_(std::move(zeros)) {
    std::vector<double> mods;
    fourth_powers_.reserve(zeros_.size());
    for (double p : zeros_.points()) {
        fourth_powers_.push_back(p * p * p * p);
        mods.push_back(std::abs(p));
    }
    moduli_ = distinct_moduli(mods);
}

ProductEval QuarticProduct::eval(Complex z) const {
    const Complex z4 = z * z * z * z;
    std::vector<double> terms;
    terms.reserve(fourth_powers_.size());
    bool hit_zero = false;
    for (double l4 : fourth_powers_) {
        const double mag = std::abs(1.0 - z4 / l4);
        if (mag == 0.0) hit_zero = true;
        terms.push_back(std::log(mag));
    }
    ProductEval res;
    if (hit_zero) {
        // An exact factor vanishes; no tail can resurrect the product.
        res.log_magnitude = -kInf;
        res.tail_bound = 0.0;
        return res;
    }
    const auto& gen = zeros_.generator();
    // Explicit finite sets are the whole product; only generated truncations
    // of an infinite set carry a tail that must dominate.
    if (gen.truncation > 0)
        require_truncation(zeros_.max_modulus(), std::abs(z), "quartic_product_eval");
    res.log_magnitude = numerics::log_product_accumulate(terms);

    if (gen.kind == "sqrt-grid" && gen.delta_per_side > 0.0) {
        // |log(1-w)| <= 2|w| for |w| <= 1/2; sum over the tail of the grid.
        const double sides = gen.pattern == sets::SignPattern::symmetric ? 2.0 : 1.0;
        const double d = gen.delta_per_side;
        res.tail_bound = sides * 2.0 * std::pow(std::abs(z), 4.0) * d * d / gen.truncation;
    }
    return res;
}

Genus2Product::Genus2Product(sets::ComplexZeroSet zeros) : zeros_(std::move(zeros)) {
    std::vector<double> mods;
    for (const auto& g : zeros_.points) mods.push_back(std::abs(g));
    moduli_ = distinct_moduli(mods);
}

ProductEval Genus2Product::eval(Complex z) const {
    std::vector<double> terms;
    terms.reserve(zeros_.points.size());
    bool hit_zero = false;
    for (const auto& g : zeros_.points) {
        const Complex w = z / g;
        const double mag = std::abs(1.0 - w);
        if (mag == 0.0) hit_zero = true;
        terms.push_back(std::log(mag) + w.real() + 0.5 * (w * w).real());
    }
    ProductEval res;
    if (hit_zero) {
        res.log_magnitude = -kInf;
        res.tail_bound = 0.0;
        return res;
    }
    const auto& gen = zeros_.source;
    if (gen.truncation > 0) {
        const double max_mod = moduli_.empty() ? 0.0 : moduli_.back();
        require_truncation(max_mod, std::abs(z), "genus2_product_eval");
    }
    res.log_magnitude = numerics::log_product_accumulate(terms);

    if (gen.kind == "sqrt-grid" && gen.delta_per_side > 0.0) {
        // |log E_2(w)| <= (2/3)|w|^3 for |w| <= 1/2; each grid index carries
        // up to four rotated points of the same modulus.
        const double rays = gen.pattern == sets::SignPattern::symmetric ? 4.0 : 2.0;
        const double d = gen.delta_per_side;
        res.tail_bound = rays * (2.0 / 3.0) * std::pow(std::abs(z), 3.0) *
                         std::pow(d, 1.5) * 2.0 / std::sqrt(static_cast<double>(gen.truncation));
    }
    return res;
}

namespace {

// Zero moduli within [r - pad, r + pad] of a sorted modulus list.
std::pair<size_t, size_t> modulus_range(const std::vector<double>& mods, double r, double pad) {
    auto lo = std::lower_bound(mods.begin(), mods.end(), r - pad);
    auto hi = std::upper_bound(mods.begin(), mods.end(), r + pad);
    return {static_cast<size_t>(lo - mods.begin()), static_cast<size_t>(hi - mods.begin())};
}

// Gap between the zero moduli bracketing r; inf when r lies outside the list.
double local_modulus_gap(const std::vector<double>& mods, double r) {
    auto it = std::lower_bound(mods.begin(), mods.end(), r);
    if (it == mods.begin() || it == mods.end()) return kInf;
    return *it - *std::prev(it);
}

}  // namespace

double QuarticProduct::min_zero_distance(Complex z) const {
    const double r = std::abs(z);
    double best = kInf;
    auto [lo, hi] = modulus_range(moduli_, r, 2.0);
    for (size_t i = lo; i < hi; ++i) {
        const double m = moduli_[i];
        for (const Complex zero : {Complex(m, 0.0), Complex(-m, 0.0),
                                   Complex(0.0, m), Complex(0.0, -m)})
            best = std::min(best, std::abs(z - zero));
    }
    return best;
}

double Genus2Product::min_zero_distance(Complex z) const {
    const double r = std::abs(z);
    double best = kInf;
    for (const auto& g : zeros_.points) {
        if (std::abs(std::abs(g) - r) > 2.0) continue;
        best = std::min(best, std::abs(z - g));
    }
    return best;
}

template <typename Product>
IndicatorEstimate indicator_estimate(const Product& product, double theta,
                                     const IndicatorWindow& window) {
    if (window.r_min >= window.r_max || window.samples < 5)
        throw std::invalid_argument("indicator_estimate: bad window");
    if (theta < 0.0 || theta >= 2.0 * kPi)
        throw std::invalid_argument("indicator_estimate: theta must lie in [0, 2*pi)");

    IndicatorEstimate est;
    est.theta = theta;
    est.r_min = window.r_min;
    est.r_max = window.r_max;

    const auto& mods = product.zero_moduli();
    std::vector<double> xs, ys;
    for (int i = 0; i < window.samples; ++i) {
        const double r = window.r_min +
                         (window.r_max - window.r_min) * i / (window.samples - 1.0);
        // Exclude samples near an actual zero; on rays threading a dense
        // zero sequence the exclusion shrinks to a quarter of the local
        // modulus gap so mid-gap samples survive.
        const double cap = 0.25 * local_modulus_gap(mods, r);
        const double dist = product.min_zero_distance(std::polar(r, theta));
        if (dist < std::min(window.zero_exclusion, cap)) {
            est.excluded_radii.push_back(r);
            continue;
        }
        const double y = product.eval(std::polar(r, theta)).log_magnitude;
        if (y == -kInf) {
            est.excluded_radii.push_back(r);
            continue;
        }
        xs.push_back(r * r);
        ys.push_back(y);
    }
    const int k = static_cast<int>(xs.size());
    if (k < 5)
        throw std::invalid_argument("indicator_estimate: fewer than 5 usable radii after exclusion");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < k; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = k * sxx - sx * sx;
    est.h_hat = (k * sxy - sx * sy) / denom;
    const double c = (sy - est.h_hat * sx) / k;
    double ssr = 0.0;
    for (int i = 0; i < k; ++i) {
        const double e = ys[i] - est.h_hat * xs[i] - c;
        ssr += e * e;
    }
    est.residual = std::sqrt(ssr / std::max(k - 2, 1) / (sxx - sx * sx / k));
    return est;
}

template IndicatorEstimate indicator_estimate<QuarticProduct>(const QuarticProduct&, double,
                                                              const IndicatorWindow&);
template IndicatorEstimate indicator_estimate<Genus2Product>(const Genus2Product&, double,
                                                             const IndicatorWindow&);

double indicator_target(double delta, double theta) {
    if (delta < 0.0) throw std::invalid_argument("indicator_target: delta must be >= 0");
    return kPi * delta * std::abs(std::sin(2.0 * theta));
}

ConvexityCheck trig_convexity_check(const IndicatorEstimate& at_theta,
                                    const IndicatorEstimate& at_theta_plus_half_pi) {
    ConvexityCheck chk;
    chk.sum = at_theta.h_hat + at_theta_plus_half_pi.h_hat;
    chk.allowance = at_theta.residual + at_theta_plus_half_pi.residual;
    chk.pass = chk.sum >= -chk.allowance;
    chk.margin = chk.sum + chk.allowance;
    return chk;
}

MembershipProbe fock_membership_probe(const Genus2Product& product,
                                      const std::vector<double>& schedule) {
    MembershipProbe probe;
    probe.delta_per_side = product.zeros().source.delta_per_side;
    if (probe.delta_per_side <= 0.0)
        throw std::invalid_argument("fock_membership_probe: zero set has no density metadata");
    const double r_max = schedule.empty() ? 0.0 : schedule.back();
    const double max_mod = product.zero_moduli().empty() ? 0.0 : product.zero_moduli().back();
    require_truncation(max_mod, r_max, "fock_membership_probe");

    bargmann::EntireFnHandle h;
    h.descriptor = "genus2-product";
    h.log_abs = [&product](Complex z) { return product.eval(z).log_magnitude; };
    h.value = [&product](Complex z) {
        return Complex(std::exp(product.eval(z).log_magnitude), 0.0);
    };
    probe.trend = bargmann::fock_norm_trend(h, schedule, 24, 256);

    const double d = probe.delta_per_side;
    switch (probe.trend.classification) {
        case bargmann::TrendClass::converging:
            probe.verdict = FockVerdict::consistent_converging;
            probe.matches_dichotomy = d < 0.5;
            break;
        case bargmann::TrendClass::diverging:
            probe.verdict = FockVerdict::consistent_diverging;
            probe.matches_dichotomy = d > 0.5;
            break;
        case bargmann::TrendClass::inconclusive:
            probe.verdict = FockVerdict::inconclusive;
            probe.matches_dichotomy = false;
            break;
    }
    return probe;
}

QuarticProduct quartic_for_window(double delta, double r_max) {
    // Tail slope error scales like delta * r^2 / (pi N); 50 * delta * r_max^2
    // keeps it under a percent while staying in the 1e4-1e5 factor range.
    const int n = static_cast<int>(std::ceil(
        std::max(delta * 4.0 * r_max * r_max, 50.0 * delta * r_max * r_max))) + 1;
    return QuarticProduct(sets::generate_sqrt_set(delta, sets::SignPattern::positive, n));
}

Genus2Product genus2_for_radius(double delta, double r_max) {
    const int n = static_cast<int>(std::ceil(
        std::max(delta * 4.0 * r_max * r_max, 8.0 * delta * r_max * r_max))) + 1;
    auto lambda = sets::generate_sqrt_set(delta, sets::SignPattern::symmetric, n);
    return Genus2Product(sets::union_with_rotation(lambda));
}

}  // namespace lab::products
