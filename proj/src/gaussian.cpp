#include "lab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab::gauss {

namespace {
const double kPi = std::acos(-1.0);
}

void GaussianFn::validate() const {
    if (amplitude <= 0.0 || width <= 0.0)
        throw std::invalid_argument("GaussianFn: amplitude and width must be positive");
}

double GaussianFn::operator()(double t) const {
    const double d = t - center;
    return amplitude * std::exp(-width * kPi * d * d);
}

GaussianFn phi() { return {1.0, 1.0, 0.0}; }
GaussianFn phi_a(double a) { return {std::pow(2.0, 0.25), a, 0.0}; }
GaussianFn translate(double lambda) { return {1.0, 1.0, lambda}; }

double inner_product(const GaussianFn& g1, const GaussianFn& g2) {
    g1.validate();
    g2.validate();
    const double s = g1.width + g2.width;
    const double d = g1.center - g2.center;
    // Symmetric groupings keep inner_product(g1,g2) == inner_product(g2,g1)
    // bit-exact.
    return (g1.amplitude * g2.amplitude) / std::sqrt(s) *
           std::exp(-kPi * (g1.width * g2.width) / s * (d * d));
}

double lp_norm(const GaussianFn& g, double p) {
    g.validate();
    if (p == std::numeric_limits<double>::infinity()) return g.amplitude;
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    // integral of A^p exp(-a p pi t^2) = A^p / sqrt(a p)
    return g.amplitude * std::pow(g.width * p, -0.5 / p);
}

GaussianFn convolve(const GaussianFn& g1, const GaussianFn& g2) {
    g1.validate();
    g2.validate();
    const double s = g1.width + g2.width;
    return {g1.amplitude * g2.amplitude / std::sqrt(s),
            g1.width * g2.width / s,
            g1.center + g2.center};
}

GaussianFn fourier_transform(const GaussianFn& g) {
    g.validate();
    if (g.center != 0.0)
        throw std::invalid_argument("fourier_transform: only centered Gaussians supported");
    return {g.amplitude / std::sqrt(g.width), 1.0 / g.width, 0.0};
}

ConvolutionIdentityReport convolution_identity_check(double a) {
    if (a <= 1.0) throw std::invalid_argument("convolution_identity_check: need a > 1");
    ConvolutionIdentityReport rep;
    rep.a = a;
    rep.b = a / (a - 1.0);
    rep.paper_constant = std::sqrt(a - 1.0) / a;

    const GaussianFn ga = phi_a(a), gb = phi_a(rep.b);
    const GaussianFn conv = convolve(ga, gb);
    rep.closed_form_constant = conv.amplitude;  // conv has unit width, center 0

    // Quadrature oracle for (phi_a * phi_b)(t) at a grid of t.
    numerics::QuadratureSpec spec;
    auto conv_at = [&](double t) {
        auto integrand = [&](double s) { return ga(s) * gb(t - s); };
        numerics::DecayEnvelope env{ga.amplitude * gb.amplitude,
                                    std::min(ga.width, gb.width) * kPi, 0.0, std::abs(t) + 1.0};
        return numerics::integrate_real_line(integrand, env, spec);
    };
    rep.oracle_constant = conv_at(0.0);

    const GaussianFn g = phi();
    double worst = 0.0;
    for (double t : {-1.5, -1.0, -0.5, 0.5, 1.0, 1.5}) {
        double ratio = conv_at(t) / g(t);
        worst = std::max(worst, std::abs(ratio - rep.oracle_constant) / rep.oracle_constant);
    }
    rep.shape_deviation = worst;
    rep.deviation_from_paper =
        std::abs(rep.oracle_constant - rep.paper_constant) / rep.paper_constant;
    return rep;
}

EnvelopeFit envelope_fit(const std::vector<std::pair<double, double>>& samples,
                         int n, int m) {
    if (samples.size() < 10)
        throw std::invalid_argument("envelope_fit: need at least 10 samples");
    if (n < 0 || m < 0) throw std::invalid_argument("envelope_fit: degrees must be >= 0");
    double xi_max = 0.0;
    for (const auto& [xi, v] : samples) {
        if (v <= 0.0)
            throw std::invalid_argument("envelope_fit: samples must be strictly positive");
        xi_max = std::max(xi_max, xi);
    }
    if (xi_max < 3.0)
        throw std::invalid_argument("envelope_fit: grid must reach xi >= 3");

    // Exponential rate from the last 20% of the grid: regression of
    // -log|phi_hat| against pi xi^2.
    double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    int count = 0;
    for (const auto& [xi, v] : samples) {
        if (xi < 0.8 * xi_max) continue;
        const double x = kPi * xi * xi, y = -std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("envelope_fit: too few tail samples");
    const double rate = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    if (rate <= 0.0)
        throw std::invalid_argument("envelope_fit: samples do not decay");

    EnvelopeFit fit;
    fit.lower_rate = fit.upper_rate = rate;
    fit.lower_degree = n;
    fit.upper_degree = m;

    // Tightest one-sided constants over all samples.
    double A = std::numeric_limits<double>::infinity(), B = 0.0;
    for (const auto& [xi, v] : samples) {
        const double e = std::exp(-rate * kPi * xi * xi);
        A = std::min(A, v * (1.0 + std::pow(xi, 2 * n)) / e);
        B = std::max(B, v / ((1.0 + std::pow(xi, 2 * m)) * e));
    }
    fit.lower_amplitude = A;
    fit.upper_amplitude = B;

    double lo_slack = std::numeric_limits<double>::infinity(), hi_slack = lo_slack;
    for (const auto& [xi, v] : samples) {
        const double e = std::exp(-rate * kPi * xi * xi);
        const double lo = A / (1.0 + std::pow(xi, 2 * n)) * e;
        const double hi = B * (1.0 + std::pow(xi, 2 * m)) * e;
        if (lo > v * (1.0 + 1e-12) || hi < v * (1.0 - 1e-12))
            throw std::invalid_argument("envelope_fit: fitted bounds fail at a sample");
        lo_slack = std::min(lo_slack, (v - lo) / v);
        hi_slack = std::min(hi_slack, (hi - v) / v);
    }
    fit.lower_slack = lo_slack;
    fit.upper_slack = hi_slack;
    fit.threshold_lower = 0.5 * fit.lower_rate;
    fit.threshold_upper = 0.5 * fit.upper_rate;
    return fit;
}

}  // namespace lab::gauss
