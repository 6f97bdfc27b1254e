#include "lab/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace lab::bargmann {

namespace {
const double kPi = std::acos(-1.0);
const double kLog2 = std::log(2.0);
}  // namespace

double FockNormTrend::norm(size_t i) const { return std::exp(log_norms.at(i)); }

EntireFnHandle bargmann_gaussian_translate(double mu) {
    EntireFnHandle h;
    h.descriptor = "bargmann-translate mu=" + std::to_string(mu);
    h.value = [mu](Complex z) {
        return std::pow(2.0, -0.25) * std::exp(-0.5 * kPi * mu * mu + kPi * mu * z);
    };
    h.log_abs = [mu](Complex z) {
        return -0.25 * kLog2 - 0.5 * kPi * mu * mu + kPi * mu * z.real();
    };
    return h;
}

Complex bargmann_numeric(const std::function<double(double)>& f, double sup_bound,
                         Complex z, double support_radius,
                         const numerics::QuadratureSpec& spec) {
    auto integrand = [&](double t, bool re) {
        const Complex e = std::exp(2.0 * kPi * t * z - kPi * t * t - 0.5 * kPi * z * z);
        const Complex v = std::pow(2.0, 0.25) * f(t) * e;
        return re ? v.real() : v.imag();
    };
    double re, im;
    if (std::isfinite(support_radius)) {
        re = numerics::integrate_interval([&](double t) { return integrand(t, true); },
                                          -support_radius, support_radius, spec);
        im = numerics::integrate_interval([&](double t) { return integrand(t, false); },
                                          -support_radius, support_radius, spec);
    } else {
        // |f(t) e^{2 pi t z - pi t^2 - (pi/2) z^2}| <= sup|f| e^{(pi/2)|z|^2} e^{-pi (t-x)^2}
        numerics::DecayEnvelope env;
        env.scale = std::pow(2.0, 0.25) * sup_bound *
                    std::exp(0.5 * kPi * std::norm(z));
        env.rate = kPi;
        env.center = z.real();
        re = numerics::integrate_real_line([&](double t) { return integrand(t, true); }, env, spec);
        im = numerics::integrate_real_line([&](double t) { return integrand(t, false); }, env, spec);
    }
    return {re, im};
}

double real_line_identity_check(double mu, const std::vector<double>& xs) {
    const auto handle = bargmann_gaussian_translate(mu);
    double worst = 0.0;
    for (double x : xs) {
        const double log_left = handle.log_abs(Complex(x, 0.0));
        const double ip = gauss::inner_product(gauss::translate(mu), gauss::translate(x));
        const double log_right = 0.25 * kLog2 + 0.5 * kPi * x * x + std::log(ip);
        worst = std::max(worst, std::abs(std::expm1(log_left - log_right)));
    }
    return worst;
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("LAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// log of the integral of |F|^2 e^{-pi |z|^2} over the annulus [r0, r1],
// by Gauss-Legendre in r and a uniform periodic rule in theta, accumulated
// in log domain. Threads fill disjoint slots; the reduction order is fixed.
double log_annulus_integral(const EntireFnHandle& F, double r0, double r1,
                            int nr, int ntheta) {
    const auto& gl = numerics::gauss_legendre(nr);
    const double mid = 0.5 * (r0 + r1), half = 0.5 * (r1 - r0);
    const double dtheta = 2.0 * kPi / ntheta;
    std::vector<double> terms(static_cast<size_t>(nr) * ntheta);
    auto fill_rows = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            const double r = mid + half * gl.nodes[i];
            const double wr = half * gl.weights[i] * r * dtheta;
            for (int j = 0; j < ntheta; ++j) {
                const Complex z = std::polar(r, j * dtheta);
                terms[static_cast<size_t>(i) * ntheta + j] =
                    2.0 * F.log_abs(z) - kPi * r * r + std::log(wr);
            }
        }
    };
    const int nw = std::min(worker_count(), nr);
    if (nw <= 1) {
        fill_rows(0, nr);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w)
            pool.emplace_back(fill_rows, nr * w / nw, nr * (w + 1) / nw);
        for (auto& t : pool) t.join();
    }
    return numerics::log_sum_exp(terms);
}

}  // namespace

FockNormTrend fock_norm_trend(const EntireFnHandle& F, const std::vector<double>& schedule,
                              int radial_nodes, int angular_nodes) {
    if (schedule.size() < 3)
        throw std::invalid_argument("fock_norm_trend: need at least 3 radii");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("fock_norm_trend: schedule must be increasing");

    FockNormTrend trend;
    trend.radii = schedule;
    double prev = 0.0;
    double log_norm = -std::numeric_limits<double>::infinity();
    for (double r : schedule) {
        const double inc = log_annulus_integral(F, prev, r, radial_nodes, angular_nodes);
        trend.log_increments.push_back(inc);
        log_norm = numerics::log_sum_exp({log_norm, inc});
        trend.log_norms.push_back(log_norm);
        prev = r;
    }

    // Slope of log-increment against the annulus midpoint R^2. A geometric
    // exp(c r^2) trend shows up as slope c; polynomial trends sit near 0.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int n = static_cast<int>(schedule.size());
    prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = 0.5 * (prev + schedule[i]);
        sx += m * m;
        sxx += m * m * m * m;
        sy += trend.log_increments[i];
        sxy += m * m * trend.log_increments[i];
        prev = schedule[i];
    }
    trend.growth_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    constexpr double kDeadband = 0.15;
    if (trend.growth_exponent <= -kDeadband)
        trend.classification = TrendClass::converging;
    else if (trend.growth_exponent >= kDeadband)
        trend.classification = TrendClass::diverging;
    else
        trend.classification = TrendClass::inconclusive;
    return trend;
}

GrowthBoundReport growth_bound_check(const EntireFnHandle& Bf, double norm_f_p,
                                     double p, double grid_extent, int grid_points) {
    if (p < 1.0) throw std::invalid_argument("growth_bound_check: p must be >= 1");
    const double q = (p == std::numeric_limits<double>::infinity())
                         ? 1.0
                         : (p == 1.0 ? std::numeric_limits<double>::infinity()
                                     : p / (p - 1.0));
    const double norm_phi_q = gauss::lp_norm(gauss::phi(), q);

    GrowthBoundReport rep;
    rep.bound_without_prefactor = norm_f_p * norm_phi_q;
    rep.bound = std::pow(2.0, 0.25) * rep.bound_without_prefactor;
    for (int i = 0; i < grid_points; ++i) {
        for (int j = 0; j < grid_points; ++j) {
            const double x = -grid_extent + 2.0 * grid_extent * i / (grid_points - 1);
            const double y = -grid_extent + 2.0 * grid_extent * j / (grid_points - 1);
            const Complex z(x, y);
            const double v = std::exp(Bf.log_abs(z) - 0.5 * kPi * std::norm(z));
            rep.max_normalized_modulus = std::max(rep.max_normalized_modulus, v);
        }
    }
    rep.max_ratio = rep.max_normalized_modulus / rep.bound;
    return rep;
}

}  // namespace lab::bargmann
