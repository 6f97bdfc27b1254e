#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lab::numerics {

/// Tolerances and limits for the adaptive quadrature routines.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 40;

    void validate() const {
        if (abs_tol <= 0.0 || rel_tol <= 0.0)
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (max_depth < 1)
            throw std::invalid_argument("QuadratureSpec: subdivision limit must be >= 1");
    }
};

/// Certified bound |f(t)| <= scale * exp(-rate * (t - center)^2) for
/// |t - center| >= valid_radius. Used to truncate integrals over the line.
struct DecayEnvelope {
    double scale = 1.0;
    double rate = 1.0;
    double center = 0.0;
    double valid_radius = 0.0;
};

/// Thrown when bisection hits the depth limit; carries the best estimate.
struct QuadratureError : std::runtime_error {
    double best_estimate;
    double error_bound;
    QuadratureError(const std::string& msg, double est, double err)
        : std::runtime_error(msg), best_estimate(est), error_bound(err) {}
};

using RealFn = std::function<double(double)>;
using PlaneFn = std::function<double(std::complex<double>)>;

/// Adaptive Gauss-Legendre integration over a finite interval.
double integrate_interval(const RealFn& f, double a, double b,
                          const QuadratureSpec& spec = {});

/// Integral over the whole real line, truncated where the decay envelope
/// pushes the tail below abs_tol / 10.
double integrate_real_line(const RealFn& f, const DecayEnvelope& env,
                           const QuadratureSpec& spec = {});

/// Polar-coordinates integral of a real-valued integrand over |z| <= R.
double integrate_disc(const PlaneFn& f, double radius,
                      const QuadratureSpec& spec = {});

struct SpectralSolveReport {
    Eigen::VectorXd solution;
    int retained = 0;
    double smallest_retained = 0.0;
    double condition_estimate = 0.0;
    bool degenerate = false;  // all components discarded
};

/// Minimum-norm least-squares solve of G x = b through a spectral cutoff:
/// components with eigenvalue below cutoff * lambda_max are discarded.
SpectralSolveReport spd_truncated_solve(const Eigen::MatrixXd& G,
                                        const Eigen::VectorXd& b,
                                        double relative_cutoff = 1e-12);

/// Compensated (Neumaier) sum of log-magnitude terms; -inf propagates.
double log_product_accumulate(const std::vector<double>& log_terms);

/// log(sum_i exp(terms_i)) without overflow; empty input gives -inf.
double log_sum_exp(const std::vector<double>& terms);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

}  // namespace lab::numerics
