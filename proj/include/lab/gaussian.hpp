#pragma once

#include <utility>
#include <vector>

#include "lab/numerics.hpp"

namespace lab::gauss {

/// amplitude * exp(-width * pi * (t - center)^2), amplitude and width positive.
struct GaussianFn {
    double amplitude = 1.0;
    double width = 1.0;
    double center = 0.0;

    double operator()(double t) const;
    void validate() const;
};

/// The unit Gaussian exp(-pi t^2).
GaussianFn phi();
/// 2^(1/4) * exp(-a pi t^2).
GaussianFn phi_a(double a);
/// The translate exp(-pi (t - lambda)^2).
GaussianFn translate(double lambda);

/// Closed-form L2 pairing; for unit translates this is
/// 2^(-1/2) * exp(-pi (lambda - mu)^2 / 2).
double inner_product(const GaussianFn& g1, const GaussianFn& g2);

/// L^p norm, p in [1, inf]; pass p = infinity for the sup norm.
double lp_norm(const GaussianFn& g, double p);

/// Exact Gaussian convolution: widths combine harmonically, centers add.
GaussianFn convolve(const GaussianFn& g1, const GaussianFn& g2);

/// Transform of a centered Gaussian under the e^{-2 pi i t xi} convention;
/// width a maps to 1/a. Non-centered input is rejected.
GaussianFn fourier_transform(const GaussianFn& g);

struct ConvolutionIdentityReport {
    double a = 0.0;
    double b = 0.0;               // conjugate width a/(a-1)
    double paper_constant = 0.0;  // sqrt(a-1)/a as printed
    double oracle_constant = 0.0; // quadrature value of (phi_a * phi_b)(0)
    double closed_form_constant = 0.0;
    double shape_deviation = 0.0;     // max over t of |ratio to phi - constant|/constant
    double deviation_from_paper = 0.0;
};

/// Checks that phi_a * phi_b is proportional to phi when 1/a + 1/b = 1 and
/// measures the proportionality constant by quadrature.
ConvolutionIdentityReport convolution_identity_check(double a);

struct EnvelopeFit {
    double lower_amplitude = 0.0;  // A
    double lower_rate = 0.0;       // a
    int lower_degree = 0;          // n
    double upper_amplitude = 0.0;  // B
    double upper_rate = 0.0;       // b
    int upper_degree = 0;          // m
    double lower_slack = 0.0;      // max relative slack of the lower bound
    double upper_slack = 0.0;
    double threshold_lower = 0.0;  // a/2
    double threshold_upper = 0.0;  // b/2
};

/// Fits A/(1+xi^2n) e^{-a pi xi^2} <= |phi_hat| <= B(1+xi^2m) e^{-b pi xi^2}
/// to sampled transform moduli; attaches the spanning thresholds a/2, b/2.
EnvelopeFit envelope_fit(const std::vector<std::pair<double, double>>& samples,
                         int n, int m);

}  // namespace lab::gauss
