#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lab/gaussian.hpp"
#include "lab/numerics.hpp"

namespace lab::bargmann {

using Complex = std::complex<double>;

/// An entire function carried as an evaluator plus a log-magnitude evaluator
/// (the latter stays finite where direct evaluation would overflow).
struct EntireFnHandle {
    std::function<Complex(Complex)> value;
    std::function<double(Complex)> log_abs;
    std::string descriptor;
};

/// Closed form of the transform of phi(. - mu):
/// 2^(-1/4) exp(-pi mu^2 / 2) exp(pi mu z).
EntireFnHandle bargmann_gaussian_translate(double mu);

/// Transform of a bounded sampled function by quadrature; sup_bound must
/// dominate |f| on the whole line, support may be cut at support_radius
/// (pass a finite value for compactly supported f, infinity otherwise).
Complex bargmann_numeric(const std::function<double(double)>& f, double sup_bound,
                         Complex z,
                         double support_radius = std::numeric_limits<double>::infinity(),
                         const numerics::QuadratureSpec& spec = {});

/// Max relative deviation between B[phi(.-mu)](x) and
/// 2^(1/4) exp(pi x^2 / 2) <phi(.-mu), phi_x> over the grid, both sides
/// evaluated in log domain.
double real_line_identity_check(double mu, const std::vector<double>& xs);

enum class TrendClass { converging, diverging, inconclusive };

struct FockNormTrend {
    std::vector<double> radii;
    std::vector<double> log_norms;       // log of truncated squared Fock norms
    std::vector<double> log_increments;  // log of consecutive annulus integrals
    TrendClass classification = TrendClass::inconclusive;
    double growth_exponent = 0.0;  // slope of log-increment against R^2
    double norm(size_t i) const;   // exp(log_norms[i]), may overflow to inf
};

/// Truncated Fock norms over a radius schedule with a growth classification.
/// Slope deadband: |slope| < 0.15 is reported inconclusive. Radial and angular
/// node counts control the polar rule per annulus; worker threads are capped
/// by the LAB_THREADS environment variable.
FockNormTrend fock_norm_trend(const EntireFnHandle& F, const std::vector<double>& schedule,
                              int radial_nodes = 64, int angular_nodes = 512);

struct GrowthBoundReport {
    double max_normalized_modulus = 0.0;  // max |Bf(z)| e^{-(pi/2)|z|^2}
    double bound = 0.0;                   // 2^(1/4) ||f||_p ||phi||_q
    double bound_without_prefactor = 0.0; // ||f||_p ||phi||_q as printed
    double max_ratio = 0.0;
};

/// Checks the growth bound of the transform on a square grid in z, given a
/// handle for Bf and the L^p data of f.
GrowthBoundReport growth_bound_check(const EntireFnHandle& Bf, double norm_f_p,
                                     double p, double grid_extent, int grid_points);

}  // namespace lab::bargmann
