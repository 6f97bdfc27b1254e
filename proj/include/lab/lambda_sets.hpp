#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lab::sets {

enum class SignPattern { positive, negative, symmetric };

std::string to_string(SignPattern p);
SignPattern pattern_from_string(const std::string& s);

/// How a set was generated; drives tail bounds and series classification.
struct GeneratorInfo {
    std::string kind = "explicit";  // "sqrt-grid", "arithmetic", "explicit", "scaled"
    double delta_per_side = 0.0;    // nominal density, 0 when unknown
    SignPattern pattern = SignPattern::positive;
    int truncation = 0;             // points per generated side
};

/// Finite truncation of a discrete real set, sorted by modulus.
/// Zero is excluded and duplicates are rejected at construction.
class DiscreteSet {
public:
    DiscreteSet(std::vector<double> points, GeneratorInfo gen = {});

    const std::vector<double>& points() const { return points_; }
    const GeneratorInfo& generator() const { return gen_; }
    size_t size() const { return points_.size(); }
    double max_modulus() const;
    double min_modulus() const;

    std::string to_json() const;
    static DiscreteSet from_json(const std::string& text);

private:
    std::vector<double> points_;
    GeneratorInfo gen_;
};

/// lambda_n = sign * sqrt(n / delta0), n = 1..N per generated side.
DiscreteSet generate_sqrt_set(double delta0, SignPattern pattern, int n);

/// {start, start+step, ...}, N terms; density 0 in the r^2 sense.
DiscreteSet generate_arithmetic_set(double start, double step, int n);

/// Number of points with modulus strictly below r.
int counting_function(const DiscreteSet& set, double r);

struct DensityReport {
    std::vector<double> radii;
    std::vector<int> counts;
    double delta_hat = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double fit_residual = 0.0;  // rms of n(r) - delta_hat * r^2, relative to mean count
};

/// Least-squares fit of the counting function against r^2 over a radius grid.
/// The grid must stay within the truncation-reliable range.
DensityReport density_estimate(const DiscreteSet& set, const std::vector<double>& radii);

enum class SeriesClass { diverging, converging };

struct SeriesReport {
    double partial_sum = 0.0;
    std::optional<double> tail_bound;  // available for sqrt-grid generators
    SeriesClass classification = SeriesClass::converging;
    std::string classification_basis;
};

/// Partial sum of S(eps) = sum 1/|lambda|^(2+eps) over the truncation,
/// classified from the generator's density.
SeriesReport s_epsilon(const DiscreteSet& set, double eps);

/// {c * lambda}; density transforms as Delta(c Lambda) = Delta(Lambda) / c^2.
DiscreteSet scale(const DiscreteSet& set, double c);

/// Complex zero set with quadrant bookkeeping.
struct ComplexZeroSet {
    std::vector<std::complex<double>> points;  // sorted by modulus
    std::array<int, 4> quadrant_counts{};      // arg in [k*pi/2, (k+1)*pi/2)
    GeneratorInfo source;                      // generator of the underlying real set
};

/// Gamma = Lambda union i*Lambda.
ComplexZeroSet union_with_rotation(const DiscreteSet& set);

/// Fit of |Gamma cap {|z|<r, arg z < theta}| against r^2.
double angular_density(const ComplexZeroSet& gamma, double theta,
                       const std::vector<double>& radii);

/// Max modulus over the grid of sum_{|gamma|<r} 1/gamma^2; exact cancellation
/// expected when Gamma comes from union_with_rotation of a symmetric set.
double pair_sum_check(const ComplexZeroSet& gamma, const std::vector<double>& radii);

}  // namespace lab::sets
