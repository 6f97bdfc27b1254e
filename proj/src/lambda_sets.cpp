#include "lab/lambda_sets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace lab::sets {

std::string to_string(SignPattern p) {
    switch (p) {
        case SignPattern::positive: return "positive";
        case SignPattern::negative: return "negative";
        case SignPattern::symmetric: return "symmetric";
    }
    return "?";
}

SignPattern pattern_from_string(const std::string& s) {
    if (s == "positive") return SignPattern::positive;
    if (s == "negative") return SignPattern::negative;
    if (s == "symmetric") return SignPattern::symmetric;
    throw std::invalid_argument("unknown sign pattern: " + s);
}

DiscreteSet::DiscreteSet(std::vector<double> points, GeneratorInfo gen)
    : points_(std::move(points)), gen_(std::move(gen)) {
    for (double p : points_) {
        if (p == 0.0) throw std::invalid_argument("DiscreteSet: zero point rejected");
        if (!std::isfinite(p)) throw std::invalid_argument("DiscreteSet: non-finite point");
    }
    std::sort(points_.begin(), points_.end(), [](double a, double b) {
        double ma = std::abs(a), mb = std::abs(b);
        return ma != mb ? ma < mb : a < b;
    });
    for (size_t i = 1; i < points_.size(); ++i)
        if (points_[i] == points_[i - 1])
            throw std::invalid_argument("DiscreteSet: duplicate point rejected");
}

double DiscreteSet::max_modulus() const {
    return points_.empty() ? 0.0 : std::abs(points_.back());
}

double DiscreteSet::min_modulus() const {
    return points_.empty() ? 0.0 : std::abs(points_.front());
}

std::string DiscreteSet::to_json() const {
    nlohmann::json j;
    j["generator"] = gen_.kind;
    j["delta_per_side"] = gen_.delta_per_side;
    j["pattern"] = to_string(gen_.pattern);
    j["n"] = gen_.truncation;
    auto& arr = j["points"] = nlohmann::json::array();
    char buf[64];
    for (double p : points_) {
        std::snprintf(buf, sizeof(buf), "%.17g", p);
        arr.push_back(std::stod(buf));
    }
    return j.dump();
}

DiscreteSet DiscreteSet::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    GeneratorInfo gen;
    gen.kind = j.at("generator").get<std::string>();
    gen.delta_per_side = j.at("delta_per_side").get<double>();
    gen.pattern = pattern_from_string(j.at("pattern").get<std::string>());
    gen.truncation = j.at("n").get<int>();
    return DiscreteSet(j.at("points").get<std::vector<double>>(), gen);
}

DiscreteSet generate_sqrt_set(double delta0, SignPattern pattern, int n) {
    if (delta0 <= 0.0) throw std::invalid_argument("generate_sqrt_set: density must be positive");
    if (n < 1) throw std::invalid_argument("generate_sqrt_set: truncation must be >= 1");
    std::vector<double> pts;
    pts.reserve(pattern == SignPattern::symmetric ? 2 * n : n);
    for (int k = 1; k <= n; ++k) {
        double v = std::sqrt(k / delta0);
        if (pattern != SignPattern::negative) pts.push_back(v);
        if (pattern != SignPattern::positive) pts.push_back(-v);
    }
    return DiscreteSet(std::move(pts), {"sqrt-grid", delta0, pattern, n});
}

DiscreteSet generate_arithmetic_set(double start, double step, int n) {
    if (step <= 0.0 || n < 1) throw std::invalid_argument("generate_arithmetic_set: bad parameters");
    std::vector<double> pts;
    for (int k = 0; k < n; ++k) {
        double v = start + k * step;
        if (v != 0.0) pts.push_back(v);
    }
    return DiscreteSet(std::move(pts), {"arithmetic", 0.0, SignPattern::positive, n});
}

int counting_function(const DiscreteSet& set, double r) {
    if (r < 0.0) throw std::invalid_argument("counting_function: radius must be >= 0");
    int c = 0;
    for (double p : set.points())
        if (std::abs(p) < r) ++c;
    return c;
}

namespace {

// One-parameter fit n(r) ~ d * r^2.
template <typename Count>
DensityReport fit_counts(const std::vector<double>& radii, Count count_at) {
    if (radii.size() < 2)
        throw std::invalid_argument("density fit: need at least 2 radii");
    DensityReport rep;
    rep.radii = radii;
    double num = 0.0, den = 0.0, num_p = 0.0, num_m = 0.0;
    for (double r : radii) {
        auto [n_all, n_plus, n_minus] = count_at(r);
        rep.counts.push_back(n_all);
        const double r2 = r * r;
        num += n_all * r2;
        num_p += n_plus * r2;
        num_m += n_minus * r2;
        den += r2 * r2;
    }
    rep.delta_hat = num / den;
    rep.delta_plus = num_p / den;
    rep.delta_minus = num_m / den;
    double ss = 0.0, mean = 0.0;
    for (size_t i = 0; i < radii.size(); ++i) {
        double resid = rep.counts[i] - rep.delta_hat * radii[i] * radii[i];
        ss += resid * resid;
        mean += rep.counts[i];
    }
    mean /= radii.size();
    rep.fit_residual = std::sqrt(ss / radii.size()) / std::max(mean, 1.0);
    return rep;
}

}  // namespace

DensityReport density_estimate(const DiscreteSet& set, const std::vector<double>& radii) {
    for (double r : radii)
        if (r > set.max_modulus())
            throw std::invalid_argument(
                "density_estimate: grid radius beyond truncation; counts saturate "
                "artificially past the largest modulus");
    return fit_counts(radii, [&](double r) {
        int np = 0, nm = 0;
        for (double p : set.points())
            if (std::abs(p) < r) (p > 0 ? np : nm)++;
        return std::array<int, 3>{np + nm, np, nm};
    });
}

SeriesReport s_epsilon(const DiscreteSet& set, double eps) {
    if (eps < 0.0) throw std::invalid_argument("s_epsilon: eps must be >= 0");
    SeriesReport rep;
    double sum = 0.0;
    for (double p : set.points()) sum += std::pow(std::abs(p), -(2.0 + eps));
    rep.partial_sum = sum;

    const auto& gen = set.generator();
    if (gen.kind == "sqrt-grid" && gen.delta_per_side > 0.0) {
        // Per side the terms are (delta/n)^(1+eps/2); integral tail bound.
        const int sides = gen.pattern == SignPattern::symmetric ? 2 : 1;
        const double q = 1.0 + 0.5 * eps;
        // Midpoint bound for the convex decreasing tail:
        // sum_{n>N} f(n) <= integral_{N+1/2}^inf f.
        if (eps > 0.0)
            rep.tail_bound = sides * std::pow(gen.delta_per_side, q) *
                             std::pow(gen.truncation + 0.5, 1.0 - q) / (q - 1.0);
        rep.classification = eps == 0.0 ? SeriesClass::diverging : SeriesClass::converging;
        rep.classification_basis = "positive finite density generator";
    } else {
        // Fall back on an empirical density over the available range.
        double delta_hat = 0.0;
        if (set.size() >= 8) {
            double r_lo = std::abs(set.points()[set.size() / 2]);
            double r_hi = set.max_modulus();
            std::vector<double> grid;
            for (int i = 0; i < 5; ++i) grid.push_back(r_lo + (r_hi - r_lo) * i / 4.0);
            delta_hat = density_estimate(set, grid).delta_hat;
        }
        rep.classification = (eps == 0.0 && delta_hat > 1e-6)
                                 ? SeriesClass::diverging
                                 : SeriesClass::converging;
        rep.classification_basis = "empirical density estimate";
    }
    return rep;
}

DiscreteSet scale(const DiscreteSet& set, double c) {
    if (c == 0.0) throw std::invalid_argument("scale: factor must be nonzero");
    std::vector<double> pts;
    pts.reserve(set.size());
    for (double p : set.points()) pts.push_back(c * p);
    GeneratorInfo gen = set.generator();
    gen.delta_per_side /= c * c;
    if (c < 0.0) {
        if (gen.pattern == SignPattern::positive) gen.pattern = SignPattern::negative;
        else if (gen.pattern == SignPattern::negative) gen.pattern = SignPattern::positive;
    }
    if (c != 1.0) gen.kind = set.generator().kind == "sqrt-grid" ? "sqrt-grid" : "scaled";
    return DiscreteSet(std::move(pts), gen);
}

ComplexZeroSet union_with_rotation(const DiscreteSet& set) {
    if (set.size() == 0) throw std::invalid_argument("union_with_rotation: empty set");
    ComplexZeroSet gamma;
    gamma.source = set.generator();
    gamma.points.reserve(2 * set.size());
    for (double p : set.points()) {
        gamma.points.emplace_back(p, 0.0);
        gamma.points.emplace_back(0.0, p);
    }
    std::sort(gamma.points.begin(), gamma.points.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  double ma = std::abs(a), mb = std::abs(b);
                  if (ma != mb) return ma < mb;
                  double aa = std::arg(a), ab = std::arg(b);
                  return aa < ab;
              });
    const double pi = std::acos(-1.0);
    for (const auto& z : gamma.points) {
        double a = std::arg(z);
        if (a < 0.0) a += 2.0 * pi;
        int q = std::min(3, static_cast<int>(a / (0.5 * pi)));
        gamma.quadrant_counts[q]++;
    }
    return gamma;
}

double angular_density(const ComplexZeroSet& gamma, double theta,
                       const std::vector<double>& radii) {
    const double pi = std::acos(-1.0);
    if (theta < 0.0 || theta >= 2.0 * pi)
        throw std::invalid_argument("angular_density: theta must lie in [0, 2*pi)");
    double max_mod = gamma.points.empty() ? 0.0 : std::abs(gamma.points.back());
    for (double r : radii)
        if (r > max_mod)
            throw std::invalid_argument("angular_density: grid radius beyond truncation");
    auto rep = fit_counts(radii, [&](double r) {
        int n = 0;
        for (const auto& z : gamma.points) {
            double a = std::arg(z);
            if (a < 0.0) a += 2.0 * pi;
            if (std::abs(z) < r && a < theta) ++n;
        }
        return std::array<int, 3>{n, n, 0};
    });
    return rep.delta_hat;
}

double pair_sum_check(const ComplexZeroSet& gamma, const std::vector<double>& radii) {
    double worst = 0.0;
    for (double r : radii) {
        std::complex<double> sum = 0.0;
        for (const auto& z : gamma.points)
            if (std::abs(z) < r) sum += 1.0 / (z * z);
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

}  // namespace lab::sets
