#include "lab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace lab::numerics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GaussLegendreRule compute_gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials, nodes symmetric about 0.
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

struct AdaptiveState {
    const RealFn* f;
    const QuadratureSpec* spec;
    double best = 0.0;
    double err_bound = 0.0;
};

double panel(const RealFn& f, double a, double b, const GaussLegendreRule& gl) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i)
        sum += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return half * sum;
}

double adapt(AdaptiveState& st, double a, double b, double whole, double tol, int depth) {
    const auto& gl = gauss_legendre(15);
    const double mid = 0.5 * (a + b);
    const double left = panel(*st.f, a, mid, gl);
    const double right = panel(*st.f, mid, b, gl);
    const double refined = left + right;
    const double err = std::abs(refined - whole);
    if (err <= tol || err <= st.spec->rel_tol * std::abs(refined))
        return refined;
    if (depth >= st.spec->max_depth) {
        st.best += refined;
        st.err_bound += err;
        throw QuadratureError("quadrature: subdivision limit reached", st.best, st.err_bound);
    }
    return adapt(st, a, mid, left, 0.5 * tol, depth + 1) +
           adapt(st, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double integrate_interval(const RealFn& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (a == b) return 0.0;
    AdaptiveState st{&f, &spec};
    const double whole = panel(f, a, b, gauss_legendre(15));
    return adapt(st, a, b, whole, spec.abs_tol, 0);
}

double integrate_real_line(const RealFn& f, const DecayEnvelope& env,
                           const QuadratureSpec& spec) {
    spec.validate();
    if (env.rate <= 0.0)
        throw std::invalid_argument("integrate_real_line: envelope rate must be positive");
    // Tail beyond T (one side): integral of scale*exp(-rate*s^2) over s > T
    // is bounded by scale * exp(-rate*T^2) / (2*rate*T).
    double T = std::max({env.valid_radius, 1.0, 1.0 / std::sqrt(env.rate)});
    const double target = spec.abs_tol / 10.0;
    while (env.scale * std::exp(-env.rate * T * T) / (env.rate * T) > target) {
        T *= 1.5;
        if (T > 1e8)
            throw std::invalid_argument("integrate_real_line: envelope too weak to truncate");
    }
    return integrate_interval(f, env.center - T, env.center + T, spec);
}

double integrate_disc(const PlaneFn& f, double radius, const QuadratureSpec& spec) {
    spec.validate();
    if (radius <= 0.0) throw std::invalid_argument("integrate_disc: radius must be positive");
    const double two_pi = 2.0 * std::acos(-1.0);
    QuadratureSpec inner = spec;
    inner.abs_tol = spec.abs_tol / (two_pi * radius * 10.0);
    auto radial = [&](double r) {
        auto angular = [&](double theta) {
            return f(std::polar(r, theta));
        };
        return r * integrate_interval(angular, 0.0, two_pi, inner);
    };
    return integrate_interval(radial, 0.0, radius, spec);
}

SpectralSolveReport spd_truncated_solve(const Eigen::MatrixXd& G,
                                        const Eigen::VectorXd& b,
                                        double relative_cutoff) {
    if (G.rows() != G.cols() || G.rows() != b.size())
        throw std::invalid_argument("spd_truncated_solve: dimension mismatch");
    if (relative_cutoff <= 0.0 || relative_cutoff >= 1.0)
        throw std::invalid_argument("spd_truncated_solve: cutoff must be in (0,1)");
    const double scale = G.cwiseAbs().maxCoeff();
    if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("spd_truncated_solve: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    const Eigen::VectorXd& vals = eig.eigenvalues();
    const Eigen::MatrixXd& vecs = eig.eigenvectors();
    const double lambda_max = vals.maxCoeff();
    const double cut = relative_cutoff * lambda_max;

    SpectralSolveReport rep;
    rep.solution = Eigen::VectorXd::Zero(b.size());
    double smallest = kInf;
    for (int i = 0; i < vals.size(); ++i) {
        if (lambda_max <= 0.0 || vals[i] < cut) continue;
        rep.solution += (vecs.col(i).dot(b) / vals[i]) * vecs.col(i);
        ++rep.retained;
        smallest = std::min(smallest, vals[i]);
    }
    rep.degenerate = (rep.retained == 0);
    rep.smallest_retained = rep.degenerate ? 0.0 : smallest;
    rep.condition_estimate = rep.degenerate ? 0.0 : lambda_max / rep.smallest_retained;
    return rep;
}

double log_product_accumulate(const std::vector<double>& log_terms) {
    double sum = 0.0, comp = 0.0;
    for (double t : log_terms) {
        if (t == -kInf) return -kInf;
        double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    return sum + comp;
}

double log_sum_exp(const std::vector<double>& terms) {
    double m = -kInf;
    for (double t : terms) m = std::max(m, t);
    if (m == -kInf) return -kInf;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    return m + std::log(acc);
}

}  // namespace lab::numerics
