#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lab/numerics.hpp"

using namespace lab::numerics;

namespace {
const double kPi = std::acos(-1.0);
const double kInf = std::numeric_limits<double>::infinity();

// Fixed-step midpoint rule, refined until two successive levels agree.
// Independent of the adaptive Gauss-Legendre path.
double midpoint_refine(const std::function<double(double)>& f, double a, double b,
                       double tol) {
    double prev = 0.0;
    for (int n = 64; n <= (1 << 22); n *= 2) {
        const double h = (b - a) / n;
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
        s *= h;
        if (n > 64 && std::abs(s - prev) < tol) return s;
        prev = s;
    }
    return prev;
}
}  // namespace

TEST_CASE("integrate_real_line: closed-form Gaussians") {
    DecayEnvelope env{1.0, kPi, 0.0, 0.0};
    auto v = integrate_real_line([](double t) { return std::exp(-kPi * t * t); }, env);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    DecayEnvelope env2{1.0, 1.0, 0.0, 0.0};
    auto v2 = integrate_real_line([](double t) { return std::exp(-t * t); }, env2);
    CHECK(v2 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

    auto v3 = integrate_real_line([](double t) { return t * std::exp(-kPi * t * t); },
                                  DecayEnvelope{1.0, 2.0, 0.0, 1.0});
    CHECK(std::abs(v3) < 1e-12);
}

TEST_CASE("integrate_real_line: linearity on Gaussian pairs") {
    auto f = [](double t) { return std::exp(-kPi * t * t); };
    auto g = [](double t) { return std::exp(-2.0 * (t - 0.3) * (t - 0.3)); };
    DecayEnvelope env{10.0, 1.0, 0.0, 2.0};
    const double alpha = 2.5, beta = -0.7;
    auto combined = integrate_real_line(
        [&](double t) { return alpha * f(t) + beta * g(t); }, env);
    auto separate = alpha * integrate_real_line(f, env) + beta * integrate_real_line(g, env);
    CHECK(combined == doctest::Approx(separate).epsilon(2e-12));
}

TEST_CASE("integrate_real_line: rejects bad spec and weak envelope") {
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate_real_line([](double) { return 0.0; }, {}, bad),
                    std::invalid_argument);
    DecayEnvelope flat{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(integrate_real_line([](double) { return 0.0; }, flat),
                    std::invalid_argument);
}

TEST_CASE("integrate_disc: exact polar antiderivatives") {
    QuadratureSpec spec;
    spec.abs_tol = 1e-11;
    auto g = integrate_disc([](std::complex<double> z) { return std::exp(-kPi * std::norm(z)); },
                            2.0, spec);
    CHECK(g == doctest::Approx(1.0 - std::exp(-4.0 * kPi)).epsilon(1e-10));

    auto area = integrate_disc([](std::complex<double>) { return 1.0; }, 1.0, spec);
    CHECK(area == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("integrate_disc: |e^{pi z^2/2}|^2 e^{-pi|z|^2} against midpoint oracle") {
    // Integrand reduces to e^{-2 pi y^2}; oracle integrates it in polar form
    // with an independent midpoint rule.
    auto f = [](std::complex<double> z) {
        return std::exp(-2.0 * kPi * z.imag() * z.imag());
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    const double R = 5.0;
    auto main = integrate_disc(f, R, spec);
    auto oracle = midpoint_refine(
        [&](double r) {
            auto ang = midpoint_refine(
                [&](double th) {
                    double y = r * std::sin(th);
                    return std::exp(-2.0 * kPi * y * y);
                },
                0.0, 2.0 * kPi, 1e-11);
            return r * ang;
        },
        0.0, R, 1e-9);
    CHECK(main == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("integrate_disc: monotone in R for nonnegative integrands") {
    auto f = [](std::complex<double> z) { return std::exp(-std::norm(z)); };
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    double prev = 0.0;
    for (double R : {0.5, 1.0, 2.0, 3.0}) {
        double v = integrate_disc(f, R, spec);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("spd_truncated_solve: identity and rank-deficient cases") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd b(2);
    b << 3.0, 4.0;
    auto rep = spd_truncated_solve(I, b, 1e-12);
    CHECK(rep.retained == 2);
    CHECK(rep.solution[0] == doctest::Approx(3.0));
    CHECK(rep.solution[1] == doctest::Approx(4.0));

    Eigen::MatrixXd ones(2, 2);
    ones << 1.0, 1.0, 1.0, 1.0;
    Eigen::VectorXd b2(2);
    b2 << 1.0, 1.0;
    auto rep2 = spd_truncated_solve(ones, b2, 1e-12);
    CHECK(rep2.retained == 1);
    CHECK(rep2.solution[0] == doctest::Approx(0.5));
    CHECK(rep2.solution[1] == doctest::Approx(0.5));
}

TEST_CASE("spd_truncated_solve: random Gaussian Gram vs shifted regularization") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::vector<double> nodes(6);
    for (auto& x : nodes) x = uni(rng);
    Eigen::MatrixXd G(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double d = nodes[i] - nodes[j];
            G(i, j) = std::exp(-0.5 * kPi * d * d) / std::sqrt(2.0);
        }
    Eigen::VectorXd b(6);
    for (int i = 0; i < 6; ++i) b[i] = uni(rng);

    const double cutoff = 1e-8;
    auto rep = spd_truncated_solve(G, b, cutoff);
    // Oracle: Tikhonov solve at the cutoff scale; agreement on the projection
    // b^T x (the quantity the lab consumes), which is stable under the shift.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    const double eps = cutoff * eig.eigenvalues().maxCoeff();
    Eigen::VectorXd oracle =
        (G + eps * Eigen::MatrixXd::Identity(6, 6)).ldlt().solve(b);
    CHECK(b.dot(rep.solution) == doctest::Approx(b.dot(oracle)).epsilon(1e-3));
}

TEST_CASE("spd_truncated_solve: retained-space residual and permutation invariance") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    const int n = 8;
    std::vector<double> nodes(n);
    for (auto& x : nodes) x = uni(rng);
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double d = nodes[i] - nodes[j];
            G(i, j) = std::exp(-0.5 * kPi * d * d);
        }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = uni(rng);

    auto rep = spd_truncated_solve(G, b, 1e-12);
    // Residual restricted to the retained eigenspace.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
    const double cut = 1e-12 * eig.eigenvalues().maxCoeff();
    Eigen::VectorXd resid = G * rep.solution - b;
    double retained_resid = 0.0;
    for (int i = 0; i < n; ++i)
        if (eig.eigenvalues()[i] >= cut) {
            double c = eig.eigenvectors().col(i).dot(resid);
            retained_resid += c * c;
        }
    CHECK(std::sqrt(retained_resid) <= 1e-10 * b.norm());

    // Symmetric permutation.
    Eigen::PermutationMatrix<Eigen::Dynamic> P(n);
    P.setIdentity();
    std::shuffle(P.indices().data(), P.indices().data() + n, rng);
    Eigen::MatrixXd Gp = P.transpose() * G * P;
    Eigen::VectorXd bp = P.transpose() * b;
    auto rep_p = spd_truncated_solve(Gp, bp, 1e-12);
    Eigen::VectorXd back = P * rep_p.solution;
    CHECK((back - rep.solution).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("spd_truncated_solve: rejects non-symmetric input") {
    Eigen::MatrixXd A(2, 2);
    A << 1.0, 0.5, 0.0, 1.0;
    Eigen::VectorXd b(2);
    b << 1.0, 1.0;
    CHECK_THROWS_AS(spd_truncated_solve(A, b, 1e-12), std::invalid_argument);
}

TEST_CASE("log_product_accumulate: huge factors and exact zeros") {
    double big = 200.0 * std::log(10.0);
    CHECK(log_product_accumulate({big, big}) == doctest::Approx(400.0 * std::log(10.0)));
    CHECK(log_product_accumulate({-kInf, 5.0}) == -kInf);
    CHECK(log_product_accumulate({}) == 0.0);
}

TEST_CASE("log_product_accumulate: compensated sum vs long double oracle") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.5e-6, 1.5e-6);
    std::vector<double> terms(100000);
    long double exact = 0.0L;
    for (size_t i = 0; i < terms.size(); ++i) {
        terms[i] = (i % 2 ? 1.0 : -1.0) * uni(rng);
        exact += terms[i];
    }
    double got = log_product_accumulate(terms);
    CHECK(std::abs(got - static_cast<double>(exact)) <=
          1e-12 * std::abs(static_cast<double>(exact)));
}

TEST_CASE("log_product_accumulate: permutation invariance") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> terms(1000);
    for (auto& t : terms) t = uni(rng);
    double a = log_product_accumulate(terms);
    std::shuffle(terms.begin(), terms.end(), rng);
    double b = log_product_accumulate(terms);
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("log_sum_exp: large offsets") {
    CHECK(log_sum_exp({1000.0, 1000.0}) == doctest::Approx(1000.0 + std::log(2.0)));
    CHECK(log_sum_exp({}) == -kInf);
    CHECK(log_sum_exp({-kInf, 0.0}) == doctest::Approx(0.0));
}
