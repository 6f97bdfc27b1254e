#include "lab/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab::completeness {

GramSystem build_gram(const std::vector<double>& nodes, const gauss::GaussianFn& target,
                      double cutoff) {
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("build_gram: duplicate nodes");
    const int n = static_cast<int>(nodes.size());
    GramSystem sys;
    sys.nodes = nodes;
    sys.cutoff = cutoff;
    sys.gram.resize(n, n);
    sys.rhs.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            sys.gram(i, j) = gauss::inner_product(gauss::translate(nodes[i]),
                                                  gauss::translate(nodes[j]));
        sys.rhs[i] = gauss::inner_product(target, gauss::translate(nodes[i]));
    }
    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.gram);
        const double lmax = eig.eigenvalues().maxCoeff();
        const double cut = cutoff * lmax;
        double lmin = lmax;
        for (int i = 0; i < n; ++i)
            if (eig.eigenvalues()[i] >= cut) {
                ++sys.retained_rank;
                lmin = std::min(lmin, eig.eigenvalues()[i]);
            }
        sys.condition_estimate = lmax / lmin;
    }
    return sys;
}

ProjectionResult project(const GramSystem& system, double target_norm_sq) {
    if (target_norm_sq < 0.0)
        throw std::invalid_argument("project: target norm must be >= 0");
    ProjectionResult res;
    res.solve = numerics::spd_truncated_solve(system.gram, system.rhs, system.cutoff);
    if (res.solve.degenerate) {
        res.residual_sq = target_norm_sq;
        return res;
    }
    double d2 = target_norm_sq - system.rhs.dot(res.solve.solution);
    if (d2 < 0.0) {
        res.clip = -d2;
        d2 = 0.0;
    }
    if (d2 > target_norm_sq) d2 = target_norm_sq;
    res.residual_sq = d2;
    return res;
}

ResidualCurve residual_curve(const sets::DiscreteSet& set, const gauss::GaussianFn& target,
                             const std::vector<int>& schedule, double cutoff) {
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("residual_curve: schedule must be increasing");
    if (!schedule.empty() && schedule.back() > static_cast<int>(set.size()))
        throw std::invalid_argument("residual_curve: schedule exceeds set size");

    const double norm_sq = gauss::inner_product(target, target);
    ResidualCurve curve;
    curve.cutoff = cutoff;
    curve.target_descriptor = "gaussian(A=" + std::to_string(target.amplitude) +
                              ",a=" + std::to_string(target.width) +
                              ",mu=" + std::to_string(target.center) + ")";
    double prev = std::numeric_limits<double>::infinity();
    for (int n : schedule) {
        std::vector<double> nodes(set.points().begin(), set.points().begin() + n);
        GramSystem sys = build_gram(nodes, target, cutoff);
        ProjectionResult res = project(sys, norm_sq);
        if (res.clip > 1e-8)
            throw numerics::QuadratureError("residual_curve: solver breakdown (clip too large)",
                                            res.residual_sq, res.clip);
        if (res.residual_sq > prev + 1e-10)
            throw numerics::QuadratureError("residual_curve: monotonicity violated",
                                            res.residual_sq, res.residual_sq - prev);
        curve.truncations.push_back(n);
        curve.residuals_sq.push_back(res.residual_sq);
        curve.retained_ranks.push_back(res.solve.retained);
        curve.max_clip = std::max(curve.max_clip, res.clip);
        prev = res.residual_sq;
    }
    return curve;
}

PhaseTable phase_transition_experiment(const std::vector<double>& deltas,
                                       const gauss::GaussianFn& target, int n_max,
                                       const std::vector<int>& schedule,
                                       double cutoff) {
    if (n_max < 1) throw std::invalid_argument("phase_transition_experiment: n_max must be >= 1");
    std::vector<int> sched = schedule;
    if (sched.empty() || sched.back() != n_max) sched.push_back(n_max);
    PhaseTable table;
    for (double d : deltas) {
        auto set = sets::generate_sqrt_set(d, sets::SignPattern::symmetric, n_max);
        ResidualCurve curve = residual_curve(set, target, sched, cutoff);
        PhaseRow row;
        row.delta = d;
        row.n_max = n_max;
        row.residual_sq = curve.residuals_sq.back();
        row.retained_rank = curve.retained_ranks.back();
        row.cutoff = cutoff;
        row.clip = curve.max_clip;
        row.curve = std::move(curve);
        table.rows.push_back(std::move(row));
    }
    return table;
}

TransferExperiment l1_transfer_experiment(const sets::DiscreteSet& set, double a,
                                          const gauss::GaussianFn& target,
                                          const std::vector<int>& schedule,
                                          double cutoff) {
    if (a <= 1.0) throw std::invalid_argument("l1_transfer_experiment: need a > 1");
    TransferExperiment exp;
    exp.a = a;
    exp.scaled_delta_factor = a;  // scaling by 1/sqrt(a) multiplies density by a
    exp.original = residual_curve(set, target, schedule, cutoff);
    exp.scaled = residual_curve(sets::scale(set, 1.0 / std::sqrt(a)), target, schedule, cutoff);
    return exp;
}

}  // namespace lab::completeness
