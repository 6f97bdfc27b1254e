#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lab/gaussian.hpp"
#include "lab/lambda_sets.hpp"
#include "lab/numerics.hpp"

namespace lab::completeness {

/// Gram matrix of unit Gaussian translates at the given nodes, with the
/// right-hand side of inner products against a target Gaussian.
struct GramSystem {
    std::vector<double> nodes;
    Eigen::MatrixXd gram;
    Eigen::VectorXd rhs;
    double condition_estimate = 0.0;
    int retained_rank = 0;  // at the cutoff used for diagnostics
    double cutoff = 1e-12;
};

GramSystem build_gram(const std::vector<double>& nodes, const gauss::GaussianFn& target,
                      double cutoff = 1e-12);

struct ProjectionResult {
    double residual_sq = 0.0;
    double clip = 0.0;  // amount removed when clipping at 0
    numerics::SpectralSolveReport solve;
};

/// Squared distance of the target from span of the translates:
/// d^2 = ||f||^2 - b^T x with x the truncated spectral solution.
ProjectionResult project(const GramSystem& system, double target_norm_sq);

struct ResidualCurve {
    std::vector<int> truncations;
    std::vector<double> residuals_sq;
    std::vector<int> retained_ranks;
    std::string target_descriptor;
    double cutoff = 1e-12;
    double max_clip = 0.0;
};

/// Residuals against the N smallest-modulus nodes of the set, N running over
/// the schedule. Monotonicity beyond 1e-10 is a solver failure.
ResidualCurve residual_curve(const sets::DiscreteSet& set, const gauss::GaussianFn& target,
                             const std::vector<int>& schedule, double cutoff = 1e-12);

struct PhaseRow {
    double delta = 0.0;
    int n_max = 0;
    double residual_sq = 0.0;
    int retained_rank = 0;
    double cutoff = 0.0;
    double clip = 0.0;
    ResidualCurve curve;
};

struct PhaseTable {
    std::vector<PhaseRow> rows;
};

/// Terminal residuals for symmetric sqrt-grid sets across a density grid.
PhaseTable phase_transition_experiment(const std::vector<double>& deltas,
                                       const gauss::GaussianFn& target, int n_max,
                                       const std::vector<int>& schedule,
                                       double cutoff = 1e-12);

struct TransferExperiment {
    double a = 0.0;
    double scaled_delta_factor = 0.0;  // density multiplier of the 1/sqrt(a) scaling
    ResidualCurve original;
    ResidualCurve scaled;
};

/// Residual curves for Lambda and (1/sqrt(a)) Lambda side by side.
TransferExperiment l1_transfer_experiment(const sets::DiscreteSet& set, double a,
                                          const gauss::GaussianFn& target,
                                          const std::vector<int>& schedule,
                                          double cutoff = 1e-12);

}  // namespace lab::completeness
