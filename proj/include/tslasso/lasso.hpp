#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tslasso/dgm.hpp"
#include "tslasso/matrix.hpp"

namespace tslasso {

struct LassoConfig {
    double lambda = 0.0;
    int max_sweeps = 10000;
    double kkt_tol = 1e-8;
    std::optional<Matrix> warm_start;
    bool record_objective_path = false;
};

struct LassoFit {
    CoefficientMatrix theta_hat;
    int sweeps_used = 0;          // max over response columns
    double kkt_residual = 0.0;    // max over response columns
    double objective = 0.0;       // (1/T)||vec(Y - X Theta)||^2 + lambda ||vec(Theta)||_1
    bool converged = false;
    /// Coordinates pinned to zero because their design column has zero
    /// variance (undefined coordinate minimum at lambda = 0).
    std::vector<std::pair<std::size_t, std::size_t>> pinned;
    /// Per-column objective after each sweep; filled when
    /// record_objective_path is set.
    std::vector<std::vector<double>> objective_paths;
};

struct ErrorReport {
    double l2_vec_error = 0.0;
    double frobenius_error = 0.0;  // same quantity as l2_vec_error
    double in_sample_pred_error = 0.0;
};

/// Multi-response lasso
///   argmin_B (1/T) ||vec(Y - X B)||_2^2 + lambda ||vec(B)||_1
/// by cyclic coordinate descent run independently on each response column
/// (the objective separates across columns). Coordinate updates follow the
/// (1/T)-scaled objective: beta_j <- S((2/T) x_j' r_{+j}, lambda) / ((2/T)||x_j||^2).
/// Terminates when the KKT subgradient residual falls below kkt_tol.
LassoFit fit(const Matrix& x, const Matrix& y, const LassoConfig& config);
LassoFit fit(const TimeSeriesSample& sample, const LassoConfig& config);

/// c_lambda * sqrt(log(pq) / T), the corollaries' rate with the unknown
/// universal multiplier exposed as a knob.
double lambda_theory(std::size_t p, std::size_t q, std::size_t t_count, double c_lambda);

/// 4 * (1/T) |||X'W|||_inf with W = Y - X Theta*, the empirical
/// instantiation of the master theorem's lambda premise.
double lambda_oracle(const TimeSeriesSample& sample, const CoefficientMatrix& theta_star);
double lambda_oracle(const Matrix& x, const Matrix& y, const Matrix& theta_star);

ErrorReport errors(const LassoFit& fit, const CoefficientMatrix& theta_star,
                   const TimeSeriesSample& sample);
ErrorReport errors(const Matrix& theta_hat, const Matrix& theta_star, const Matrix& x);

}  // namespace tslasso
