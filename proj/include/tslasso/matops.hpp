#pragma once

#include <cstdint>
#include <vector>

#include "tslasso/matrix.hpp"

namespace tslasso {

struct SpectralInfo {
    double radius = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct MatrixNorms {
    double frobenius = 0.0;
    double op_infinity_entrywise = 0.0;  // max_ij |m_ij|
    double l1_vec = 0.0;
    double l2_vec = 0.0;  // equals frobenius
};

/// Spectral radius via power iteration with a two-step quadratic fit, so a
/// dominant complex-conjugate (or +/-r) pair is handled without complex
/// arithmetic. Restarts from a fresh random vector on stagnation (3 tries).
/// |radius - r(m)| <= tol only when converged is set; inputs whose leading
/// eigenvalues are three-way ties can legitimately come back unconverged.
SpectralInfo spectral_radius(const Matrix& m, double tol = 1e-10, int max_iter = 10000);

/// Solves sigma = a sigma a' + q for stable a (r(a) < 1) by summing the
/// series sum_k a^k q (a')^k until the next term falls below tol in the
/// entrywise max norm, which bounds the residual ||sigma - a sigma a' - q||_inf.
Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q, double tol = 1e-12);

/// (1/T) sum_t x_t x_{t+lag}' over the valid range; normalization is by T
/// (not T - |lag|), so lag 0 is exactly X'X / T.
Matrix empirical_autocovariance(const Matrix& x, long lag);

double soft_threshold(double z, double lam);

MatrixNorms norms(const Matrix& m);

/// Cholesky factor L (lower) of a symmetric positive definite matrix.
/// Throws std::runtime_error when the matrix is not PD.
Matrix cholesky(const Matrix& m);

/// Solves m * x = rhs for symmetric positive definite m via Cholesky.
Matrix solve_spd(const Matrix& m, const Matrix& rhs);

/// All eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
/// Only used for symmetric inputs (Gram / covariance matrices).
std::vector<double> symmetric_eigenvalues(const Matrix& m, double tol = 1e-12);

}  // namespace tslasso
