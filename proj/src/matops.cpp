#include "tslasso/matops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tslasso/rng.hpp"

namespace tslasso {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

// Largest root modulus of x^2 - a x - b = 0.
double quadratic_root_radius(double a, double b) {
    const double disc = a * a + 4.0 * b;
    if (disc >= 0.0) {
        const double r = std::sqrt(disc);
        return std::max(std::fabs(a + r), std::fabs(a - r)) / 2.0;
    }
    return std::sqrt(-b);  // complex pair; |root|^2 = -b
}

}  // namespace

SpectralInfo spectral_radius(const Matrix& m, double tol, int max_iter) {
    if (!m.square()) throw std::invalid_argument("spectral_radius: matrix must be square");
    if (!m.all_finite()) throw std::invalid_argument("spectral_radius: non-finite entries");
    if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("spectral_radius: bad tol/max_iter");

    SpectralInfo info;
    const std::size_t n = m.rows();
    if (n == 0) {
        info.converged = true;
        return info;
    }

    Rng rng(0x5eed5eedULL);  // fixed stream: the function stays deterministic
    const int restarts = 3;
    const int iters_per_restart = std::max(1, max_iter / restarts);
    double best_estimate = 0.0;

    for (int restart = 0; restart < restarts && !info.converged; ++restart) {
        std::vector<double> v(n);
        for (auto& x : v) x = rng.normal();
        double prev_estimate = -1.0;
        int stable_count = 0;

        for (int it = 0; it < iters_per_restart; ++it) {
            ++info.iterations;
            const double vn = norm2(v);
            if (vn < 1e-290) {
                // Iterates collapsed to zero: nilpotent direction.
                info.radius = 0.0;
                info.converged = true;
                return info;
            }
            for (auto& x : v) x /= vn;
            const std::vector<double> u1 = matvec(m, v);
            const double n1 = norm2(u1);
            if (n1 < 1e-290) {
                info.radius = 0.0;
                info.converged = true;
                return info;
            }

            // Rank-1 fit: u1 ~ c v.
            const double c = dot(u1, v);
            double res1 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = u1[i] - c * v[i];
                res1 += d * d;
            }
            res1 = std::sqrt(res1);
            double estimate;
            double rel_res;
            std::vector<double> u2;
            if (res1 <= 1e-14 * n1) {
                estimate = std::fabs(c);
                rel_res = 0.0;
            } else {
                // Two-step fit: u2 ~ a u1 + b v covers conjugate pairs and +/-r.
                u2 = matvec(m, u1);
                const double g11 = dot(u1, u1);
                const double g10 = dot(u1, v);
                const double r1 = dot(u2, u1);
                const double r0 = dot(u2, v);
                const double det = g11 - g10 * g10;
                double a, b;
                if (std::fabs(det) < 1e-30 * std::max(1.0, g11)) {
                    a = c;
                    b = 0.0;
                } else {
                    a = (r1 - g10 * r0) / det;
                    b = (g11 * r0 - g10 * r1) / det;
                }
                estimate = quadratic_root_radius(a, b);
                double res2 = 0.0;
                const double n2 = norm2(u2);
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = u2[i] - a * u1[i] - b * v[i];
                    res2 += d * d;
                }
                rel_res = n2 > 0.0 ? std::sqrt(res2) / n2 : 0.0;
            }

            best_estimate = estimate;
            const bool residual_ok = rel_res <= std::max(tol, 1e-13);
            const bool stable = prev_estimate >= 0.0 &&
                                std::fabs(estimate - prev_estimate) <= tol * std::max(1.0, estimate);
            stable_count = stable ? stable_count + 1 : 0;
            if (residual_ok && (rel_res <= 1e-14 || stable_count >= 2)) {
                info.radius = estimate;
                info.converged = true;
                return info;
            }
            prev_estimate = estimate;
            v = u2.empty() ? u1 : u2;
        }
    }

    info.radius = best_estimate;
    return info;
}

Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q, double tol) {
    if (!a.square() || !q.square() || a.rows() != q.rows())
        throw std::invalid_argument("solve_discrete_lyapunov: dimension mismatch");
    if (!q.is_symmetric(1e-12 * std::max(1.0, q.max_abs())))
        throw std::invalid_argument("solve_discrete_lyapunov: q must be symmetric");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_discrete_lyapunov: tol must be > 0");

    const SpectralInfo sp = spectral_radius(a);
    if (!sp.converged)
        throw std::runtime_error("solve_discrete_lyapunov: spectral radius of a did not converge");
    if (sp.radius >= 1.0)
        throw std::invalid_argument("solve_discrete_lyapunov: a is not stable (r(a) >= 1)");

    const Matrix at = a.transpose();
    Matrix sigma = q;
    Matrix term = q;
    const int max_terms = 200000;
    for (int k = 0; k < max_terms; ++k) {
        term = a * term * at;
        // Each term is symmetric in exact arithmetic; enforce it.
        for (std::size_t i = 0; i < term.rows(); ++i)
            for (std::size_t j = i + 1; j < term.cols(); ++j) {
                const double s = 0.5 * (term(i, j) + term(j, i));
                term(i, j) = s;
                term(j, i) = s;
            }
        if (term.max_abs() <= tol) return sigma;  // residual of sigma is exactly this term
        sigma = sigma + term;
    }
    throw std::runtime_error("solve_discrete_lyapunov: series did not converge");
}

Matrix empirical_autocovariance(const Matrix& x, long lag) {
    const long t_count = static_cast<long>(x.rows());
    if (std::labs(lag) >= t_count)
        throw std::invalid_argument("empirical_autocovariance: |lag| must be < T");
    const std::size_t p = x.cols();
    Matrix out(p, p);
    const long lo = std::max<long>(0, -lag);
    const long hi = std::min<long>(t_count, t_count - lag);
    for (long t = lo; t < hi; ++t) {
        const std::size_t a = static_cast<std::size_t>(t);
        const std::size_t b = static_cast<std::size_t>(t + lag);
        for (std::size_t i = 0; i < p; ++i) {
            const double xi = x(a, i);
            if (xi == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) out(i, j) += xi * x(b, j);
        }
    }
    const double inv_t = 1.0 / static_cast<double>(t_count);
    for (auto& v : out.data()) v *= inv_t;
    return out;
}

double soft_threshold(double z, double lam) {
    if (!(lam >= 0.0)) throw std::invalid_argument("soft_threshold: lam must be >= 0");
    const double mag = std::fabs(z) - lam;
    if (mag <= 0.0) return 0.0;
    return z > 0.0 ? mag : -mag;
}

MatrixNorms norms(const Matrix& m) {
    MatrixNorms out;
    double sq = 0.0;
    for (double v : m.data()) {
        sq += v * v;
        out.l1_vec += std::fabs(v);
        out.op_infinity_entrywise = std::max(out.op_infinity_entrywise, std::fabs(v));
    }
    out.frobenius = std::sqrt(sq);
    out.l2_vec = out.frobenius;
    return out;
}

Matrix cholesky(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("cholesky: matrix must be square");
    const std::size_t n = m.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("cholesky: matrix is not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Matrix solve_spd(const Matrix& m, const Matrix& rhs) {
    if (m.rows() != rhs.rows()) throw std::invalid_argument("solve_spd: dimension mismatch");
    const Matrix l = cholesky(m);
    const std::size_t n = m.rows();
    Matrix x(rhs.rows(), rhs.cols());
    for (std::size_t col = 0; col < rhs.cols(); ++col) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = rhs(i, col);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x(k, col);
            x(ii, col) = s / l(ii, ii);
        }
    }
    return x;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m, double tol) {
    if (!m.square()) throw std::invalid_argument("symmetric_eigenvalues: matrix must be square");
    const std::size_t n = m.rows();
    Matrix a = m;
    // Symmetrize up front; callers pass Gram/covariance matrices.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = s;
            a(j, i) = s;
        }

    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a(i, j)));
        if (off <= tol * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace tslasso
