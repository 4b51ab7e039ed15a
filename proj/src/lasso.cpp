#include "tslasso/lasso.hpp"

#include <cmath>
#include <stdexcept>

#include "tslasso/matops.hpp"

namespace tslasso {

namespace {

struct ColumnFit {
    std::vector<double> beta;
    int sweeps = 0;
    double kkt_residual = 0.0;
    double objective = 0.0;
    bool converged = false;
    std::vector<std::size_t> pinned_rows;
    std::vector<double> objective_path;
};

// Single-response cyclic coordinate descent on precomputed Gram data:
// g = (2/T) X'X, b = (2/T) X'y, y_sq = (1/T) y'y.
ColumnFit fit_column(const Matrix& g, const std::vector<double>& b, double y_sq,
                     const LassoConfig& config, const std::vector<double>* warm) {
    const std::size_t p = b.size();
    ColumnFit out;
    out.beta.assign(p, 0.0);
    std::vector<double> gb(p, 0.0);  // g * beta, maintained incrementally

    for (std::size_t j = 0; j < p; ++j) {
        if (g(j, j) == 0.0) out.pinned_rows.push_back(j);
    }
    if (warm) {
        for (std::size_t j = 0; j < p; ++j) {
            if (g(j, j) == 0.0) continue;  // pinned coordinates stay at zero
            const double w = (*warm)[j];
            if (w == 0.0) continue;
            out.beta[j] = w;
            for (std::size_t k = 0; k < p; ++k) gb[k] += w * g(k, j);
        }
    }

    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        out.sweeps = sweep;
        for (std::size_t j = 0; j < p; ++j) {
            const double gjj = g(j, j);
            if (gjj == 0.0) continue;
            const double z = b[j] - gb[j] + gjj * out.beta[j];
            const double beta_new = soft_threshold(z, config.lambda) / gjj;
            const double delta = beta_new - out.beta[j];
            if (delta != 0.0) {
                out.beta[j] = beta_new;
                for (std::size_t k = 0; k < p; ++k) gb[k] += delta * g(k, j);
            }
        }

        double kkt = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            if (g(j, j) == 0.0) continue;
            const double grad = b[j] - gb[j];  // (2/T) x_j' r
            const double viol = out.beta[j] == 0.0
                                    ? std::max(0.0, std::fabs(grad) - config.lambda)
                                    : std::fabs(grad - config.lambda * (out.beta[j] > 0.0 ? 1.0 : -1.0));
            kkt = std::max(kkt, viol);
        }
        out.kkt_residual = kkt;

        if (config.record_objective_path) {
            double quad = 0.0, l1 = 0.0, lin = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                quad += out.beta[j] * gb[j];
                lin += b[j] * out.beta[j];
                l1 += std::fabs(out.beta[j]);
            }
            out.objective_path.push_back(y_sq - lin + 0.5 * quad + config.lambda * l1);
        }

        if (kkt <= config.kkt_tol) {
            out.converged = true;
            break;
        }
    }

    double quad = 0.0, l1 = 0.0, lin = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        quad += out.beta[j] * gb[j];
        lin += b[j] * out.beta[j];
        l1 += std::fabs(out.beta[j]);
    }
    out.objective = y_sq - lin + 0.5 * quad + config.lambda * l1;
    return out;
}

}  // namespace

LassoFit fit(const Matrix& x, const Matrix& y, const LassoConfig& config) {
    const std::size_t t_count = x.rows();
    const std::size_t p = x.cols();
    const std::size_t q = y.cols();
    if (t_count == 0 || y.rows() != t_count)
        throw std::invalid_argument("lasso fit: X and Y must share T >= 1 rows");
    if (!(config.lambda >= 0.0)) throw std::invalid_argument("lasso fit: lambda must be >= 0");
    if (!(config.kkt_tol > 0.0)) throw std::invalid_argument("lasso fit: kkt_tol must be > 0");
    if (config.max_sweeps < 1) throw std::invalid_argument("lasso fit: max_sweeps must be >= 1");
    if (!x.all_finite() || !y.all_finite())
        throw std::invalid_argument("lasso fit: non-finite input");
    if (config.warm_start &&
        (config.warm_start->rows() != p || config.warm_start->cols() != q))
        throw std::invalid_argument("lasso fit: warm start shape mismatch");

    const double two_over_t = 2.0 / static_cast<double>(t_count);
    Matrix g(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < t_count; ++t) s += x(t, i) * x(t, j);
            g(i, j) = two_over_t * s;
            g(j, i) = g(i, j);
        }

    LassoFit result;
    Matrix theta(p, q);
    for (std::size_t col = 0; col < q; ++col) {
        std::vector<double> b(p, 0.0);
        double y_sq = 0.0;
        for (std::size_t t = 0; t < t_count; ++t) y_sq += y(t, col) * y(t, col);
        y_sq /= static_cast<double>(t_count);
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < t_count; ++t) s += x(t, j) * y(t, col);
            b[j] = two_over_t * s;
        }
        std::vector<double> warm;
        if (config.warm_start) {
            warm.resize(p);
            for (std::size_t j = 0; j < p; ++j) warm[j] = (*config.warm_start)(j, col);
        }
        ColumnFit cf = fit_column(g, b, y_sq, config, config.warm_start ? &warm : nullptr);
        for (std::size_t j = 0; j < p; ++j) theta(j, col) = cf.beta[j];
        result.sweeps_used = std::max(result.sweeps_used, cf.sweeps);
        result.kkt_residual = std::max(result.kkt_residual, cf.kkt_residual);
        result.objective += cf.objective;
        result.converged = (col == 0 ? cf.converged : result.converged && cf.converged);
        for (std::size_t j : cf.pinned_rows) result.pinned.emplace_back(j, col);
        if (config.record_objective_path)
            result.objective_paths.push_back(std::move(cf.objective_path));
    }
    result.theta_hat = make_coefficient(std::move(theta));
    return result;
}

LassoFit fit(const TimeSeriesSample& sample, const LassoConfig& config) {
    return fit(sample.x, sample.y, config);
}

double lambda_theory(std::size_t p, std::size_t q, std::size_t t_count, double c_lambda) {
    if (p < 1 || q < 1 || t_count < 1)
        throw std::invalid_argument("lambda_theory: p, q, T must be >= 1");
    if (!(c_lambda > 0.0)) throw std::invalid_argument("lambda_theory: c_lambda must be > 0");
    return c_lambda * std::sqrt(std::log(static_cast<double>(p) * static_cast<double>(q)) /
                                static_cast<double>(t_count));
}

double lambda_oracle(const Matrix& x, const Matrix& y, const Matrix& theta_star) {
    if (theta_star.rows() != x.cols() || theta_star.cols() != y.cols() || x.rows() != y.rows())
        throw std::invalid_argument("lambda_oracle: dimension mismatch");
    const std::size_t t_count = x.rows();
    const Matrix w = y - x * theta_star;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < x.cols(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < t_count; ++t) s += x(t, i) * w(t, j);
            max_abs = std::max(max_abs, std::fabs(s));
        }
    return 4.0 * max_abs / static_cast<double>(t_count);
}

double lambda_oracle(const TimeSeriesSample& sample, const CoefficientMatrix& theta_star) {
    return lambda_oracle(sample.x, sample.y, theta_star.values);
}

ErrorReport errors(const Matrix& theta_hat, const Matrix& theta_star, const Matrix& x) {
    if (theta_hat.rows() != theta_star.rows() || theta_hat.cols() != theta_star.cols())
        throw std::invalid_argument("errors: theta shapes differ");
    if (x.cols() != theta_hat.rows()) throw std::invalid_argument("errors: X/theta mismatch");
    const Matrix delta = theta_hat - theta_star;
    ErrorReport out;
    out.l2_vec_error = norms(delta).frobenius;
    out.frobenius_error = out.l2_vec_error;
    const Matrix gram = empirical_autocovariance(x, 0);  // X'X / T
    out.in_sample_pred_error = norms(delta.transpose() * gram * delta).frobenius;
    return out;
}

ErrorReport errors(const LassoFit& fit, const CoefficientMatrix& theta_star,
                   const TimeSeriesSample& sample) {
    return errors(fit.theta_hat.values, theta_star.values, sample.x);
}

}  // namespace tslasso
