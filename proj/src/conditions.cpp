#include "tslasso/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "tslasso/matops.hpp"
#include "tslasso/rng.hpp"
#include "tslasso/tails.hpp"

namespace tslasso {

namespace {

void normalize(std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    if (n > 0.0)
        for (double& x : v) x /= n;
}

double log_pq(std::size_t p, std::size_t q) {
    return std::log(static_cast<double>(p) * static_cast<double>(q));
}

}  // namespace

double re_margin(const Matrix& gram, const std::vector<double>& v, double alpha, double tau) {
    const std::size_t p = gram.rows();
    if (v.size() != p) throw std::invalid_argument("re_margin: dimension mismatch");
    double quad = 0.0, l2 = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) s += gram(i, j) * v[j];
        quad += v[i] * s;
        l2 += v[i] * v[i];
        l1 += std::fabs(v[i]);
    }
    return quad - alpha * l2 + tau * l1 * l1;
}

ReCertificate check_re_gram(const Matrix& gram, double alpha, double tau, std::size_t n_probes,
                            std::uint64_t seed, const ReProbeOptions& options) {
    if (!gram.square()) throw std::invalid_argument("check_re: gram must be square");
    if (!(alpha > 0.0)) throw std::invalid_argument("check_re: alpha must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("check_re: tau must be >= 0");
    if (n_probes < 1) throw std::invalid_argument("check_re: n_probes must be >= 1");

    const std::size_t p = gram.rows();
    Rng rng(seed);
    ReCertificate cert;
    cert.alpha = alpha;
    cert.tau = tau;
    cert.min_margin = std::numeric_limits<double>::infinity();

    auto consider = [&](const std::vector<double>& v) {
        const double m = re_margin(gram, v, alpha, tau);
        ++cert.probes_used;
        if (m < cert.min_margin) {
            cert.min_margin = m;
            if (m < 0.0) cert.falsified_by = v;
        }
    };

    // All standard basis vectors.
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<double> v(p, 0.0);
        v[i] = 1.0;
        consider(v);
    }

    // Random sparse unit probes.
    const std::size_t s_cap =
        options.s_hint == 0 ? p : std::min<std::size_t>(2 * options.s_hint, p);
    for (std::size_t k = 0; k < n_probes; ++k) {
        const std::size_t nnz = 1 + rng.uniform_index(s_cap);
        std::set<std::size_t> support;
        while (support.size() < nnz) support.insert(rng.uniform_index(p));
        std::vector<double> v(p, 0.0);
        for (std::size_t idx : support) v[idx] = rng.normal();
        normalize(v);
        consider(v);
    }

    // Dense Gaussian unit probes.
    for (std::size_t k = 0; k < n_probes; ++k) {
        std::vector<double> v(p);
        for (double& x : v) x = rng.normal();
        normalize(v);
        consider(v);
    }

    // Sign-flip probes on the rows touched by the support of Theta*.
    if (options.theta_star != nullptr && !options.theta_star->support.empty()) {
        std::set<std::size_t> rows;
        for (const auto& [i, j] : options.theta_star->support) rows.insert(i);
        std::vector<std::size_t> row_list(rows.begin(), rows.end());
        for (std::size_t k = 0; k < n_probes; ++k) {
            std::vector<double> v(p, 0.0);
            for (std::size_t idx : row_list) v[idx] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
            normalize(v);
            consider(v);
        }
    }

    cert.pass = cert.min_margin >= 0.0;
    return cert;
}

ReCertificate check_re(const TimeSeriesSample& sample, double alpha, double tau,
                       std::size_t n_probes, std::uint64_t seed, const ReProbeOptions& options) {
    return check_re_gram(empirical_autocovariance(sample.x, 0), alpha, tau, n_probes, seed,
                         options);
}

DbCertificate check_db(const TimeSeriesSample& sample, const CoefficientMatrix& theta_star,
                       double q_mult, const DbRate& rate_mode) {
    if (!(q_mult >= 0.0)) throw std::invalid_argument("check_db: q_mult must be >= 0");
    DbCertificate cert;
    cert.lhs = lambda_oracle(sample, theta_star) / 4.0;
    cert.rate = std::sqrt(log_pq(sample.x.cols(), sample.y.cols()) /
                          static_cast<double>(sample.x.rows()));
    if (rate_mode.gaussian) cert.rate *= rate_mode.s_alpha;
    cert.bound = q_mult * cert.rate;
    cert.pass = cert.lhs <= cert.bound;
    return cert;
}

BoundReport master_bounds(std::size_t s, double lambda, double alpha, double tau,
                          double qr_surrogate) {
    if (!(alpha > 0.0)) throw std::invalid_argument("master_bounds: alpha must be > 0");
    BoundReport out;
    const double sd = static_cast<double>(s);
    out.l2_bound = 4.0 * std::sqrt(sd) * lambda / alpha;
    out.pred_bound = 32.0 * lambda * lambda * sd / alpha;
    out.premise_ok = alpha >= 32.0 * sd * tau;
    out.lambda_ok = lambda >= 4.0 * qr_surrogate;
    return out;
}

GaussianCorollary corollary_gaussian(const GaussianCorollaryInputs& in) {
    if (!(in.c_tilde > 0.0) || !(in.c_re > 0.0) || !(in.b_param > 0.0) || !(in.s_alpha > 0.0) ||
        !(in.sigma_x_op > 0.0) || !(in.lambda_min_x > 0.0))
        throw std::invalid_argument("corollary_gaussian: scale inputs must be positive");
    GaussianCorollary out;
    const double pi = 3.141592653589793238462643383279502884;
    out.q_mult = 8.0 * pi * std::sqrt((in.b_param + 1.0) / in.c_tilde) *
                 (in.sigma_x_op * (1.0 + in.max_col_theta_sq) + in.sigma_y_op);
    out.rate = in.s_alpha * std::sqrt(log_pq(in.p, in.q) / static_cast<double>(in.t_count));
    out.lambda_t = 4.0 * out.q_mult * out.rate;
    out.alpha = 0.5 * in.lambda_min_x;
    out.eta = in.lambda_min_x / (108.0 * pi * in.s_alpha * in.sigma_x_op);
    const double eta2 = std::min(1.0, out.eta * out.eta);
    const double log_p = std::log(static_cast<double>(in.p));
    const double t_re = log_p / (in.c_re * eta2) *
                        std::max(42.0 * std::exp(1.0), 128.0 * static_cast<double>(in.s));
    const double t_db = log_pq(in.p, in.q) * std::sqrt((in.b_param + 1.0) / in.c_tilde);
    out.t_re_ok = static_cast<double>(in.t_count) >= t_re;
    out.t_db_ok = static_cast<double>(in.t_count) >= t_db;
    return out;
}

SubweibullCorollary corollary_subweibull(const SubweibullCorollaryInputs& in) {
    if (!(in.k_x >= 0.0) || !(in.k_y >= 0.0) || !(in.theta_op >= 0.0) || !(in.c1 > 0.0) ||
        !(in.c2 > 0.0) || !(in.lambda_min_x > 0.0))
        throw std::invalid_argument("corollary_subweibull: bad inputs");
    SubweibullCorollary out;
    const GammaComposition comp = compose_gamma(in.gamma1, in.gamma2);
    out.gamma = comp.gamma;
    out.gamma_lt_one = comp.assumption_gamma_lt_one;
    out.k_factor = std::pow(2.0, 2.0 / in.gamma2) *
                   std::pow(in.k_y + in.k_x * (1.0 + in.theta_op), 2.0);
    out.lambda_t =
        4.0 * in.c2 * out.k_factor * std::sqrt(log_pq(in.p, in.q) / static_cast<double>(in.t_count));
    out.c_tilde = std::pow(in.lambda_min_x, out.gamma) /
                  (std::pow(54.0 * out.k_factor, out.gamma) * 2.0 * in.c1);

    const double td = static_cast<double>(in.t_count);
    const double lpq = log_pq(in.p, in.q);
    const double lp = std::log(static_cast<double>(in.p));
    out.t_db_ok = td >= in.c1 * std::pow(lpq, 2.0 / out.gamma - 1.0);
    const double inner = 2.0 * std::max(8.0 * static_cast<double>(in.s) / out.c_tilde, in.c1) * lp;
    out.t_re_k_ok =
        td >= 54.0 * out.k_factor * std::pow(inner, 1.0 / out.gamma) / in.lambda_min_x;
    if (out.gamma < 1.0) {
        out.t_re_tail_ok =
            td >= std::pow(54.0 * out.k_factor / in.lambda_min_x, (2.0 - out.gamma) / (1.0 - out.gamma)) *
                      std::pow(in.c2 / in.c1, 1.0 / (1.0 - out.gamma));
    } else {
        out.t_re_tail_ok = false;  // threshold undefined outside gamma < 1
    }
    return out;
}

HansonWrightTable validate_hanson_wright(std::size_t n, const Matrix& q_cov,
                                         const std::vector<double>& eta_grid, std::size_t n_mc,
                                         std::uint64_t seed) {
    if (q_cov.rows() != n || q_cov.cols() != n)
        throw std::invalid_argument("validate_hanson_wright: Q must be n x n");
    if (eta_grid.empty() || n_mc == 0)
        throw std::invalid_argument("validate_hanson_wright: empty grid or n_mc = 0");
    const std::vector<double> eig = symmetric_eigenvalues(q_cov);
    if (eig.front() < -1e-10 * std::max(1.0, q_cov.max_abs()))
        throw std::invalid_argument("validate_hanson_wright: Q must be positive semidefinite");

    HansonWrightTable table;
    table.q_op_norm = std::max(std::fabs(eig.front()), std::fabs(eig.back()));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += q_cov(i, i);

    // Draw Y = L g; a PSD-but-singular Q gets a tiny ridge for factoring.
    Matrix l;
    try {
        l = cholesky(q_cov);
    } catch (const std::runtime_error&) {
        Matrix ridged = q_cov;
        const double eps = 1e-12 * std::max(1.0, table.q_op_norm);
        for (std::size_t i = 0; i < n; ++i) ridged(i, i) += eps;
        l = cholesky(ridged);
    }

    Rng rng(seed);
    std::vector<std::size_t> exceed(eta_grid.size(), 0);
    std::vector<double> g(n), y(n);
    for (std::size_t rep = 0; rep < n_mc; ++rep) {
        for (double& x : g) x = rng.normal();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += l(i, j) * g[j];
            y[i] = s;
        }
        double sq = 0.0;
        for (double v : y) sq += v * v;
        const double dev = std::fabs(sq - trace) / static_cast<double>(n);
        for (std::size_t k = 0; k < eta_grid.size(); ++k)
            if (dev > eta_grid[k] * table.q_op_norm) ++exceed[k];
    }

    table.rows.resize(eta_grid.size());
    for (std::size_t k = 0; k < eta_grid.size(); ++k) {
        table.rows[k].eta = eta_grid[k];
        table.rows[k].exceed_freq =
            static_cast<double>(exceed[k]) / static_cast<double>(n_mc);
    }

    // Largest c on the 0.01 grid for which the bound dominates everywhere.
    auto dominated_at = [&](double c) {
        for (const auto& row : table.rows) {
            const double bound =
                2.0 * std::exp(-c * static_cast<double>(n) * std::min(row.eta, row.eta * row.eta));
            if (row.exceed_freq > bound) return false;
        }
        return true;
    };
    for (int k = 1; k <= 1000; ++k) {
        const double c = 0.01 * k;
        if (dominated_at(c))
            table.c_hat = c;
        else
            break;
    }
    table.dominated = table.c_hat > 0.0;
    for (auto& row : table.rows)
        row.bound = 2.0 * std::exp(-table.c_hat * static_cast<double>(n) *
                                   std::min(row.eta, row.eta * row.eta));
    return table;
}

BernsteinTable validate_beta_bernstein(const DgmSpec& spec, std::size_t t_count,
                                       const std::vector<double>& t_grid, std::size_t n_mc,
                                       double gamma1, double gamma2, double k_norm,
                                       std::uint64_t seed, const std::vector<double>* direction) {
    if (t_count <= 4) throw std::invalid_argument("validate_beta_bernstein: need T > 4");
    if (t_grid.empty() || n_mc == 0)
        throw std::invalid_argument("validate_beta_bernstein: empty grid or n_mc = 0");
    for (double t : t_grid)
        if (!(t > 1.0 / static_cast<double>(t_count)))
            throw std::invalid_argument("validate_beta_bernstein: grid values must exceed 1/T");
    if (!(k_norm > 0.0)) throw std::invalid_argument("validate_beta_bernstein: K must be > 0");

    BernsteinTable table;
    table.gamma = compose_gamma(gamma1, gamma2).gamma_linear;

    validate_spec(spec);
    std::vector<std::size_t> exceed(t_grid.size(), 0);
    for (std::size_t rep = 0; rep < n_mc; ++rep) {
        const TimeSeriesSample sample =
            simulate(spec, t_count, kDefaultBurnIn, derive_seed(seed, rep));
        const std::size_t p = sample.x.cols();
        std::vector<double> v(p, 0.0);
        if (direction != nullptr) {
            if (direction->size() != p)
                throw std::invalid_argument("validate_beta_bernstein: direction dimension");
            v = *direction;
        } else {
            v[0] = 1.0;
        }
        double sum = 0.0;
        for (std::size_t t = 0; t < t_count; ++t) {
            double proj = 0.0;
            for (std::size_t j = 0; j < p; ++j) proj += v[j] * sample.x(t, j);
            sum += proj;
        }
        const double avg = std::fabs(sum) / static_cast<double>(t_count);
        for (std::size_t k = 0; k < t_grid.size(); ++k)
            if (avg > t_grid[k]) ++exceed[k];
    }

    table.rows.resize(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        table.rows[k].t = t_grid[k];
        table.rows[k].exceed_freq =
            static_cast<double>(exceed[k]) / static_cast<double>(n_mc);
    }

    const double td = static_cast<double>(t_count);
    auto bound_at = [&](double c, double t) {
        const double term1 =
            td * std::exp(-std::pow(t * td, table.gamma) / (std::pow(k_norm, table.gamma) * c));
        const double term2 = std::exp(-t * t * td / (k_norm * k_norm * c));
        return term1 + term2;
    };
    // Smallest shared constant on the 0.05 grid that dominates everywhere;
    // always exists since the bound tends to T + 1 as c grows.
    for (int k = 1; k <= 4000; ++k) {
        const double c = 0.05 * k;
        bool ok = true;
        for (const auto& row : table.rows)
            if (row.exceed_freq > bound_at(c, row.t)) {
                ok = false;
                break;
            }
        if (ok) {
            table.c1_hat = c;
            table.c2_hat = c;
            table.dominated = true;
            break;
        }
    }
    for (auto& row : table.rows)
        row.bound = table.dominated ? bound_at(table.c1_hat, row.t)
                                    : std::numeric_limits<double>::quiet_NaN();
    return table;
}

}  // namespace tslasso
