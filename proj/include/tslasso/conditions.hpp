#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tslasso/dgm.hpp"
#include "tslasso/lasso.hpp"
#include "tslasso/matrix.hpp"

namespace tslasso {

/// Outcome of the randomized RE falsification. min_margin is the smallest
/// v' Gram v - alpha ||v||_2^2 + tau ||v||_1^2 over all probes; pass iff it
/// is nonnegative. A one-sided check: it can falsify RE, never prove it.
struct ReCertificate {
    double alpha = 0.0;
    double tau = 0.0;
    std::size_t probes_used = 0;
    double min_margin = 0.0;
    bool pass = false;
    std::optional<std::vector<double>> falsified_by;
};

struct ReProbeOptions {
    /// Sparse probes draw their support size uniformly from
    /// {1, ..., min(2 * s_hint, p)}; 0 means "use p".
    std::size_t s_hint = 0;
    /// When set, adds random sign-flip probes on the rows touched by the
    /// support of Theta*.
    const CoefficientMatrix* theta_star = nullptr;
};

ReCertificate check_re_gram(const Matrix& gram, double alpha, double tau, std::size_t n_probes,
                            std::uint64_t seed, const ReProbeOptions& options = {});
ReCertificate check_re(const TimeSeriesSample& sample, double alpha, double tau,
                       std::size_t n_probes, std::uint64_t seed,
                       const ReProbeOptions& options = {});

double re_margin(const Matrix& gram, const std::vector<double>& v, double alpha, double tau);

struct DbRate {
    bool gaussian = true;     // gaussian: rate scaled by the S_alpha(T) proxy
    double s_alpha = 1.0;
};

struct DbCertificate {
    double lhs = 0.0;    // (1/T) |||X'W|||_inf
    double bound = 0.0;  // q_mult * rate
    double rate = 0.0;
    bool pass = false;
};

DbCertificate check_db(const TimeSeriesSample& sample, const CoefficientMatrix& theta_star,
                       double q_mult, const DbRate& rate_mode = {});

/// Master theorem bound evaluation: l2_bound = 4 sqrt(s) lambda / alpha,
/// pred_bound = 32 lambda^2 s / alpha, premise_ok = (alpha >= 32 s tau).
/// qr_surrogate, when supplied, gates lambda_ok = (lambda >= 4 * qr_surrogate).
struct BoundReport {
    double l2_bound = 0.0;
    double pred_bound = 0.0;
    bool premise_ok = false;
    bool lambda_ok = false;
};

BoundReport master_bounds(std::size_t s, double lambda, double alpha, double tau,
                          double qr_surrogate = 0.0);

/// Inputs to the alpha-mixing Gaussian corollary. The operator norms and
/// lambda_min refer to Sigma_X / Sigma_Y; c_re is the universal constant in
/// the Gaussian RE bound, c_tilde the one in the deviation bound.
struct GaussianCorollaryInputs {
    double sigma_x_op = 1.0;
    double sigma_y_op = 1.0;
    double max_col_theta_sq = 0.0;  // max_i ||Theta*_{:i}||_2^2
    double s_alpha = 1.0;           // S_alpha(T) proxy, user supplied
    double b_param = 1.0;
    double c_tilde = 1.0;
    double c_re = 1.0;
    double lambda_min_x = 1.0;
    std::size_t s = 1;
    std::size_t p = 1, q = 1, t_count = 1;
};

struct GaussianCorollary {
    double q_mult = 0.0;   // 8 pi sqrt((b+1)/c_tilde) (op_x (1 + max col) + op_y)
    double rate = 0.0;     // S_alpha(T) sqrt(log(pq)/T)
    double lambda_t = 0.0; // 4 Q R
    double alpha = 0.0;    // lambda_min / 2
    double eta = 0.0;
    bool t_re_ok = false;  // T >= log(p) max{42e, 128 s} / (c_re min{1, eta^2})
    bool t_db_ok = false;  // T >= log(pq) sqrt((b+1)/c_tilde)
};

GaussianCorollary corollary_gaussian(const GaussianCorollaryInputs& in);

struct SubweibullCorollaryInputs {
    double k_x = 1.0;
    double k_y = 1.0;
    double theta_op = 0.0;  // |||Theta*|||
    double gamma1 = 1.0;
    double gamma2 = 2.0;
    double c_mix = 1.0;     // beta-mixing decay constant (reported back only)
    double c1 = 1.0;        // fit-or-supply constants of the concentration lemma
    double c2 = 1.0;
    double lambda_min_x = 1.0;
    std::size_t s = 1;
    std::size_t p = 1, q = 1, t_count = 1;
};

struct SubweibullCorollary {
    double k_factor = 0.0;   // 2^{2/gamma2} (K_Y + K_X (1 + |||Theta*|||))^2
    double gamma = 0.0;
    double lambda_t = 0.0;   // 4 C2 K sqrt(log(pq)/T)
    double c_tilde = 0.0;
    bool gamma_lt_one = false;
    bool t_db_ok = false;    // T >= C1 (log pq)^{2/gamma - 1}
    bool t_re_k_ok = false;  // T >= 54 K (2 max{8s/c_tilde, C1} log p)^{1/gamma} / lambda_min
    bool t_re_tail_ok = false;
};

SubweibullCorollary corollary_subweibull(const SubweibullCorollaryInputs& in);

/// Monte-Carlo check of the Hanson-Wright variant
///   P[(1/n)|  ||Y||^2 - E||Y||^2 | > eta |||Q|||] <= 2 exp(-c n min{eta, eta^2})
/// for Y ~ N(0, Q). c_hat is the largest grid value of c for which the
/// bound dominates the empirical exceedance at every eta.
struct HansonWrightRow {
    double eta = 0.0;
    double exceed_freq = 0.0;
    double bound = 0.0;  // at c_hat
};

struct HansonWrightTable {
    std::vector<HansonWrightRow> rows;
    double c_hat = 0.0;
    double q_op_norm = 0.0;
    bool dominated = false;
};

HansonWrightTable validate_hanson_wright(std::size_t n, const Matrix& q_cov,
                                         const std::vector<double>& eta_grid, std::size_t n_mc,
                                         std::uint64_t seed);

/// Monte-Carlo check of the beta-mixing Bernstein bound
///   P[|S_T/T| > t] <= T exp(-(tT)^gamma / (K^gamma C1)) + exp(-t^2 T / (K^2 C2))
/// on the scalar functional v'X_t of a simulated process. gamma here is the
/// lemma's linear composition (1/gamma1 + 1/gamma2)^{-1}. C1 = C2 = the
/// smallest shared grid value for which the bound dominates everywhere.
struct BernsteinRow {
    double t = 0.0;
    double exceed_freq = 0.0;
    double bound = 0.0;  // at (c1_hat, c2_hat)
};

struct BernsteinTable {
    std::vector<BernsteinRow> rows;
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    double gamma = 0.0;
    bool dominated = false;
};

BernsteinTable validate_beta_bernstein(const DgmSpec& spec, std::size_t t_count,
                                       const std::vector<double>& t_grid, std::size_t n_mc,
                                       double gamma1, double gamma2, double k_norm,
                                       std::uint64_t seed,
                                       const std::vector<double>* direction = nullptr);

}  // namespace tslasso
