#include "tslasso/tails.hpp"

#include <cmath>
#include <stdexcept>

#include "tslasso/matops.hpp"

namespace tslasso {

InnovationSpec InnovationSpec::gaussian(Matrix sigma) {
    InnovationSpec s;
    s.kind = InnovationKind::gaussian;
    s.dim = sigma.rows();
    s.sigma_eps = std::move(sigma);
    s.validate();
    return s;
}

InnovationSpec InnovationSpec::gaussian_identity(std::size_t dim) {
    return gaussian(Matrix::identity(dim));
}

InnovationSpec InnovationSpec::uniform(std::size_t dim) {
    InnovationSpec s;
    s.kind = InnovationKind::uniform_isotropic;
    s.dim = dim;
    s.validate();
    return s;
}

InnovationSpec InnovationSpec::weibull(std::size_t dim, double shape, double scale) {
    InnovationSpec s;
    s.kind = InnovationKind::centered_weibull;
    s.dim = dim;
    s.shape = shape;
    s.scale = scale;
    s.validate();
    return s;
}

void InnovationSpec::validate() const {
    if (dim == 0) throw std::invalid_argument("InnovationSpec: dim must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("InnovationSpec: scale must be positive and finite");
    switch (kind) {
        case InnovationKind::gaussian:
            if (!sigma_eps.empty()) {
                if (sigma_eps.rows() != dim || sigma_eps.cols() != dim)
                    throw std::invalid_argument("InnovationSpec: sigma_eps dimension mismatch");
                if (!sigma_eps.is_symmetric(1e-10 * std::max(1.0, sigma_eps.max_abs())))
                    throw std::invalid_argument("InnovationSpec: sigma_eps must be symmetric");
                cholesky(sigma_eps);  // throws unless lambda_min > 0
            }
            break;
        case InnovationKind::uniform_isotropic:
            break;
        case InnovationKind::centered_weibull:
            if (!(shape > 0.0)) throw std::invalid_argument("InnovationSpec: weibull shape must be > 0");
            break;
    }
}

Matrix InnovationSpec::covariance() const {
    Matrix cov;
    switch (kind) {
        case InnovationKind::gaussian:
            cov = sigma_eps.empty() ? Matrix::identity(dim) : sigma_eps;
            break;
        case InnovationKind::uniform_isotropic:
            cov = Matrix::identity(dim);  // Var U(-sqrt3, sqrt3) = 1
            break;
        case InnovationKind::centered_weibull: {
            const double m1 = std::tgamma(1.0 + 1.0 / shape);
            const double m2 = std::tgamma(1.0 + 2.0 / shape);
            cov = Matrix::identity(dim) * (m2 - m1 * m1);
            break;
        }
    }
    return cov * (scale * scale);
}

double InnovationSpec::weibull_mean() const { return std::tgamma(1.0 + 1.0 / shape); }

InnovationSampler::InnovationSampler(InnovationSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.kind == InnovationKind::gaussian && !spec_.sigma_eps.empty())
        chol_ = cholesky(spec_.sigma_eps);
    if (spec_.kind == InnovationKind::centered_weibull)
        weibull_mean_ = spec_.weibull_mean();
}

std::vector<double> InnovationSampler::sample(Rng& rng) const {
    std::vector<double> v(spec_.dim);
    switch (spec_.kind) {
        case InnovationKind::gaussian: {
            if (chol_.empty()) {
                for (auto& x : v) x = rng.normal();
            } else {
                std::vector<double> g(spec_.dim);
                for (auto& x : g) x = rng.normal();
                for (std::size_t i = 0; i < spec_.dim; ++i) {
                    double s = 0.0;
                    for (std::size_t j = 0; j <= i; ++j) s += chol_(i, j) * g[j];
                    v[i] = s;
                }
            }
            break;
        }
        case InnovationKind::uniform_isotropic: {
            const double sqrt3 = std::sqrt(3.0);
            for (auto& x : v) x = rng.uniform(-sqrt3, sqrt3);
            break;
        }
        case InnovationKind::centered_weibull:
            for (auto& x : v) x = rng.weibull(spec_.shape) - weibull_mean_;
            break;
    }
    if (spec_.scale != 1.0)
        for (auto& x : v) x *= spec_.scale;
    return v;
}

std::vector<double> sample_innovation(const InnovationSpec& spec, Rng& rng) {
    return InnovationSampler(spec).sample(rng);
}

GammaComposition compose_gamma(double gamma1, double gamma2) {
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw std::invalid_argument("compose_gamma: exponents must be > 0");
    GammaComposition out;
    out.gamma = 1.0 / (1.0 / gamma1 + 2.0 / gamma2);
    out.gamma_linear = 1.0 / (1.0 / gamma1 + 1.0 / gamma2);
    out.assumption_gamma_lt_one = out.gamma < 1.0;
    return out;
}

SubweibullProfile::SubweibullProfile(double g1, double g2, double kx, double ky)
    : gamma1(g1), gamma2(g2), k_x(kx), k_y(ky) {
    if (!(kx >= 0.0) || !(ky >= 0.0))
        throw std::invalid_argument("SubweibullProfile: norm bounds must be >= 0");
    const GammaComposition c = compose_gamma(g1, g2);
    gamma = c.gamma;
    assumption_gamma_lt_one = c.assumption_gamma_lt_one;
}

double estimate_subweibull_norm(const std::vector<double>& samples, double gamma,
                                std::size_t p_max) {
    if (samples.empty()) throw std::invalid_argument("estimate_subweibull_norm: empty sample");
    if (!(gamma > 0.0)) throw std::invalid_argument("estimate_subweibull_norm: gamma must be > 0");
    if (p_max < 1) throw std::invalid_argument("estimate_subweibull_norm: p_max must be >= 1");

    // Normalize by a power of two so the estimate is exactly equivariant
    // under power-of-two rescaling of the sample (and numerically stable
    // for high moments).
    double max_abs = 0.0;
    for (double x : samples) max_abs = std::max(max_abs, std::fabs(x));
    if (max_abs == 0.0) return 0.0;
    int exp2 = 0;
    std::frexp(max_abs, &exp2);
    const double scale = std::ldexp(1.0, exp2);  // smallest power of two >= max_abs

    const std::size_t n = samples.size();
    std::vector<double> moment_sums(p_max, 0.0);
    for (double x : samples) {
        const double y = std::fabs(x) / scale;  // exact: scale is a power of two
        double pw = 1.0;
        for (std::size_t p = 0; p < p_max; ++p) {
            pw *= y;
            moment_sums[p] += pw;
        }
    }
    double best = 0.0;
    for (std::size_t p = 1; p <= p_max; ++p) {
        const double mean = moment_sums[p - 1] / static_cast<double>(n);
        const double value = std::pow(mean, 1.0 / static_cast<double>(p)) *
                             std::pow(static_cast<double>(p), -1.0 / gamma);
        best = std::max(best, value);
    }
    return best * scale;
}

double square_norm_bound(double norm_2gamma, double gamma) {
    if (!(norm_2gamma >= 0.0) || !(gamma > 0.0))
        throw std::invalid_argument("square_norm_bound: bad arguments");
    return std::pow(2.0, 1.0 / gamma) * norm_2gamma * norm_2gamma;
}

double linear_map_norm_bound(double op_norm, double vec_norm) {
    if (!(op_norm >= 0.0) || !(vec_norm >= 0.0))
        throw std::invalid_argument("linear_map_norm_bound: bad arguments");
    return op_norm * vec_norm;
}

}  // namespace tslasso
