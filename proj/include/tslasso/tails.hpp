#pragma once

#include <cstddef>
#include <vector>

#include "tslasso/matrix.hpp"
#include "tslasso/rng.hpp"

namespace tslasso {

enum class InnovationKind { gaussian, uniform_isotropic, centered_weibull };

/// Innovation distribution for the generators. All three kinds are mean
/// zero; uniform_isotropic has unit variance per coordinate, and the
/// Weibull kind subtracts its mean Gamma(1 + 1/shape) so the standing
/// zero-mean assumption holds. `scale` multiplies the sampled vector
/// (default 1; the simulation studies use it for the c * eps_t noise).
struct InnovationSpec {
    InnovationKind kind = InnovationKind::gaussian;
    std::size_t dim = 1;
    Matrix sigma_eps;     // gaussian only; defaults to identity when empty
    double shape = 1.0;   // centered_weibull only
    double scale = 1.0;

    static InnovationSpec gaussian(Matrix sigma);
    static InnovationSpec gaussian_identity(std::size_t dim);
    static InnovationSpec uniform(std::size_t dim);
    static InnovationSpec weibull(std::size_t dim, double shape, double scale = 1.0);

    void validate() const;
    /// Per-coordinate covariance of the sampled vector (includes scale^2).
    Matrix covariance() const;
    double weibull_mean() const;  // Gamma(1 + 1/shape)
};

/// Pre-factored sampler; construct once, then draw per step.
class InnovationSampler {
public:
    explicit InnovationSampler(InnovationSpec spec);
    std::vector<double> sample(Rng& rng) const;
    const InnovationSpec& spec() const { return spec_; }

private:
    InnovationSpec spec_;
    Matrix chol_;         // gaussian only
    double weibull_mean_ = 0.0;
};

std::vector<double> sample_innovation(const InnovationSpec& spec, Rng& rng);

/// gamma = (1/gamma1 + 2/gamma2)^(-1), the exponent that governs squared
/// subweibull variables in the mixing bounds; gamma_linear is the plain
/// (1/gamma1 + 1/gamma2)^(-1) composition used by the concentration lemma
/// before squaring.
struct GammaComposition {
    double gamma = 0.0;
    double gamma_linear = 0.0;
    bool assumption_gamma_lt_one = false;  // recorded, not enforced
};

GammaComposition compose_gamma(double gamma1, double gamma2);

struct SubweibullProfile {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma = 0.0;  // composed, always (1/g1 + 2/g2)^(-1)
    double k_x = 0.0;
    double k_y = 0.0;
    bool assumption_gamma_lt_one = false;

    SubweibullProfile() = default;
    SubweibullProfile(double g1, double g2, double kx, double ky);
};

/// Plug-in estimate of the subweibull(gamma) norm
/// sup_p (E|X|^p)^{1/p} p^{-1/gamma}, with the sup restricted to integer
/// p in [1, p_max]. Downward biased: both the truncation and the
/// empirical moments bias the sup down.
double estimate_subweibull_norm(const std::vector<double>& samples, double gamma,
                                std::size_t p_max = 20);

/// ||X^2||_{psi_gamma} <= 2^{1/gamma} ||X||_{psi_{2 gamma}}^2.
double square_norm_bound(double norm_2gamma, double gamma);

/// ||A X||_{psi_gamma} <= |||A||| ||X||_{psi_gamma}.
double linear_map_norm_bound(double op_norm, double vec_norm);

}  // namespace tslasso
