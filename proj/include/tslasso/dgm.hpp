#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tslasso/config_text.hpp"
#include "tslasso/matrix.hpp"
#include "tslasso/rng.hpp"
#include "tslasso/tails.hpp"

namespace tslasso {

/// Coefficient matrix with its support; sparsity is the number of
/// nonzero entries of vec(values).
struct CoefficientMatrix {
    Matrix values;
    std::vector<std::pair<std::size_t, std::size_t>> support;
    std::size_t sparsity = 0;
};

CoefficientMatrix make_coefficient(Matrix values);

/// VAR(d) Z_t = A_1 Z_{t-1} + ... + A_d Z_{t-d} + eps_t, Gaussian noise.
struct GaussianVarSpec {
    std::vector<Matrix> coefs;  // A_1..A_d, each p x p
    Matrix sigma_eps;           // empty means identity
};

/// Same recursion with a general innovation distribution.
struct SubweibullVarSpec {
    std::vector<Matrix> coefs;
    InnovationSpec innovation;
};

/// Full (p+1)-dimensional VAR(1) of (Z_t; Xi_t) where the scalar last
/// coordinate Xi is dropped from the observed system. The regression
/// target is the best linear predictor of Z_{t+1} from Z_t, which is no
/// longer the plain A_ZZ block.
struct OmittedVarSpec {
    Matrix a_full;  // (p+1) x (p+1)
    InnovationSpec innovation;

    std::size_t observed_dim() const { return a_full.rows() - 1; }
    Matrix a_zz() const { return a_full.block(0, 0, observed_dim(), observed_dim()); }
    Matrix a_zxi() const { return a_full.block(0, observed_dim(), observed_dim(), 1); }
};

/// Z_t = A Z_{t-1} + c * clip(||Z_{t-1}||^m; lo, hi) * eps_t with
/// clip(x; lo, hi) = min(max(x, lo), hi).
struct ArchSpec {
    Matrix a;
    double c = 1.0;
    double m = 0.5;
    double clip_lo = 0.5;
    double clip_hi = 2.0;
    InnovationSpec innovation;
};

/// The dependence study process: X_0 ~ N(0, I), Y_0 = A X_0 + c eps_0;
/// at each later step the pair is copied with probability rho, otherwise
/// redrawn fresh.
struct CopyDependenceSpec {
    Matrix a;
    double noise_scale = 0.5;
    double rho = 0.0;
    InnovationSpec innovation;
};

using DgmSpec =
    std::variant<GaussianVarSpec, SubweibullVarSpec, OmittedVarSpec, ArchSpec, CopyDependenceSpec>;

struct TimeSeriesSample {
    Matrix x;  // T x p
    Matrix y;  // T x q
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    DgmSpec spec;
};

/// Block companion matrix of (A_1..A_d): coefficients across the top
/// block row, identities on the sub-diagonal.
Matrix companion_form(const std::vector<Matrix>& coefs);

/// Stability / parameter validation; throws on violation.
void validate_spec(const DgmSpec& spec);

/// s uniformly placed nonzeros with U(0,1) entries, rescaled to the
/// target spectral radius; nilpotent draws (radius 0) are redrawn.
CoefficientMatrix generate_sparse_stable(std::size_t p, std::size_t s, double target_radius,
                                         Rng& rng);

constexpr std::size_t kDefaultBurnIn = 1000;

TimeSeriesSample simulate(const DgmSpec& spec, std::size_t t_count, std::size_t burn_in,
                          std::uint64_t seed);

/// Population best linear predictor Theta* for the spec: stacked
/// (A_1..A_d)' for VARs, A' for arch / copy dependence, and the
/// stationary-covariance closed form for the omitted-variable system.
CoefficientMatrix population_theta(const DgmSpec& spec);

/// Lag-0 stationary covariance of the regressor vector X_t implied by the
/// spec (via the discrete Lyapunov equation where the process is linear).
Matrix population_sigma_x(const DgmSpec& spec);

// --- serialization -------------------------------------------------------

std::string dgm_to_text(const DgmSpec& spec);
DgmSpec dgm_from_text(const std::string& text);

/// CSV with header t,x_1..x_p,y_1..y_q; 17 significant digits.
std::string sample_to_csv(const TimeSeriesSample& sample);
void write_sample_csv(const TimeSeriesSample& sample, const std::string& path);
/// Reads the same layout back (spec/seed provenance is not in the file).
TimeSeriesSample read_sample_csv(const std::string& path);

std::string matrix_to_csv(const Matrix& m);
void write_matrix_csv(const Matrix& m, const std::string& path);
Matrix read_matrix_csv(const std::string& path);

}  // namespace tslasso
