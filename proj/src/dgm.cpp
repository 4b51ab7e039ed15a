#include "tslasso/dgm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tslasso/matops.hpp"

namespace tslasso {

namespace {

constexpr double kRadiusTol = 1e-6;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double stable_radius_or_throw(const Matrix& a, const char* who) {
    const SpectralInfo sp = spectral_radius(a);
    if (!sp.converged)
        throw std::runtime_error(std::string(who) + ": spectral radius estimate did not converge");
    return sp.radius;
}

void require_var_coefs(const std::vector<Matrix>& coefs, const char* who) {
    if (coefs.empty()) throw std::invalid_argument(std::string(who) + ": no coefficient matrices");
    const std::size_t p = coefs.front().rows();
    for (const Matrix& a : coefs)
        if (!a.square() || a.rows() != p)
            throw std::invalid_argument(std::string(who) + ": ragged coefficient matrices");
}

// One VAR step: z_new = sum_k coefs[k] * hist[k] + eps.
std::vector<double> var_step(const std::vector<Matrix>& coefs,
                             const std::vector<std::vector<double>>& hist,
                             const std::vector<double>& eps) {
    const std::size_t p = eps.size();
    std::vector<double> z = eps;
    for (std::size_t k = 0; k < coefs.size(); ++k) {
        const Matrix& a = coefs[k];
        const std::vector<double>& h = hist[k];
        for (std::size_t i = 0; i < p; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += a(i, j) * h[j];
            z[i] += s;
        }
    }
    return z;
}

InnovationSpec innovation_of(const DgmSpec& spec) {
    if (const auto* g = std::get_if<GaussianVarSpec>(&spec)) {
        const std::size_t p = g->coefs.front().rows();
        return g->sigma_eps.empty() ? InnovationSpec::gaussian_identity(p)
                                    : InnovationSpec::gaussian(g->sigma_eps);
    }
    if (const auto* s = std::get_if<SubweibullVarSpec>(&spec)) return s->innovation;
    if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) return o->innovation;
    if (const auto* a = std::get_if<ArchSpec>(&spec)) return a->innovation;
    return std::get<CopyDependenceSpec>(spec).innovation;
}

}  // namespace

CoefficientMatrix make_coefficient(Matrix values) {
    CoefficientMatrix out;
    out.values = std::move(values);
    for (std::size_t i = 0; i < out.values.rows(); ++i)
        for (std::size_t j = 0; j < out.values.cols(); ++j)
            if (out.values(i, j) != 0.0) out.support.emplace_back(i, j);
    out.sparsity = out.support.size();
    return out;
}

Matrix companion_form(const std::vector<Matrix>& coefs) {
    require_var_coefs(coefs, "companion_form");
    const std::size_t d = coefs.size();
    const std::size_t p = coefs.front().rows();
    if (d == 1) return coefs.front();
    Matrix tilde(d * p, d * p);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) tilde(i, k * p + j) = coefs[k](i, j);
    for (std::size_t k = 1; k < d; ++k)
        for (std::size_t i = 0; i < p; ++i) tilde(k * p + i, (k - 1) * p + i) = 1.0;
    return tilde;
}

void validate_spec(const DgmSpec& spec) {
    if (const auto* g = std::get_if<GaussianVarSpec>(&spec)) {
        require_var_coefs(g->coefs, "gaussian_var");
        const double r = stable_radius_or_throw(companion_form(g->coefs), "gaussian_var");
        if (r >= 1.0) throw std::invalid_argument("gaussian_var: companion spectral radius >= 1");
        innovation_of(spec).validate();
    } else if (const auto* s = std::get_if<SubweibullVarSpec>(&spec)) {
        require_var_coefs(s->coefs, "subweibull_var");
        const double r = stable_radius_or_throw(companion_form(s->coefs), "subweibull_var");
        if (r >= 1.0) throw std::invalid_argument("subweibull_var: companion spectral radius >= 1");
        s->innovation.validate();
        if (s->innovation.dim != s->coefs.front().rows())
            throw std::invalid_argument("subweibull_var: innovation dimension mismatch");
    } else if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) {
        if (!o->a_full.square() || o->a_full.rows() < 2)
            throw std::invalid_argument("omitted_var: a_full must be square, at least 2x2");
        const double r = stable_radius_or_throw(o->a_full, "omitted_var");
        if (r >= 1.0) throw std::invalid_argument("omitted_var: spectral radius >= 1");
        o->innovation.validate();
        if (o->innovation.dim != o->a_full.rows())
            throw std::invalid_argument("omitted_var: innovation dimension mismatch");
    } else if (const auto* a = std::get_if<ArchSpec>(&spec)) {
        if (!a->a.square()) throw std::invalid_argument("arch: coefficient matrix must be square");
        const double r = stable_radius_or_throw(a->a, "arch");
        if (r >= 1.0) throw std::invalid_argument("arch: spectral radius >= 1");
        if (!(a->c > 0.0)) throw std::invalid_argument("arch: c must be > 0");
        if (!(a->m > 0.0 && a->m < 1.0)) throw std::invalid_argument("arch: m must be in (0,1)");
        if (!(a->clip_lo > 0.0 && a->clip_lo < a->clip_hi))
            throw std::invalid_argument("arch: need 0 < a < b for the clip interval");
        a->innovation.validate();
        if (a->innovation.dim != a->a.rows())
            throw std::invalid_argument("arch: innovation dimension mismatch");
    } else {
        const auto& c = std::get<CopyDependenceSpec>(spec);
        if (!c.a.square()) throw std::invalid_argument("copy_dependence: coefficient must be square");
        if (!(c.rho >= 0.0 && c.rho < 1.0))
            throw std::invalid_argument("copy_dependence: rho must be in [0,1)");
        if (!(c.noise_scale > 0.0))
            throw std::invalid_argument("copy_dependence: noise scale must be > 0");
        c.innovation.validate();
        if (c.innovation.dim != c.a.rows())
            throw std::invalid_argument("copy_dependence: innovation dimension mismatch");
    }
}

CoefficientMatrix generate_sparse_stable(std::size_t p, std::size_t s, double target_radius,
                                         Rng& rng) {
    if (p == 0) throw std::invalid_argument("generate_sparse_stable: p must be >= 1");
    if (s > p * p) throw std::invalid_argument("generate_sparse_stable: s exceeds p^2");
    if (!(target_radius > 0.0 && target_radius < 1.0))
        throw std::invalid_argument("generate_sparse_stable: target radius must be in (0,1)");
    if (s == 0)
        throw std::invalid_argument("generate_sparse_stable: s = 0 cannot reach a positive radius");

    const int max_tries = 1000;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        // Floyd's algorithm: s distinct positions among p^2.
        std::set<std::size_t> positions;
        for (std::size_t j = p * p - s; j < p * p; ++j) {
            const std::size_t t = rng.uniform_index(j + 1);
            if (!positions.insert(t).second) positions.insert(j);
        }
        Matrix a(p, p);
        for (std::size_t pos : positions) a.data()[pos] = rng.uniform01();

        const SpectralInfo sp = spectral_radius(a);
        // Nilpotent supports (radius 0) and supports whose leading
        // eigenvalues tie in modulus are redrawn.
        if (!sp.converged || sp.radius < 1e-9) continue;
        a = a * (target_radius / sp.radius);
        const SpectralInfo check = spectral_radius(a);
        if (!check.converged || std::fabs(check.radius - target_radius) > kRadiusTol) continue;
        return make_coefficient(std::move(a));
    }
    throw std::runtime_error("generate_sparse_stable: failed to draw a scalable support");
}

TimeSeriesSample simulate(const DgmSpec& spec, std::size_t t_count, std::size_t burn_in,
                          std::uint64_t seed) {
    if (t_count == 0) throw std::invalid_argument("simulate: T must be >= 1");
    validate_spec(spec);
    Rng rng(seed);
    TimeSeriesSample out;
    out.burn_in = burn_in;
    out.seed = seed;
    out.spec = spec;

    if (std::holds_alternative<GaussianVarSpec>(spec) ||
        std::holds_alternative<SubweibullVarSpec>(spec)) {
        const std::vector<Matrix>& coefs = std::holds_alternative<GaussianVarSpec>(spec)
                                               ? std::get<GaussianVarSpec>(spec).coefs
                                               : std::get<SubweibullVarSpec>(spec).coefs;
        const std::size_t d = coefs.size();
        const std::size_t p = coefs.front().rows();
        const InnovationSampler sampler(innovation_of(spec));
        std::vector<std::vector<double>> hist(d, std::vector<double>(p, 0.0));
        const std::size_t keep = t_count + d;
        std::vector<std::vector<double>> z;
        z.reserve(keep);
        const std::size_t total = burn_in + keep;
        for (std::size_t step = 0; step < total; ++step) {
            std::vector<double> znew = var_step(coefs, hist, sampler.sample(rng));
            for (std::size_t k = d; k-- > 1;) hist[k] = std::move(hist[k - 1]);
            hist[0] = znew;
            if (step >= burn_in) z.push_back(std::move(znew));
        }
        // Row i regresses Z at time i+d on the d stacked previous values,
        // newest first, so Theta* = (A_1..A_d)' exactly.
        out.x = Matrix(t_count, d * p);
        out.y = Matrix(t_count, p);
        for (std::size_t i = 0; i < t_count; ++i) {
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t j = 0; j < p; ++j) out.x(i, k * p + j) = z[i + d - 1 - k][j];
            for (std::size_t j = 0; j < p; ++j) out.y(i, j) = z[i + d][j];
        }
        return out;
    }

    if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) {
        const std::size_t pfull = o->a_full.rows();
        const std::size_t p = o->observed_dim();
        const InnovationSampler sampler(o->innovation);
        std::vector<std::vector<double>> hist(1, std::vector<double>(pfull, 0.0));
        const std::vector<Matrix> coefs{o->a_full};
        const std::size_t keep = t_count + 1;
        std::vector<std::vector<double>> z;
        z.reserve(keep);
        for (std::size_t step = 0; step < burn_in + keep; ++step) {
            std::vector<double> znew = var_step(coefs, hist, sampler.sample(rng));
            hist[0] = znew;
            if (step >= burn_in) z.push_back(std::move(znew));
        }
        out.x = Matrix(t_count, p);
        out.y = Matrix(t_count, p);
        for (std::size_t i = 0; i < t_count; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                out.x(i, j) = z[i][j];  // Xi coordinate dropped
                out.y(i, j) = z[i + 1][j];
            }
        return out;
    }

    if (const auto* a = std::get_if<ArchSpec>(&spec)) {
        const std::size_t p = a->a.rows();
        const InnovationSampler sampler(a->innovation);
        std::vector<double> state(p, 0.0);
        const std::size_t keep = t_count + 1;
        std::vector<std::vector<double>> z;
        z.reserve(keep);
        for (std::size_t step = 0; step < burn_in + keep; ++step) {
            double nrm = 0.0;
            for (double v : state) nrm += v * v;
            nrm = std::sqrt(nrm);
            const double vol =
                a->c * std::min(std::max(std::pow(nrm, a->m), a->clip_lo), a->clip_hi);
            std::vector<double> eps = sampler.sample(rng);
            std::vector<double> znew(p, 0.0);
            for (std::size_t i = 0; i < p; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < p; ++j) s += a->a(i, j) * state[j];
                znew[i] = s + vol * eps[i];
            }
            state = znew;
            if (step >= burn_in) z.push_back(std::move(znew));
        }
        out.x = Matrix(t_count, p);
        out.y = Matrix(t_count, p);
        for (std::size_t i = 0; i < t_count; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                out.x(i, j) = z[i][j];
                out.y(i, j) = z[i + 1][j];
            }
        return out;
    }

    const auto& c = std::get<CopyDependenceSpec>(spec);
    const std::size_t p = c.a.rows();
    const InnovationSampler sampler(c.innovation);
    out.x = Matrix(t_count, p);
    out.y = Matrix(t_count, p);
    std::vector<double> xcur(p), ycur(p);
    auto fresh = [&]() {
        for (auto& v : xcur) v = rng.normal();
        const std::vector<double> eps = sampler.sample(rng);
        for (std::size_t i = 0; i < p; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += c.a(i, j) * xcur[j];
            ycur[i] = s + c.noise_scale * eps[i];
        }
    };
    fresh();
    std::size_t written = 0;
    for (std::size_t step = 0; step < burn_in + t_count; ++step) {
        if (step > 0 && rng.uniform01() >= c.rho) fresh();
        if (step >= burn_in) {
            for (std::size_t j = 0; j < p; ++j) {
                out.x(written, j) = xcur[j];
                out.y(written, j) = ycur[j];
            }
            ++written;
        }
    }
    return out;
}

CoefficientMatrix population_theta(const DgmSpec& spec) {
    validate_spec(spec);
    if (const auto* g = std::get_if<GaussianVarSpec>(&spec)) {
        const std::size_t d = g->coefs.size();
        const std::size_t p = g->coefs.front().rows();
        Matrix theta(d * p, p);
        for (std::size_t k = 0; k < d; ++k) {
            const Matrix at = g->coefs[k].transpose();
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j) theta(k * p + i, j) = at(i, j);
        }
        return make_coefficient(std::move(theta));
    }
    if (const auto* s = std::get_if<SubweibullVarSpec>(&spec)) {
        GaussianVarSpec tmp{s->coefs, Matrix()};
        return population_theta(DgmSpec(tmp));
    }
    if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) {
        const std::size_t p = o->observed_dim();
        const Matrix sigma_full =
            solve_discrete_lyapunov(o->a_full, o->innovation.covariance(), 1e-14);
        const Matrix sigma_z = sigma_full.block(0, 0, p, p);
        const Matrix sigma_xi_z = sigma_full.block(p, 0, 1, p);  // E[Xi_t Z_t']
        // (Theta*)' = A_ZZ + A_ZXi Sigma_XiZ Sigma_Z^{-1}
        const Matrix ratio = solve_spd(sigma_z, sigma_xi_z.transpose());  // Sigma_Z^{-1} Sigma_ZXi
        const Matrix theta_t = o->a_zz() + o->a_zxi() * ratio.transpose();
        return make_coefficient(theta_t.transpose());
    }
    if (const auto* a = std::get_if<ArchSpec>(&spec))
        return make_coefficient(a->a.transpose());
    return make_coefficient(std::get<CopyDependenceSpec>(spec).a.transpose());
}

Matrix population_sigma_x(const DgmSpec& spec) {
    validate_spec(spec);
    if (const auto* g = std::get_if<GaussianVarSpec>(&spec)) {
        const std::size_t d = g->coefs.size();
        const std::size_t p = g->coefs.front().rows();
        const Matrix tilde = companion_form(g->coefs);
        Matrix q(d * p, d * p);
        const Matrix cov = innovation_of(spec).covariance();
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) q(i, j) = cov(i, j);
        return solve_discrete_lyapunov(tilde, q, 1e-13);
    }
    if (const auto* s = std::get_if<SubweibullVarSpec>(&spec)) {
        const std::size_t d = s->coefs.size();
        const std::size_t p = s->coefs.front().rows();
        const Matrix tilde = companion_form(s->coefs);
        Matrix q(d * p, d * p);
        const Matrix cov = s->innovation.covariance();
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) q(i, j) = cov(i, j);
        return solve_discrete_lyapunov(tilde, q, 1e-13);
    }
    if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) {
        const std::size_t p = o->observed_dim();
        const Matrix sigma_full =
            solve_discrete_lyapunov(o->a_full, o->innovation.covariance(), 1e-14);
        return sigma_full.block(0, 0, p, p);
    }
    if (std::holds_alternative<CopyDependenceSpec>(spec))
        return Matrix::identity(std::get<CopyDependenceSpec>(spec).a.rows());
    throw std::invalid_argument("population_sigma_x: no closed form for the ARCH process");
}

// --- serialization --------------------------------------------------------

namespace {

ConfigTable innovation_to_config(const InnovationSpec& inn) {
    ConfigTable t;
    switch (inn.kind) {
        case InnovationKind::gaussian:
            t["kind"] = "gaussian";
            if (!inn.sigma_eps.empty()) t["sigma_eps"] = matrix_to_config(inn.sigma_eps);
            break;
        case InnovationKind::uniform_isotropic:
            t["kind"] = "uniform_isotropic";
            break;
        case InnovationKind::centered_weibull:
            t["kind"] = "centered_weibull";
            t["shape"] = inn.shape;
            break;
    }
    t["dim"] = inn.dim;
    t["scale"] = inn.scale;
    return t;
}

InnovationSpec innovation_from_config(const ConfigTable& t) {
    InnovationSpec inn;
    const std::string kind = config_string(t, "kind");
    inn.dim = static_cast<std::size_t>(config_int(t, "dim"));
    inn.scale = config_double_or(t, "scale", 1.0);
    if (kind == "gaussian") {
        inn.kind = InnovationKind::gaussian;
        if (config_has(t, "sigma_eps")) inn.sigma_eps = config_matrix(t, "sigma_eps");
    } else if (kind == "uniform_isotropic") {
        inn.kind = InnovationKind::uniform_isotropic;
    } else if (kind == "centered_weibull") {
        inn.kind = InnovationKind::centered_weibull;
        inn.shape = config_double(t, "shape");
    } else {
        throw std::runtime_error("innovation: unknown kind '" + kind + "'");
    }
    inn.validate();
    return inn;
}

}  // namespace

std::string dgm_to_text(const DgmSpec& spec) {
    ConfigTable t;
    if (const auto* g = std::get_if<GaussianVarSpec>(&spec)) {
        t["kind"] = "gaussian_var";
        t["lags"] = g->coefs.size();
        for (std::size_t k = 0; k < g->coefs.size(); ++k)
            t["a" + std::to_string(k + 1)] = matrix_to_config(g->coefs[k]);
        if (!g->sigma_eps.empty()) t["sigma_eps"] = matrix_to_config(g->sigma_eps);
    } else if (const auto* s = std::get_if<SubweibullVarSpec>(&spec)) {
        t["kind"] = "subweibull_var";
        t["lags"] = s->coefs.size();
        for (std::size_t k = 0; k < s->coefs.size(); ++k)
            t["a" + std::to_string(k + 1)] = matrix_to_config(s->coefs[k]);
        t["innovation"] = innovation_to_config(s->innovation);
    } else if (const auto* o = std::get_if<OmittedVarSpec>(&spec)) {
        t["kind"] = "omitted_var";
        t["a_full"] = matrix_to_config(o->a_full);
        t["innovation"] = innovation_to_config(o->innovation);
    } else if (const auto* a = std::get_if<ArchSpec>(&spec)) {
        t["kind"] = "arch";
        t["a"] = matrix_to_config(a->a);
        t["c"] = a->c;
        t["m"] = a->m;
        t["clip_lo"] = a->clip_lo;
        t["clip_hi"] = a->clip_hi;
        t["innovation"] = innovation_to_config(a->innovation);
    } else {
        const auto& c = std::get<CopyDependenceSpec>(spec);
        t["kind"] = "copy_dependence";
        t["a"] = matrix_to_config(c.a);
        t["noise_scale"] = c.noise_scale;
        t["rho"] = c.rho;
        t["innovation"] = innovation_to_config(c.innovation);
    }
    return write_config(t);
}

DgmSpec dgm_from_text(const std::string& text) {
    const ConfigTable t = parse_config(text);
    const std::string kind = config_string(t, "kind");
    DgmSpec spec;
    if (kind == "gaussian_var" || kind == "subweibull_var") {
        const std::size_t d = static_cast<std::size_t>(config_int(t, "lags"));
        std::vector<Matrix> coefs;
        for (std::size_t k = 1; k <= d; ++k) coefs.push_back(config_matrix(t, "a" + std::to_string(k)));
        if (kind == "gaussian_var") {
            GaussianVarSpec g;
            g.coefs = std::move(coefs);
            if (config_has(t, "sigma_eps")) g.sigma_eps = config_matrix(t, "sigma_eps");
            spec = std::move(g);
        } else {
            SubweibullVarSpec s;
            s.coefs = std::move(coefs);
            s.innovation = innovation_from_config(config_table(t, "innovation"));
            spec = std::move(s);
        }
    } else if (kind == "omitted_var") {
        OmittedVarSpec o;
        o.a_full = config_matrix(t, "a_full");
        o.innovation = innovation_from_config(config_table(t, "innovation"));
        spec = std::move(o);
    } else if (kind == "arch") {
        ArchSpec a;
        a.a = config_matrix(t, "a");
        a.c = config_double_or(t, "c", 1.0);
        a.m = config_double_or(t, "m", 0.5);
        a.clip_lo = config_double_or(t, "clip_lo", 0.5);
        a.clip_hi = config_double_or(t, "clip_hi", 2.0);
        a.innovation = innovation_from_config(config_table(t, "innovation"));
        spec = std::move(a);
    } else if (kind == "copy_dependence") {
        CopyDependenceSpec c;
        c.a = config_matrix(t, "a");
        c.noise_scale = config_double_or(t, "noise_scale", 0.5);
        c.rho = config_double(t, "rho");
        c.innovation = innovation_from_config(config_table(t, "innovation"));
        spec = std::move(c);
    } else {
        throw std::runtime_error("dgm_from_text: unknown kind '" + kind + "'");
    }
    validate_spec(spec);
    return spec;
}

std::string sample_to_csv(const TimeSeriesSample& sample) {
    std::ostringstream out;
    out << "t";
    for (std::size_t j = 1; j <= sample.x.cols(); ++j) out << ",x_" << j;
    for (std::size_t j = 1; j <= sample.y.cols(); ++j) out << ",y_" << j;
    out << '\n';
    for (std::size_t i = 0; i < sample.x.rows(); ++i) {
        out << (i + 1);
        for (std::size_t j = 0; j < sample.x.cols(); ++j) out << ',' << fmt17(sample.x(i, j));
        for (std::size_t j = 0; j < sample.y.cols(); ++j) out << ',' << fmt17(sample.y(i, j));
        out << '\n';
    }
    return out.str();
}

void write_sample_csv(const TimeSeriesSample& sample, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_sample_csv: cannot open " + path);
    f << sample_to_csv(sample);
}

TimeSeriesSample read_sample_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_sample_csv: cannot open " + path);
    std::string header;
    if (!std::getline(f, header)) throw std::runtime_error("read_sample_csv: empty file");
    std::size_t p = 0, q = 0;
    {
        std::istringstream hs(header);
        std::string col;
        while (std::getline(hs, col, ',')) {
            if (col.rfind("x_", 0) == 0) ++p;
            if (col.rfind("y_", 0) == 0) ++q;
        }
    }
    if (p == 0 || q == 0) throw std::runtime_error("read_sample_csv: header lacks x_/y_ columns");
    std::vector<double> xs, ys;
    std::string line;
    std::size_t t_count = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');  // t column
        for (std::size_t j = 0; j < p; ++j) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("read_sample_csv: short row");
            xs.push_back(std::strtod(cell.c_str(), nullptr));
        }
        for (std::size_t j = 0; j < q; ++j) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("read_sample_csv: short row");
            ys.push_back(std::strtod(cell.c_str(), nullptr));
        }
        ++t_count;
    }
    TimeSeriesSample sample;
    sample.x = Matrix(t_count, p, std::move(xs));
    sample.y = Matrix(t_count, q, std::move(ys));
    return sample;
}

std::string matrix_to_csv(const Matrix& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << fmt17(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_matrix_csv: cannot open " + path);
    f << matrix_to_csv(m);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_matrix_csv: cannot open " + path);
    std::vector<double> entries;
    std::size_t rows = 0, cols = 0;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            entries.push_back(std::strtod(cell.c_str(), nullptr));
            ++c;
        }
        if (rows == 0) cols = c;
        else if (c != cols) throw std::runtime_error("read_matrix_csv: ragged rows");
        ++rows;
    }
    return Matrix(rows, cols, std::move(entries));
}

}  // namespace tslasso
