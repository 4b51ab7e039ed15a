#include "tslasso/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "tslasso/lasso.hpp"
#include "tslasso/matops.hpp"

namespace tslasso {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::size_t t_for_cell(std::size_t p, std::size_t s, int m) {
    const double slogp = static_cast<double>(s) * std::log(static_cast<double>(p));
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(std::ceil(slogp));
}

DgmSpec build_study_spec(Study study, const Matrix& a, double shape_or_rho, double spectral_c) {
    const std::size_t p = a.rows();
    switch (study) {
        case Study::heavy_tail: {
            SubweibullVarSpec s;
            s.coefs = {a};
            s.innovation = InnovationSpec::weibull(p, shape_or_rho, spectral_c);
            return s;
        }
        case Study::dependence: {
            CopyDependenceSpec c;
            c.a = a;
            c.noise_scale = spectral_c;
            c.rho = shape_or_rho;
            c.innovation = InnovationSpec::weibull(p, 1.0, 1.0);
            return c;
        }
        case Study::rescaled_alignment: {
            GaussianVarSpec g;
            g.coefs = {a};
            return g;
        }
    }
    throw std::logic_error("build_study_spec: unreachable");
}

}  // namespace

std::string study_name(Study s) {
    switch (s) {
        case Study::heavy_tail: return "heavy_tail";
        case Study::dependence: return "dependence";
        case Study::rescaled_alignment: return "rescaled_alignment";
    }
    return "?";
}

Study study_from_name(const std::string& name) {
    if (name == "heavy_tail") return Study::heavy_tail;
    if (name == "dependence") return Study::dependence;
    if (name == "rescaled_alignment") return Study::rescaled_alignment;
    throw std::invalid_argument("unknown study '" + name + "'");
}

ExperimentGrid default_grid(Study study, bool full_scale) {
    ExperimentGrid g;
    g.study = study;
    g.m_multiples = {1, 3, 5, 7, 9, 11, 13, 15, 17, 19};
    g.spectral_c = 0.5;
    g.lambda_policy.kind = LambdaPolicy::Kind::oracle;
    switch (study) {
        case Study::heavy_tail:
            g.p_list = full_scale ? std::vector<std::size_t>{50, 100, 150, 200}
                                  : std::vector<std::size_t>{20, 40};
            g.shape_or_rho_list = {0.4, 0.5, 1.0, 1.9};
            g.reps = full_scale ? 10 : 5;
            break;
        case Study::dependence:
            g.p_list = full_scale ? std::vector<std::size_t>{50, 100, 150, 200}
                                  : std::vector<std::size_t>{20, 40};
            g.shape_or_rho_list = {0.2, 0.4, 0.6, 0.8};
            g.reps = full_scale ? 10 : 5;
            break;
        case Study::rescaled_alignment:
            g.p_list = {20, 40, 80};
            g.shape_or_rho_list = {0.0};
            g.reps = full_scale ? 20 : 10;
            break;
    }
    return g;
}

std::string grid_to_text(const ExperimentGrid& grid) {
    ConfigTable t;
    t["study"] = study_name(grid.study);
    ConfigArray ps;
    for (std::size_t p : grid.p_list) ps.emplace_back(p);
    t["p_list"] = std::move(ps);
    ConfigArray srs;
    for (double v : grid.shape_or_rho_list) srs.emplace_back(v);
    t[grid.study == Study::dependence ? "rho_list" : "shape_list"] = std::move(srs);
    ConfigArray ms;
    for (int m : grid.m_multiples) ms.emplace_back(m);
    t["m_multiples"] = std::move(ms);
    t["reps"] = grid.reps;
    t["root_seed"] = static_cast<std::int64_t>(grid.root_seed);
    t["spectral_c"] = grid.spectral_c;
    t["burn_in"] = grid.burn_in;
    switch (grid.lambda_policy.kind) {
        case LambdaPolicy::Kind::oracle: t["lambda_policy"] = "oracle"; break;
        case LambdaPolicy::Kind::theory: t["lambda_policy"] = "theory"; break;
        case LambdaPolicy::Kind::fixed: t["lambda_policy"] = "fixed"; break;
    }
    t["c_lambda"] = grid.lambda_policy.c_lambda;
    t["lambda_fixed"] = grid.lambda_policy.fixed;
    return write_config(t);
}

ExperimentGrid grid_from_text(const std::string& text) {
    const ConfigTable t = parse_config(text);
    const Study study = study_from_name(config_string(t, "study"));
    ExperimentGrid grid = default_grid(study);
    if (config_has(t, "p_list")) {
        grid.p_list.clear();
        for (std::int64_t p : config_int_list(t, "p_list"))
            grid.p_list.push_back(static_cast<std::size_t>(p));
    }
    const char* sr_key = config_has(t, "rho_list") ? "rho_list"
                         : config_has(t, "shape_list") ? "shape_list"
                                                       : nullptr;
    if (sr_key != nullptr) grid.shape_or_rho_list = config_double_list(t, sr_key);
    if (config_has(t, "m_multiples")) {
        grid.m_multiples.clear();
        for (std::int64_t m : config_int_list(t, "m_multiples"))
            grid.m_multiples.push_back(static_cast<int>(m));
    }
    grid.reps = static_cast<std::size_t>(config_int_or(t, "reps", static_cast<std::int64_t>(grid.reps)));
    grid.root_seed = static_cast<std::uint64_t>(
        config_int_or(t, "root_seed", static_cast<std::int64_t>(grid.root_seed)));
    grid.spectral_c = config_double_or(t, "spectral_c", grid.spectral_c);
    grid.burn_in = static_cast<std::size_t>(
        config_int_or(t, "burn_in", static_cast<std::int64_t>(grid.burn_in)));
    const std::string policy = config_string_or(t, "lambda_policy", "oracle");
    if (policy == "oracle") grid.lambda_policy.kind = LambdaPolicy::Kind::oracle;
    else if (policy == "theory") grid.lambda_policy.kind = LambdaPolicy::Kind::theory;
    else if (policy == "fixed") grid.lambda_policy.kind = LambdaPolicy::Kind::fixed;
    else throw std::runtime_error("grid_from_text: unknown lambda_policy '" + policy + "'");
    grid.lambda_policy.c_lambda = config_double_or(t, "c_lambda", grid.lambda_policy.c_lambda);
    grid.lambda_policy.fixed = config_double_or(t, "lambda_fixed", grid.lambda_policy.fixed);
    return grid;
}

ExperimentResult run_experiment(const ExperimentGrid& grid, std::size_t jobs) {
    if (grid.p_list.empty() || grid.shape_or_rho_list.empty() || grid.m_multiples.empty() ||
        grid.reps == 0)
        throw std::invalid_argument("run_experiment: empty grid");
    if (grid.study == Study::dependence)
        for (double rho : grid.shape_or_rho_list)
            if (!(rho >= 0.0 && rho < 1.0))
                throw std::invalid_argument("run_experiment: rho must be in [0,1)");

    struct Task {
        std::size_t p;
        double shape_or_rho;
        int m;
        int rep;
        std::size_t cell_index;
    };
    std::vector<Task> tasks;
    std::size_t cell_index = 0;
    for (std::size_t p : grid.p_list)
        for (double sr : grid.shape_or_rho_list)
            for (int m : grid.m_multiples) {
                for (std::size_t rep = 0; rep < grid.reps; ++rep)
                    tasks.push_back({p, sr, m, static_cast<int>(rep), cell_index});
                ++cell_index;
            }

    ExperimentResult result;
    result.study = grid.study;
    result.rows.resize(tasks.size());

    auto run_task = [&](std::size_t idx) {
        const Task& task = tasks[idx];
        ExperimentRow row;
        row.study = study_name(grid.study);
        row.p = task.p;
        row.shape_or_rho = task.shape_or_rho;
        row.m = task.m;
        row.rep = task.rep;
        row.seed = derive_seed(grid.root_seed, task.cell_index, static_cast<std::uint64_t>(task.rep));
        row.s = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(task.p))));
        row.t_count = t_for_cell(task.p, row.s, task.m);
        try {
            Rng gen_rng(derive_seed(row.seed, 0));
            const CoefficientMatrix a =
                generate_sparse_stable(task.p, row.s, grid.spectral_c, gen_rng);
            const DgmSpec spec = build_study_spec(grid.study, a.values, task.shape_or_rho,
                                                  grid.spectral_c);
            const TimeSeriesSample sample =
                simulate(spec, row.t_count, grid.burn_in, derive_seed(row.seed, 1));
            const CoefficientMatrix theta_star = population_theta(spec);

            switch (grid.lambda_policy.kind) {
                case LambdaPolicy::Kind::oracle:
                    row.lambda = lambda_oracle(sample, theta_star);
                    break;
                case LambdaPolicy::Kind::theory:
                    row.lambda = lambda_theory(sample.x.cols(), sample.y.cols(), row.t_count,
                                               grid.lambda_policy.c_lambda);
                    break;
                case LambdaPolicy::Kind::fixed:
                    row.lambda = grid.lambda_policy.fixed;
                    break;
            }

            LassoConfig config;
            config.lambda = row.lambda;
            const auto t0 = std::chrono::steady_clock::now();
            const LassoFit lf = fit(sample, config);
            const auto t1 = std::chrono::steady_clock::now();
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            row.fit_sweeps = lf.sweeps_used;
            const ErrorReport err = errors(lf, theta_star, sample);
            row.frob_error = err.frobenius_error;  // equals ||A - theta_hat'||_F
            row.pred_error = err.in_sample_pred_error;
        } catch (const std::exception& e) {
            row.feasible = false;
            row.note = e.what();
            row.lambda = std::numeric_limits<double>::quiet_NaN();
            row.frob_error = std::numeric_limits<double>::quiet_NaN();
            row.pred_error = std::numeric_limits<double>::quiet_NaN();
        }
        result.rows[idx] = std::move(row);
    };

    const std::size_t workers = std::max<std::size_t>(1, jobs);
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& row : result.rows)
        if (!row.feasible) result.any_infeasible = true;
    return result;
}

ExperimentResult run_alignment_study(const std::vector<std::size_t>& p_list,
                                     const std::vector<int>& m_multiples, std::size_t reps,
                                     std::uint64_t root_seed, std::size_t jobs) {
    ExperimentGrid grid = default_grid(Study::rescaled_alignment);
    grid.p_list = p_list;
    grid.m_multiples = m_multiples;
    grid.reps = reps;
    grid.root_seed = root_seed;
    return run_experiment(grid, jobs);
}

std::string result_to_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "study,p,s,T,m,shape_or_rho,rep,seed,lambda,frob_error,pred_error,fit_sweeps,wall_ms\n";
    for (const auto& r : result.rows) {
        out << r.study << ',' << r.p << ',' << r.s << ',' << r.t_count << ',' << r.m << ','
            << fmt12(r.shape_or_rho) << ',' << r.rep << ',' << r.seed << ',' << fmt12(r.lambda)
            << ',' << fmt12(r.frob_error) << ',' << fmt12(r.pred_error) << ',' << r.fit_sweeps
            << ',' << fmt12(r.wall_ms) << '\n';
    }
    return out.str();
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
    f << result_to_csv(result);
}

ExperimentResult parse_result_csv(const std::string& csv) {
    ExperimentResult result;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_result_csv: empty input");
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        ExperimentRow r;
        std::getline(ls, r.study, ',');
        auto next_cell = [&]() {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("parse_result_csv: short row");
            return cell;
        };
        r.p = std::stoul(next_cell());
        r.s = std::stoul(next_cell());
        r.t_count = std::stoul(next_cell());
        r.m = std::stoi(next_cell());
        r.shape_or_rho = std::strtod(next_cell().c_str(), nullptr);
        r.rep = std::stoi(next_cell());
        r.seed = std::stoull(next_cell());
        r.lambda = std::strtod(next_cell().c_str(), nullptr);
        r.frob_error = std::strtod(next_cell().c_str(), nullptr);
        r.pred_error = std::strtod(next_cell().c_str(), nullptr);
        r.fit_sweeps = std::stoi(next_cell());
        r.wall_ms = std::strtod(next_cell().c_str(), nullptr);
        r.feasible = std::isfinite(r.frob_error);
        if (first) {
            result.study = study_from_name(r.study);
            first = false;
        }
        result.rows.push_back(std::move(r));
    }
    return result;
}

std::vector<CellMean> aggregate_cells(const ExperimentResult& result) {
    std::map<std::tuple<std::size_t, double, int>, CellMean> cells;
    for (const auto& r : result.rows) {
        if (!r.feasible) continue;
        auto& c = cells[{r.p, r.shape_or_rho, r.m}];
        if (c.n == 0) {
            c.p = r.p;
            c.s = r.s;
            c.t_count = r.t_count;
            c.m = r.m;
            c.shape_or_rho = r.shape_or_rho;
        }
        c.mean_frob += r.frob_error;
        c.mean_pred += r.pred_error;
        ++c.n;
    }
    std::vector<CellMean> out;
    out.reserve(cells.size());
    for (auto& [key, c] : cells) {
        c.mean_frob /= static_cast<double>(c.n);
        c.mean_pred /= static_cast<double>(c.n);
        out.push_back(c);
    }
    return out;
}

std::string render_figure(const ExperimentResult& result, FigureX x_axis, FigureGroup group_by) {
    const std::vector<CellMean> cells = aggregate_cells(result);
    if (cells.empty()) throw std::invalid_argument("render_figure: empty result");

    struct Point {
        double x, y;
    };
    std::map<double, std::vector<Point>> groups;  // key: p or shape_or_rho
    for (const auto& c : cells) {
        const double slogp =
            static_cast<double>(c.s) * std::log(static_cast<double>(c.p));
        const double x = x_axis == FigureX::rescaled_sqrt
                             ? std::sqrt(slogp / static_cast<double>(c.t_count))
                             : static_cast<double>(c.t_count) / slogp;
        const double key =
            group_by == FigureGroup::p ? static_cast<double>(c.p) : c.shape_or_rho;
        groups[key].push_back({x, c.mean_frob});
    }
    for (auto& [key, pts] : groups)
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [key, pts] : groups)
        for (const auto& pt : pts) {
            xmin = std::min(xmin, pt.x);
            xmax = std::max(xmax, pt.x);
            ymin = std::min(ymin, pt.y);
            ymax = std::max(ymax, pt.y);
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    const double width = 860, height = 600;
    const double left = 80, right = width - 180, top = 40, bottom = height - 70;
    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const std::string x_label = x_axis == FigureX::rescaled_sqrt
                                    ? "sqrt(s log p / T)"
                                    : "T / (s log p)";
    const std::string group_label = group_by == FigureGroup::p ? "p" : "shape_or_rho";

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (right - left)
        << "\" height=\"" << (bottom - top)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (int k = 0; k <= 5; ++k) {
        const double fx = xmin + (xmax - xmin) * k / 5.0;
        const double fy = ymin + (ymax - ymin) * k / 5.0;
        svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << bottom << "\" x2=\"" << sx(fx)
            << "\" y2=\"" << (bottom + 6) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << sx(fx) << "\" y=\"" << (bottom + 22)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << fmt3(fx) << "</text>\n";
        svg << "<line x1=\"" << (left - 6) << "\" y1=\"" << sy(fy) << "\" x2=\"" << left
            << "\" y2=\"" << sy(fy) << "\" stroke=\"#333333\"/>\n";
        svg << "<text x=\"" << (left - 10) << "\" y=\"" << (sy(fy) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt3(fy)
            << "</text>\n";
    }
    svg << "<text x=\"" << (left + (right - left) / 2) << "\" y=\"" << (height - 16)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">" << x_label
        << "</text>\n";
    svg << "<text x=\"20\" y=\"" << (top + (bottom - top) / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 "
        << (top + (bottom - top) / 2) << ")\">mean Frobenius error</text>\n";
    svg << "<text x=\"" << (left + (right - left) / 2) << "\" y=\"24\" font-size=\"15\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\">" << study_name(result.study)
        << "</text>\n";

    std::size_t gi = 0;
    for (const auto& [key, pts] : groups) {
        const char* color = palette[gi % 8];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& pt : pts) svg << sx(pt.x) << ',' << sy(pt.y) << ' ';
        svg << "\"/>\n";
        for (const auto& pt : pts)
            svg << "<circle cx=\"" << sx(pt.x) << "\" cy=\"" << sy(pt.y)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        const double ly = top + 16 + 20 * static_cast<double>(gi);
        svg << "<line x1=\"" << (right + 14) << "\" y1=\"" << ly << "\" x2=\"" << (right + 40)
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << (right + 46) << "\" y=\"" << (ly + 4)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << group_label << " = "
            << fmt3(key) << "</text>\n";
        ++gi;
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_figure(const ExperimentResult& result, FigureX x_axis, FigureGroup group_by,
                 const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_figure: cannot open " + path);
    f << render_figure(result, x_axis, group_by);
}

double alignment_gap(const ExperimentResult& result) {
    const std::vector<CellMean> cells = aggregate_cells(result);
    if (cells.empty()) throw std::invalid_argument("alignment_gap: empty result");
    std::map<int, std::vector<double>> by_m;  // shared m grid across p groups
    double lo = 1e300, hi = -1e300;
    std::size_t n_groups = 0;
    {
        std::set<std::size_t> ps;
        for (const auto& c : cells) ps.insert(c.p);
        n_groups = ps.size();
    }
    for (const auto& c : cells) {
        by_m[c.m].push_back(c.mean_frob);
        lo = std::min(lo, c.mean_frob);
        hi = std::max(hi, c.mean_frob);
    }
    const double range = hi - lo;
    if (range <= 0.0) return 0.0;
    double worst = 0.0;
    for (const auto& [m, vals] : by_m) {
        if (vals.size() != n_groups) continue;  // m must be present for every p
        const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
        worst = std::max(worst, *mx - *mn);
    }
    return worst / range;
}

}  // namespace tslasso
