#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tslasso/dgm.hpp"

namespace tslasso {

enum class Study { heavy_tail, dependence, rescaled_alignment };

std::string study_name(Study s);
Study study_from_name(const std::string& name);

struct LambdaPolicy {
    enum class Kind { oracle, theory, fixed };
    Kind kind = Kind::oracle;
    double c_lambda = 1.0;  // theory mode
    double fixed = 0.1;     // fixed mode
};

/// Grid for one simulation study. shape_or_rho_list holds Weibull shapes
/// for heavy_tail, copy probabilities for dependence, and a single dummy 0
/// for the alignment study. T per cell is m * ceil(s * ln p) with
/// s = floor(sqrt(p)).
struct ExperimentGrid {
    Study study = Study::heavy_tail;
    std::vector<std::size_t> p_list;
    std::vector<double> shape_or_rho_list;
    std::vector<int> m_multiples;
    std::size_t reps = 5;
    std::uint64_t root_seed = 20200815;
    double spectral_c = 0.5;
    LambdaPolicy lambda_policy;
    std::size_t burn_in = kDefaultBurnIn;
};

/// Committed defaults. Desk scale shrinks the paper's p grid to {20,40}
/// and reps to 5; full_scale restores the published grid.
ExperimentGrid default_grid(Study study, bool full_scale = false);

/// Structured-text round trip for grids; the text mirrors the struct
/// field for field (lists as arrays, lambda_policy as a string plus its
/// parameter). Missing keys fall back to default_grid(study) values.
std::string grid_to_text(const ExperimentGrid& grid);
ExperimentGrid grid_from_text(const std::string& text);

struct ExperimentRow {
    std::string study;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t t_count = 0;
    int m = 0;
    double shape_or_rho = 0.0;
    int rep = 0;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    double frob_error = 0.0;
    double pred_error = 0.0;
    int fit_sweeps = 0;
    double wall_ms = 0.0;
    bool feasible = true;
    std::string note;  // failure reason; not part of the CSV
};

struct ExperimentResult {
    Study study = Study::heavy_tail;
    std::vector<ExperimentRow> rows;
    bool any_infeasible = false;
};

/// Runs every (cell x replicate) of the grid. Deterministic given the
/// grid: per-row seeds are derive_seed(root_seed, cell_index, rep), rows
/// are preassigned output slots, so `jobs` never changes the output
/// (wall_ms aside). Infeasible cells produce a NaN row and the run
/// continues.
ExperimentResult run_experiment(const ExperimentGrid& grid, std::size_t jobs = 1);

/// Gaussian VAR(1) study with the oracle lambda policy, used for the
/// error-vs-rescaled-sample-size alignment check.
ExperimentResult run_alignment_study(const std::vector<std::size_t>& p_list,
                                     const std::vector<int>& m_multiples, std::size_t reps,
                                     std::uint64_t root_seed, std::size_t jobs = 1);

/// Header: study,p,s,T,m,shape_or_rho,rep,seed,lambda,frob_error,
/// pred_error,fit_sweeps,wall_ms. 12 significant digits, LF endings.
std::string result_to_csv(const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);
ExperimentResult parse_result_csv(const std::string& csv);

struct CellMean {
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t t_count = 0;
    int m = 0;
    double shape_or_rho = 0.0;
    double mean_frob = 0.0;
    double mean_pred = 0.0;
    std::size_t n = 0;
};

/// Per-cell means across replicates (feasible rows only), in deterministic
/// (p, shape_or_rho, m) order.
std::vector<CellMean> aggregate_cells(const ExperimentResult& result);

enum class FigureX { rescaled_sqrt, t_over_slogp };
enum class FigureGroup { p, shape_or_rho };

/// Standalone SVG (rect/polyline/text primitives only): one polyline per
/// group of mean errors, legend, axis labels.
std::string render_figure(const ExperimentResult& result, FigureX x_axis, FigureGroup group_by);
void emit_figure(const ExperimentResult& result, FigureX x_axis, FigureGroup group_by,
                 const std::string& path);

/// Max vertical gap between per-p mean curves at the shared m grid,
/// divided by the overall range of the means. Small values mean the
/// curves of different dimensions align.
double alignment_gap(const ExperimentResult& result);

}  // namespace tslasso
