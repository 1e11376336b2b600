#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhn/data.hpp"
#include "rhn/model.hpp"

namespace rhn {

double rmse(const Vector& pred, const Vector& target);

struct TrialResult {
    uint64_t seed = 0;
    double train_rmse = 0.0;
    double test_rmse = 0.0;
};

struct TrialStats {
    double mean_train_rmse = 0.0;
    double std_train_rmse = 0.0; // sample std, divisor trials-1; 0 for one trial
    double mean_test_rmse = 0.0;
    double std_test_rmse = 0.0;
    Index trials = 0;
    std::vector<TrialResult> per_trial;
};

TrialStats aggregate_trials(std::vector<TrialResult> results);

// One train/evaluate pass with the template config reseeded to `seed`.
// RMSE is reported in normalized output units unless raw_units is set
// (test targets are normalized with the training-data statistics).
TrialResult run_single_trial(const Dataset& train, const Dataset& test, const GenConfig& config,
                             uint64_t seed, const TrainOptions& opts = {}, bool raw_units = false);

// Trial t uses seed base_seed + t.
TrialStats run_trials(const Dataset& train, const Dataset& test, const GenConfig& config,
                      Index trials, uint64_t base_seed, const TrainOptions& opts = {},
                      bool raw_units = false);

struct GridSearchResult {
    double best_r = 0.0;
    double best_s = 0.0;
    Matrix cv_rmse_table; // rows follow r_grid, columns follow s_grid
    std::vector<double> r_grid;
    std::vector<double> s_grid;
    Index folds = 0;
};

// Argmin cell of the table; ties prefer the smaller s value, then smaller r.
std::pair<Index, Index> select_best_cell(const Matrix& table, const std::vector<double>& r_grid,
                                         const std::vector<double>& s_grid);

// k-fold cross-validation over the (r, s) grid. The fold partition is fixed
// across cells and fold f of every cell trains with generation seed
// seed + f, so cells are compared on paired randomness.
GridSearchResult cross_validate_grid(const Dataset& train, Activation kind,
                                     const std::vector<double>& r_grid,
                                     const std::vector<double>& s_grid, Index folds, Index m,
                                     BiasStrategy strategy, uint64_t seed,
                                     const TrainOptions& opts = {});

// 10 evenly spaced interior points of the kind's r domain.
std::vector<double> default_r_grid(Activation kind);
// Log-ish ladder spanning the useful steepness range.
std::vector<double> default_s_grid();

struct BaselineRanges {
    double w_lo = -1.0, w_hi = 1.0;
    double b_lo = -1.0, b_hi = 1.0;
};

// Two-arm comparison on identical data and per-trial seeds: the anchored
// generator versus a fixed-range layer of the same size.
std::pair<TrialStats, TrialStats> compare_baseline(const Dataset& train, const Dataset& test,
                                                   const GenConfig& config,
                                                   const BaselineRanges& ranges, Index trials,
                                                   uint64_t base_seed,
                                                   const TrainOptions& opts = {});

// CSV exports: one row per trial (plus a summary row) or per grid cell;
// 6 significant digits; identical input -> byte-identical file.
void export_results(const TrialStats& stats, const std::string& path);
void export_results(const GridSearchResult& grid, const std::string& path);

// Samples the fitted curve/surface (and the true target when known) on a
// regular grid for external plotting. Models above 2-D are not supported.
void export_fit_curve(const TrainedModel& model, std::optional<TargetFunction> tf, Index samples,
                      const std::string& path);

} // namespace rhn
