#include "rhn/bench.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>

#include "rhn/errors.hpp"
#include "rhn/rng.hpp"

namespace rhn {

double rmse(const Vector& pred, const Vector& target) {
    if (pred.size() != target.size())
        throw ContractError("rmse: " + std::to_string(pred.size()) + " predictions vs " +
                            std::to_string(target.size()) + " targets");
    if (pred.size() < 1)
        throw ContractError("rmse: empty vectors");
    return std::sqrt((pred - target).squaredNorm() / static_cast<double>(pred.size()));
}

TrialStats aggregate_trials(std::vector<TrialResult> results) {
    if (results.empty())
        throw ContractError("aggregate_trials: no trials");
    TrialStats st;
    st.trials = static_cast<Index>(results.size());
    st.per_trial = std::move(results);
    for (const auto& t : st.per_trial) {
        st.mean_train_rmse += t.train_rmse;
        st.mean_test_rmse += t.test_rmse;
    }
    const auto n = static_cast<double>(st.trials);
    st.mean_train_rmse /= n;
    st.mean_test_rmse /= n;
    if (st.trials > 1) {
        double vtr = 0.0, vte = 0.0;
        for (const auto& t : st.per_trial) {
            vtr += (t.train_rmse - st.mean_train_rmse) * (t.train_rmse - st.mean_train_rmse);
            vte += (t.test_rmse - st.mean_test_rmse) * (t.test_rmse - st.mean_test_rmse);
        }
        st.std_train_rmse = std::sqrt(vtr / (n - 1.0));
        st.std_test_rmse = std::sqrt(vte / (n - 1.0));
    }
    return st;
}

namespace {

// Train/test RMSE of one fitted model, in normalized output units by
// default (test targets rescaled with the training-data statistics).
std::pair<double, double> evaluate_model(const TrainedModel& model, const Dataset& train,
                                         const Dataset& test, bool raw_units) {
    if (raw_units)
        return {rmse(predict(model, train.X), train.Y), rmse(predict(model, test.X), test.Y)};
    return {rmse(predict_normalized(model, train.X),
                 model.normalizer.normalize_outputs(train.Y)),
            rmse(predict_normalized(model, test.X),
                 model.normalizer.normalize_outputs(test.Y))};
}

} // namespace

TrialResult run_single_trial(const Dataset& train_set, const Dataset& test_set,
                             const GenConfig& config, uint64_t seed, const TrainOptions& opts,
                             bool raw_units) {
    GenConfig cfg = config;
    cfg.seed = seed;
    const TrainedModel model = train(train_set.X, train_set.Y, cfg, opts);
    const auto [tr, te] = evaluate_model(model, train_set, test_set, raw_units);
    return {seed, tr, te};
}

TrialStats run_trials(const Dataset& train_set, const Dataset& test_set, const GenConfig& config,
                      Index trials, uint64_t base_seed, const TrainOptions& opts,
                      bool raw_units) {
    if (trials < 1)
        throw ConfigError("trial count must be >= 1");
    std::vector<TrialResult> results;
    results.reserve(static_cast<size_t>(trials));
    for (Index t = 0; t < trials; ++t)
        results.push_back(
            run_single_trial(train_set, test_set, config, base_seed + static_cast<uint64_t>(t),
                             opts, raw_units));
    return aggregate_trials(std::move(results));
}

std::pair<Index, Index> select_best_cell(const Matrix& table, const std::vector<double>& r_grid,
                                         const std::vector<double>& s_grid) {
    if (table.rows() != static_cast<Index>(r_grid.size()) ||
        table.cols() != static_cast<Index>(s_grid.size()))
        throw ContractError("select_best_cell: table shape does not match the grids");
    if (table.size() < 1)
        throw ContractError("select_best_cell: empty table");

    Index best_i = 0, best_j = 0;
    for (Index i = 0; i < table.rows(); ++i)
        for (Index j = 0; j < table.cols(); ++j) {
            const double v = table(i, j);
            const double b = table(best_i, best_j);
            bool better = v < b;
            if (v == b) { // tie: smaller s wins, then smaller r
                const size_t ji = static_cast<size_t>(j), bj = static_cast<size_t>(best_j);
                const size_t ii = static_cast<size_t>(i), bi = static_cast<size_t>(best_i);
                better = s_grid[ji] < s_grid[bj] ||
                         (s_grid[ji] == s_grid[bj] && r_grid[ii] < r_grid[bi]);
            }
            if (better) {
                best_i = i;
                best_j = j;
            }
        }
    return {best_i, best_j};
}

std::vector<double> default_r_grid(Activation kind) {
    const RDomain dom = r_domain(kind);
    std::vector<double> grid;
    grid.reserve(10);
    for (int j = 1; j <= 10; ++j)
        grid.push_back(dom.lo + static_cast<double>(j) * (dom.hi - dom.lo) / 11.0);
    return grid;
}

std::vector<double> default_s_grid() {
    return {1.2, 1.7, 2.4, 3.4, 5.0, 10.0, 20.0, 40.0, 100.0, 200.0};
}

GridSearchResult cross_validate_grid(const Dataset& train_set, Activation kind,
                                     const std::vector<double>& r_grid,
                                     const std::vector<double>& s_grid, Index folds, Index m,
                                     BiasStrategy strategy, uint64_t seed,
                                     const TrainOptions& opts) {
    if (r_grid.empty() || s_grid.empty())
        throw ConfigError("grid search needs non-empty r and s grids");
    if (folds < 2)
        throw ConfigError("cross-validation needs at least 2 folds");
    const Index N = train_set.size();
    if (folds > N)
        throw ConfigError("fold count " + std::to_string(folds) + " exceeds sample count " +
                          std::to_string(N));
    if (m < 1)
        throw ConfigError("node count must be >= 1");
    const RDomain dom = r_domain(kind);
    for (const double r : r_grid)
        if (!dom.contains(r))
            throw DomainError("grid value r = " + std::to_string(r) + " outside " +
                              dom.describe() + " for " + to_string(kind));
    for (const double s : s_grid)
        if (!(s > 1.0))
            throw DomainError("grid value s = " + std::to_string(s) + " invalid: s must be > 1");

    // One shuffled partition reused by every cell; fold f of each cell also
    // shares generation seed (seed + f), so cells see paired randomness.
    std::vector<Index> idx(static_cast<size_t>(N));
    std::iota(idx.begin(), idx.end(), Index{0});
    Rng part_rng(seed);
    for (Index i = N - 1; i > 0; --i) {
        const auto j = static_cast<Index>(part_rng.below(static_cast<uint64_t>(i + 1)));
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }
    // Shuffled position p belongs to fold p % folds: sizes balanced within 1.
    std::vector<std::vector<Index>> fold_rows(static_cast<size_t>(folds));
    for (Index p = 0; p < N; ++p)
        fold_rows[static_cast<size_t>(p % folds)].push_back(idx[static_cast<size_t>(p)]);

    auto gather = [&](const std::vector<Index>& rows) {
        Dataset part;
        part.X.resize(static_cast<Index>(rows.size()), train_set.dim());
        part.Y.resize(static_cast<Index>(rows.size()));
        for (size_t i = 0; i < rows.size(); ++i) {
            part.X.row(static_cast<Index>(i)) = train_set.X.row(rows[i]);
            part.Y[static_cast<Index>(i)] = train_set.Y[rows[i]];
        }
        return part;
    };

    std::vector<Dataset> val_parts, fit_parts;
    for (Index f = 0; f < folds; ++f) {
        std::vector<Index> fit_rows;
        for (Index g = 0; g < folds; ++g)
            if (g != f)
                fit_rows.insert(fit_rows.end(), fold_rows[static_cast<size_t>(g)].begin(),
                                fold_rows[static_cast<size_t>(g)].end());
        val_parts.push_back(gather(fold_rows[static_cast<size_t>(f)]));
        fit_parts.push_back(gather(fit_rows));
    }

    GridSearchResult res;
    res.r_grid = r_grid;
    res.s_grid = s_grid;
    res.folds = folds;
    res.cv_rmse_table.resize(static_cast<Index>(r_grid.size()),
                             static_cast<Index>(s_grid.size()));
    for (size_t i = 0; i < r_grid.size(); ++i)
        for (size_t j = 0; j < s_grid.size(); ++j) {
            double acc = 0.0;
            for (Index f = 0; f < folds; ++f) {
                GenConfig cfg;
                cfg.kind = kind;
                cfg.r = r_grid[i];
                cfg.s = s_grid[j];
                cfg.nodes = m;
                cfg.strategy = strategy;
                cfg.seed = seed + static_cast<uint64_t>(f);
                const Dataset& fit = fit_parts[static_cast<size_t>(f)];
                const TrainedModel model = train_with_hidden(
                    fit.X, fit.Y, kind,
                    [&cfg](const Matrix& Xn) { return generate(cfg, Xn.cols(), &Xn); }, opts);
                const Dataset& val = val_parts[static_cast<size_t>(f)];
                acc += rmse(predict_normalized(model, val.X),
                            model.normalizer.normalize_outputs(val.Y));
            }
            res.cv_rmse_table(static_cast<Index>(i), static_cast<Index>(j)) =
                acc / static_cast<double>(folds);
        }

    const auto [bi, bj] = select_best_cell(res.cv_rmse_table, r_grid, s_grid);
    res.best_r = r_grid[static_cast<size_t>(bi)];
    res.best_s = s_grid[static_cast<size_t>(bj)];
    return res;
}

std::pair<TrialStats, TrialStats> compare_baseline(const Dataset& train_set,
                                                   const Dataset& test_set,
                                                   const GenConfig& config,
                                                   const BaselineRanges& ranges, Index trials,
                                                   uint64_t base_seed, const TrainOptions& opts) {
    config.validate();
    if (trials < 1)
        throw ConfigError("trial count must be >= 1");
    if (ranges.w_lo > ranges.w_hi || ranges.b_lo > ranges.b_hi)
        throw ConfigError("baseline range lower bound exceeds upper bound");

    std::vector<TrialResult> proposed, baseline;
    for (Index t = 0; t < trials; ++t) {
        const uint64_t seed = base_seed + static_cast<uint64_t>(t);
        proposed.push_back(run_single_trial(train_set, test_set, config, seed, opts));

        const TrainedModel model = train_with_hidden(
            train_set.X, train_set.Y, config.kind,
            [&](const Matrix& Xn) {
                return baseline_generate(config.nodes, Xn.cols(), ranges.w_lo, ranges.w_hi,
                                         ranges.b_lo, ranges.b_hi, seed);
            },
            opts);
        const auto [tr, te] = evaluate_model(model, train_set, test_set, false);
        baseline.push_back({seed, tr, te});
    }
    return {aggregate_trials(std::move(proposed)), aggregate_trials(std::move(baseline))};
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os << std::setprecision(6);
    return os;
}

} // namespace

void export_results(const TrialStats& stats, const std::string& path) {
    auto os = open_out(path);
    os << "trial,seed,train_rmse,test_rmse,train_rmse_std,test_rmse_std\n";
    for (size_t t = 0; t < stats.per_trial.size(); ++t) {
        const auto& r = stats.per_trial[t];
        os << (t + 1) << ',' << r.seed << ',' << r.train_rmse << ',' << r.test_rmse << ",,\n";
    }
    os << "summary," << stats.trials << ',' << stats.mean_train_rmse << ','
       << stats.mean_test_rmse << ',' << stats.std_train_rmse << ',' << stats.std_test_rmse
       << '\n';
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

void export_results(const GridSearchResult& grid, const std::string& path) {
    auto os = open_out(path);
    os << "r,s,cv_rmse,best\n";
    for (Index i = 0; i < grid.cv_rmse_table.rows(); ++i)
        for (Index j = 0; j < grid.cv_rmse_table.cols(); ++j) {
            const double r = grid.r_grid[static_cast<size_t>(i)];
            const double s = grid.s_grid[static_cast<size_t>(j)];
            const bool best = r == grid.best_r && s == grid.best_s;
            os << r << ',' << s << ',' << grid.cv_rmse_table(i, j) << ',' << (best ? 1 : 0)
               << '\n';
        }
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

void export_fit_curve(const TrainedModel& model, std::optional<TargetFunction> tf, Index samples,
                      const std::string& path) {
    const Index dim = model.hidden.dim();
    if (dim != 1 && dim != 2)
        throw ConfigError("fitted-curve export supports 1-D and 2-D models, model has " +
                          std::to_string(dim) + " inputs");
    if (tf && tf_dimension(*tf) != dim)
        throw ConfigError("target function dimension does not match the model");

    const Matrix X = grid_points(static_cast<int>(dim), samples);
    const Vector pred = predict(model, X);

    auto os = open_out(path);
    os << std::setprecision(9);
    os << (dim == 1 ? "x" : "x1,x2");
    if (tf)
        os << ",target";
    os << ",prediction\n";
    for (Index l = 0; l < X.rows(); ++l) {
        os << X(l, 0);
        if (dim == 2)
            os << ',' << X(l, 1);
        if (tf)
            os << ',' << eval_target(*tf, X.row(l).transpose());
        os << ',' << pred[l] << '\n';
    }
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

} // namespace rhn
