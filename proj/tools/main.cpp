// rhn — train, evaluate, and inspect feedforward networks whose hidden
// nodes are generated so their nonlinear fragments land inside the data
// cube. Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rhn/bench.hpp"
#include "rhn/errors.hpp"
#include "rhn/rng.hpp"

namespace fs = std::filesystem;

namespace {

using namespace rhn;

// ---------------------------------------------------------------- data flags

struct DataFlags {
    std::string csv;
    std::string target_column;
    bool no_header = false;
    std::string tf;
    std::int64_t n_train = 0;  // 0 = scenario default
    double noise = -1.0;       // < 0 = scenario default
    double train_fraction = 0.75;
};

void add_data_flags(CLI::App* cmd, DataFlags& df, bool with_split) {
    auto* data = cmd->add_option("--data", df.csv, "CSV file with features and target");
    cmd->add_option("--target-column", df.target_column,
                    "target column name, or 0-based index");
    cmd->add_flag("--no-header", df.no_header, "CSV has no header row");
    auto* tf = cmd->add_option("--tf", df.tf, "synthetic target: osc1d|osc2d|peaks");
    cmd->add_option("--n-train", df.n_train,
                    "synthetic training size (default: scenario's own)");
    cmd->add_option("--noise", df.noise,
                    "synthetic noise half-width (default: scenario's own)");
    if (with_split)
        cmd->add_option("--train-fraction", df.train_fraction,
                        "train share of a CSV dataset")
            ->capture_default_str();
    data->excludes(tf);
    tf->excludes(data);
}

struct TrainTest {
    Dataset train;
    Dataset test;
};

// Scenario defaults: the oscillatory targets train on 5000 noisy points and
// test on a fresh noise-free sample of the same size; the peaks target
// trains on 1000 exact points and tests on a 300-point grid.
TrainTest build_synthetic(const DataFlags& df, std::uint64_t seed) {
    const TargetFunction tf = target_from_string(df.tf);
    const bool peaks = tf == TargetFunction::Peaks1D;
    const Index n = df.n_train > 0 ? df.n_train : (peaks ? 1000 : 5000);
    const double noise = df.noise >= 0.0 ? df.noise : (peaks ? 0.0 : 0.2);

    Rng meta(seed);
    const std::uint64_t train_seed = meta.word();
    const std::uint64_t test_seed = meta.word();

    TrainTest tt;
    tt.train = make_synthetic(tf, n, noise, train_seed);
    tt.test = peaks ? grid_dataset(tf, 300) : make_synthetic(tf, n, 0.0, test_seed);
    return tt;
}

Dataset build_train_only(const DataFlags& df, std::uint64_t seed) {
    if (!df.csv.empty()) {
        if (df.target_column.empty())
            throw ConfigError("--data requires --target-column");
        return load_csv(df.csv, df.target_column, !df.no_header);
    }
    if (df.tf.empty())
        throw ConfigError("provide a data source: --data <csv> or --tf <name>");
    return build_synthetic(df, seed).train;
}

TrainTest build_train_test(const DataFlags& df, std::uint64_t seed) {
    if (!df.csv.empty()) {
        if (df.target_column.empty())
            throw ConfigError("--data requires --target-column");
        const Dataset ds = load_csv(df.csv, df.target_column, !df.no_header);
        Rng meta(seed);
        auto [tr, te] = split(ds, df.train_fraction, meta.word());
        return {std::move(tr), std::move(te)};
    }
    if (df.tf.empty())
        throw ConfigError("provide a data source: --data <csv> or --tf <name>");
    return build_synthetic(df, seed);
}

// ----------------------------------------------------------- model/run flags

struct GenFlags {
    std::string activation;
    double r = 0.0;
    double s = 0.0;
    std::int64_t nodes = 100;
    std::string strategy = "uniform";
    std::uint64_t seed = 1;
};

void add_gen_flags(CLI::App* cmd, GenFlags& gf, bool require_rs) {
    cmd->add_option("--activation", gf.activation,
                    "sigmoid|gaussian|softplus|sine|cosine")
        ->required();
    auto* r = cmd->add_option("--r", gf.r, "flatness parameter");
    auto* s = cmd->add_option("--s", gf.s, "steepness multiplier (> 1)");
    if (require_rs) {
        r->required();
        s->required();
    }
    cmd->add_option("--nodes", gf.nodes, "hidden node count")->capture_default_str();
    cmd->add_option("--strategy", gf.strategy, "bias anchors: uniform|data|cluster")
        ->capture_default_str();
    cmd->add_option("--seed", gf.seed, "base seed for all randomness")
        ->capture_default_str();
}

GenConfig to_config(const GenFlags& gf) {
    GenConfig cfg;
    cfg.kind = activation_from_string(gf.activation);
    cfg.r = gf.r;
    cfg.s = gf.s;
    cfg.nodes = gf.nodes;
    cfg.strategy = strategy_from_string(gf.strategy);
    cfg.seed = gf.seed;
    cfg.validate();
    return cfg;
}

struct SolveFlags {
    std::string output_range = "unit";
    double ridge = 0.0;
    double svd_tol = 1e-10;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& sf) {
    cmd->add_option("--output-range", sf.output_range, "target scaling: unit|sym")
        ->capture_default_str();
    cmd->add_option("--ridge", sf.ridge, "ridge penalty (0 = pseudoinverse solve)")
        ->capture_default_str();
    cmd->add_option("--svd-tol", sf.svd_tol, "relative singular value cutoff")
        ->capture_default_str();
}

TrainOptions to_options(const SolveFlags& sf) {
    TrainOptions opts;
    if (sf.output_range == "unit") {
        opts.output_lo = 0.0;
        opts.output_hi = 1.0;
    } else if (sf.output_range == "sym") {
        opts.output_lo = -1.0;
        opts.output_hi = 1.0;
    } else {
        throw ConfigError("unknown output range '" + sf.output_range +
                          "' (expected unit|sym)");
    }
    opts.ridge = sf.ridge;
    opts.svd_rel_tol = sf.svd_tol;
    return opts;
}

void print_stats(const std::string& label, const TrialStats& st) {
    std::cout << label << ": trials " << st.trials << ", train rmse " << st.mean_train_rmse
              << " +- " << st.std_train_rmse << ", test rmse " << st.mean_test_rmse << " +- "
              << st.std_test_rmse << '\n';
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

// ------------------------------------------------------------------ commands

struct TrainArgs {
    DataFlags data;
    GenFlags gen;
    SolveFlags solve;
    std::string model_out;
};

void cmd_train(const TrainArgs& a) {
    const Dataset ds = build_train_only(a.data, a.gen.seed);
    const GenConfig cfg = to_config(a.gen);
    const TrainOptions opts = to_options(a.solve);

    const TrainedModel model = train(ds.X, ds.Y, cfg, opts);
    const double train_rmse =
        rmse(predict_normalized(model, ds.X), model.normalizer.normalize_outputs(ds.Y));
    std::cout << "samples: " << ds.size() << ", inputs: " << ds.dim() << ", nodes: "
              << cfg.nodes << ", rank: " << model.rank << '\n';
    std::cout << "train rmse: " << train_rmse << " (normalized units)\n";
    if (!a.model_out.empty()) {
        save(model, a.model_out);
        std::cout << "model written to " << a.model_out << '\n';
    }
}

struct PredictArgs {
    std::string model_in;
    std::string csv;
    std::string target_column;
    bool no_header = false;
    std::string out;
};

void cmd_predict(const PredictArgs& a) {
    const TrainedModel model = load(a.model_in);

    Matrix X;
    std::optional<Vector> targets;
    if (!a.target_column.empty()) {
        const Dataset ds = load_csv(a.csv, a.target_column, !a.no_header);
        X = ds.X;
        targets = ds.Y;
    } else {
        X = load_csv_features(a.csv, !a.no_header);
    }

    const Vector pred = predict(model, X);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!a.out.empty() && a.out != "-") {
        file.open(a.out);
        if (!file)
            throw IoError("cannot open '" + a.out + "' for writing");
        os = &file;
    }
    *os << std::setprecision(9) << "prediction\n";
    for (Index l = 0; l < pred.size(); ++l)
        *os << pred[l] << '\n';
    if (os == &file && !file)
        throw IoError("write to '" + a.out + "' failed");

    if (targets) {
        std::ostream& report = os == &file ? std::cout : std::cerr;
        report << std::setprecision(6) << "rmse: " << rmse(pred, *targets)
               << " (raw units)\n";
    }
}

struct BenchArgs {
    DataFlags data;
    GenFlags gen;
    SolveFlags solve;
    std::int64_t trials = 25;
    bool raw_units = false;
    std::string out;
};

void cmd_bench(const BenchArgs& a) {
    const TrainTest tt = build_train_test(a.data, a.gen.seed);
    const GenConfig cfg = to_config(a.gen);
    const TrainOptions opts = to_options(a.solve);

    const TrialStats st =
        run_trials(tt.train, tt.test, cfg, a.trials, a.gen.seed, opts, a.raw_units);
    print_stats("bench", st);
    if (!a.out.empty()) {
        export_results(st, a.out);
        std::cout << "trial table written to " << a.out << '\n';
    }
}

struct SweepArgs {
    DataFlags data;
    GenFlags gen; // r/s unused; grids below drive them
    SolveFlags solve;
    std::vector<double> r_grid;
    std::vector<double> s_grid;
    std::int64_t folds = 10;
    std::int64_t trials = 25;
    std::string out_dir = ".";
};

void cmd_sweep(const SweepArgs& a) {
    const TrainTest tt = build_train_test(a.data, a.gen.seed);
    const Activation kind = activation_from_string(a.gen.activation);
    const BiasStrategy strategy = strategy_from_string(a.gen.strategy);
    const TrainOptions opts = to_options(a.solve);

    const std::vector<double> r_grid = a.r_grid.empty() ? default_r_grid(kind) : a.r_grid;
    const std::vector<double> s_grid = a.s_grid.empty() ? default_s_grid() : a.s_grid;

    const GridSearchResult grid = cross_validate_grid(tt.train, kind, r_grid, s_grid, a.folds,
                                                      a.gen.nodes, strategy, a.gen.seed, opts);
    std::cout << "grid: " << r_grid.size() << " x " << s_grid.size() << " cells, "
              << grid.folds << " folds\n";
    std::cout << "best cell: r " << grid.best_r << ", s " << grid.best_s << '\n';
    export_results(grid, out_path(a.out_dir, "sweep_grid.csv"));

    GenConfig cfg;
    cfg.kind = kind;
    cfg.r = grid.best_r;
    cfg.s = grid.best_s;
    cfg.nodes = a.gen.nodes;
    cfg.strategy = strategy;
    cfg.seed = a.gen.seed;
    const TrialStats st = run_trials(tt.train, tt.test, cfg, a.trials, a.gen.seed, opts);
    print_stats("sweep", st);
    export_results(st, out_path(a.out_dir, "sweep_trials.csv"));
    std::cout << "tables written to " << a.out_dir << '\n';
}

struct DemoArgs {
    std::string name;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

void write_contrast_csv(const std::string& path, const TrialStats& proposed,
                        const TrialStats& baseline) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os << std::setprecision(6) << "arm,trial,seed,train_rmse,test_rmse\n";
    auto rows = [&os](const std::string& arm, const TrialStats& st) {
        for (size_t t = 0; t < st.per_trial.size(); ++t) {
            const auto& r = st.per_trial[t];
            os << arm << ',' << (t + 1) << ',' << r.seed << ',' << r.train_rmse << ','
               << r.test_rmse << '\n';
        }
        os << arm << ",summary," << st.trials << ',' << st.mean_train_rmse << ','
           << st.mean_test_rmse << '\n';
    };
    rows("anchored", proposed);
    rows("fixed-range", baseline);
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

void demo_curve(TargetFunction tf, const GenConfig& cfg, const TrainOptions& opts,
                const DemoArgs& a, const std::string& stem, Index curve_samples,
                Index trials) {
    DataFlags df;
    df.tf = to_string(tf);
    const TrainTest tt = build_synthetic(df, a.seed);

    GenConfig seeded = cfg;
    seeded.seed = a.seed;
    const TrainedModel model = train(tt.train.X, tt.train.Y, seeded, opts);
    export_fit_curve(model, tf, curve_samples, out_path(a.out_dir, stem + "_curve.csv"));

    const TrialStats st = run_trials(tt.train, tt.test, cfg, trials, a.seed, opts);
    print_stats(stem, st);
    export_results(st, out_path(a.out_dir, stem + "_trials.csv"));
}

void cmd_demo(const DemoArgs& a) {
    // Scenario registry; every number a scenario needs lives here.
    if (a.name == "osc1d") {
        GenConfig cfg{Activation::Sigmoid, 0.1, 3.0, 100, BiasStrategy::UniformPoint, a.seed};
        TrainOptions sym{-1.0, 1.0, 1e-10, 0.0};
        demo_curve(TargetFunction::Osc1D, cfg, sym, a, "osc1d", 300, 5);
    } else if (a.name == "osc2d") {
        GenConfig cfg{Activation::Sigmoid, 0.1, 5.0, 500, BiasStrategy::UniformPoint, a.seed};
        TrainOptions sym{-1.0, 1.0, 1e-10, 0.0};
        demo_curve(TargetFunction::Osc2D, cfg, sym, a, "osc2d", 50, 3);
    } else if (a.name == "peaks") {
        const struct {
            Activation kind;
            double r, s;
        } cells[] = {{Activation::Sigmoid, 0.04, 40.0},
                     {Activation::Gaussian, 0.54, 100.0},
                     {Activation::Cosine, 0.08, 190.0},
                     {Activation::Softplus, 0.32, 120.0}};
        DataFlags df;
        df.tf = "peaks";
        const TrainTest tt = build_synthetic(df, a.seed);
        std::ofstream summary(out_path(a.out_dir, "peaks_summary.csv"));
        if (!summary)
            throw IoError("cannot write peaks summary");
        summary << std::setprecision(6)
                << "activation,r,s,mean_train_rmse,mean_test_rmse,std_test_rmse\n";
        for (const auto& cell : cells) {
            GenConfig cfg{cell.kind, cell.r, cell.s, 100, BiasStrategy::UniformPoint, a.seed};
            GenConfig seeded = cfg;
            seeded.seed = a.seed;
            const TrainedModel model = train(tt.train.X, tt.train.Y, seeded, TrainOptions{});
            export_fit_curve(model, TargetFunction::Peaks1D, 300,
                             out_path(a.out_dir, "peaks_" + to_string(cell.kind) + "_curve.csv"));
            const TrialStats st = run_trials(tt.train, tt.test, cfg, 5, a.seed, TrainOptions{});
            print_stats("peaks/" + to_string(cell.kind), st);
            summary << to_string(cell.kind) << ',' << cell.r << ',' << cell.s << ','
                    << st.mean_train_rmse << ',' << st.mean_test_rmse << ','
                    << st.std_test_rmse << '\n';
        }
    } else if (a.name == "baseline-contrast") {
        DataFlags df;
        df.tf = "osc1d";
        const TrainTest tt = build_synthetic(df, a.seed);
        GenConfig cfg{Activation::Sigmoid, 0.1, 3.0, 100, BiasStrategy::UniformPoint, a.seed};
        const auto [proposed, baseline] =
            compare_baseline(tt.train, tt.test, cfg, BaselineRanges{}, 10, a.seed);
        print_stats("anchored", proposed);
        print_stats("fixed-range", baseline);
        write_contrast_csv(out_path(a.out_dir, "baseline_contrast.csv"), proposed, baseline);
    } else {
        throw ConfigError("unknown demo '" + a.name +
                          "' (expected osc1d|osc2d|peaks|baseline-contrast)");
    }
    std::cout << "artifacts written to " << a.out_dir << '\n';
}

struct InspectArgs {
    GenFlags gen;
    std::int64_t dims = 1;
    std::string csv;
    bool no_header = false;
    std::string out;
};

void cmd_gen_inspect(const InspectArgs& a) {
    const Activation kind = activation_from_string(a.gen.activation);
    const RDomain dom = r_domain(kind);
    const SigmaInterval interval = sigma_interval(kind, a.gen.r, a.gen.s);

    std::cout << "activation: " << to_string(kind) << ", r: " << a.gen.r << ", s: " << a.gen.s
              << '\n';
    std::cout << "r domain: " << dom.describe() << '\n';
    std::cout << "sigma magnitude interval: [" << interval.lo << ", " << interval.hi << "]\n";

    GenConfig cfg;
    cfg.kind = kind;
    cfg.r = a.gen.r;
    cfg.s = a.gen.s;
    cfg.nodes = a.gen.nodes;
    cfg.strategy = strategy_from_string(a.gen.strategy);
    cfg.seed = a.gen.seed;

    std::optional<Matrix> inputs;
    if (!a.csv.empty()) {
        Matrix X = load_csv_features(a.csv, !a.no_header);
        // Inspect on the normalized scale the generator actually sees.
        for (Index k = 0; k < X.cols(); ++k) {
            const double lo = X.col(k).minCoeff();
            const double span = X.col(k).maxCoeff() - lo;
            if (span > 0.0)
                X.col(k) = (X.col(k).array() - lo) / span;
            else
                X.col(k).setConstant(0.5);
        }
        inputs = std::move(X);
    }

    const Index n = inputs ? inputs->cols() : a.dims;
    const HiddenParams p = generate(cfg, n, inputs ? &*inputs : nullptr);
    std::cout << "generated " << p.nodes() << " nodes over " << n << " input(s), strategy "
              << to_string(cfg.strategy) << ", seed " << cfg.seed << '\n';
    std::cout << "sigma magnitude range seen: [" << p.sigma.cwiseAbs().minCoeff() << ", "
              << p.sigma.cwiseAbs().maxCoeff() << "]\n";

    if (!a.out.empty()) {
        std::ofstream os(a.out);
        if (!os)
            throw IoError("cannot open '" + a.out + "' for writing");
        os << std::setprecision(9) << "node,sigma,bias";
        for (Index k = 0; k < n; ++k)
            os << ",w" << k;
        for (Index k = 0; k < n; ++k)
            os << ",anchor" << k;
        os << '\n';
        for (Index i = 0; i < p.nodes(); ++i) {
            os << i << ',' << p.sigma[i] << ',' << p.biases[i];
            for (Index k = 0; k < n; ++k)
                os << ',' << p.weights(i, k);
            for (Index k = 0; k < n; ++k)
                os << ',' << p.anchors(i, k);
            os << '\n';
        }
        if (!os)
            throw IoError("write to '" + a.out + "' failed");
        std::cout << "node table written to " << a.out << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    std::cout << std::setprecision(6);

    CLI::App app{"feedforward networks with anchored random hidden nodes"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand("train", "fit a model and optionally save it");
    add_data_flags(train_cmd, train_args.data, false);
    add_gen_flags(train_cmd, train_args.gen, true);
    add_solve_flags(train_cmd, train_args.solve);
    train_cmd->add_option("--model-out", train_args.model_out, "write the fitted model here");
    train_cmd->callback([&train_args] { cmd_train(train_args); });

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "apply a saved model to new inputs");
    predict_cmd->add_option("--model-in", predict_args.model_in, "model file from train")
        ->required();
    predict_cmd->add_option("--data", predict_args.csv, "CSV of inputs (features only, "
                                                        "unless --target-column)")
        ->required();
    predict_cmd->add_option("--target-column", predict_args.target_column,
                            "treat this column as targets and report raw-unit rmse");
    predict_cmd->add_flag("--no-header", predict_args.no_header, "CSV has no header row");
    predict_cmd->add_option("--out", predict_args.out, "prediction CSV ('-' = stdout)");
    predict_cmd->callback([&predict_args] { cmd_predict(predict_args); });

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "multi-trial train/test evaluation");
    add_data_flags(bench_cmd, bench_args.data, true);
    add_gen_flags(bench_cmd, bench_args.gen, true);
    add_solve_flags(bench_cmd, bench_args.solve);
    bench_cmd->add_option("--trials", bench_args.trials, "independent repetitions")
        ->capture_default_str();
    bench_cmd->add_flag("--raw-units", bench_args.raw_units, "report rmse in raw target units");
    bench_cmd->add_option("--out", bench_args.out, "write per-trial table here");
    bench_cmd->callback([&bench_args] { cmd_bench(bench_args); });

    SweepArgs sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "cross-validated grid search, then trials at the best cell");
    add_data_flags(sweep_cmd, sweep_args.data, true);
    add_gen_flags(sweep_cmd, sweep_args.gen, false);
    add_solve_flags(sweep_cmd, sweep_args.solve);
    sweep_cmd->add_option("--r-grid", sweep_args.r_grid, "comma-separated r values")
        ->delimiter(',');
    sweep_cmd->add_option("--s-grid", sweep_args.s_grid, "comma-separated s values")
        ->delimiter(',');
    sweep_cmd->add_option("--folds", sweep_args.folds, "cross-validation folds")
        ->capture_default_str();
    sweep_cmd->add_option("--trials", sweep_args.trials, "trials at the selected cell")
        ->capture_default_str();
    sweep_cmd->add_option("--out-dir", sweep_args.out_dir, "directory for result tables")
        ->capture_default_str();
    sweep_cmd->callback([&sweep_args] { cmd_sweep(sweep_args); });

    DemoArgs demo_args;
    auto* demo_cmd = app.add_subcommand("demo", "canned benchmark scenarios");
    demo_cmd->add_option("name", demo_args.name, "osc1d|osc2d|peaks|baseline-contrast")
        ->required();
    demo_cmd->add_option("--seed", demo_args.seed, "base seed")->capture_default_str();
    demo_cmd->add_option("--out-dir", demo_args.out_dir, "directory for artifacts")
        ->capture_default_str();
    demo_cmd->callback([&demo_args] { cmd_demo(demo_args); });

    InspectArgs inspect_args;
    auto* inspect_cmd =
        app.add_subcommand("gen-inspect", "show the admissible weight interval and a sample "
                                          "of generated nodes");
    add_gen_flags(inspect_cmd, inspect_args.gen, true);
    inspect_cmd->add_option("--dims", inspect_args.dims, "input dimension when no --data")
        ->capture_default_str();
    inspect_cmd->add_option("--data", inspect_args.csv,
                            "CSV of inputs for the data/cluster strategies");
    inspect_cmd->add_flag("--no-header", inspect_args.no_header, "CSV has no header row");
    inspect_cmd->add_option("--out", inspect_args.out, "write the full node table here");
    inspect_cmd->callback([&inspect_args] { cmd_gen_inspect(inspect_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
