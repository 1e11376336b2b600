#include "rhn/model.hpp"

#include <fstream>

#include "json.hpp"

#include "rhn/errors.hpp"

namespace rhn {

using nlohmann::json;

Matrix Normalizer::normalize_inputs(const Matrix& X) const {
    if (X.cols() != dim())
        throw ContractError("normalize_inputs: " + std::to_string(X.cols()) +
                            " columns, normalizer fitted on " + std::to_string(dim()));
    Matrix out(X.rows(), X.cols());
    for (Index k = 0; k < X.cols(); ++k) {
        const double span = input_max[k] - input_min[k];
        if (span > 0.0)
            out.col(k) = ((X.col(k).array() - input_min[k]) / span).cwiseMax(0.0).cwiseMin(1.0);
        else
            out.col(k).setConstant(0.5); // constant training dimension
    }
    return out;
}

Vector Normalizer::normalize_outputs(const Vector& Y) const {
    const double span = output_max - output_min;
    if (span > 0.0)
        return output_lo + (Y.array() - output_min) * ((output_hi - output_lo) / span);
    return Vector::Constant(Y.size(), 0.5 * (output_lo + output_hi));
}

Vector Normalizer::denormalize_outputs(const Vector& Y) const {
    const double span = output_max - output_min;
    if (span > 0.0)
        return output_min + (Y.array() - output_lo) * (span / (output_hi - output_lo));
    return Vector::Constant(Y.size(), output_min);
}

Normalizer fit_normalizer(const Matrix& X_raw, const Vector& Y_raw, double output_lo,
                          double output_hi) {
    if (X_raw.rows() != Y_raw.size())
        throw ContractError("fit_normalizer: " + std::to_string(X_raw.rows()) +
                            " input rows vs " + std::to_string(Y_raw.size()) + " targets");
    if (X_raw.rows() < 1 || X_raw.cols() < 1)
        throw ContractError("fit_normalizer: empty data");
    if (!X_raw.allFinite() || !Y_raw.allFinite())
        throw ContractError("fit_normalizer: non-finite data");
    if (!(output_hi > output_lo))
        throw ConfigError("output range upper bound must exceed lower bound");

    Normalizer norm;
    norm.input_min = X_raw.colwise().minCoeff().transpose();
    norm.input_max = X_raw.colwise().maxCoeff().transpose();
    norm.output_lo = output_lo;
    norm.output_hi = output_hi;
    norm.output_min = Y_raw.minCoeff();
    norm.output_max = Y_raw.maxCoeff();
    return norm;
}

TrainedModel train_with_hidden(const Matrix& X_raw, const Vector& Y_raw, Activation kind,
                               const std::function<HiddenParams(const Matrix&)>& gen,
                               const TrainOptions& opts) {
    const Normalizer norm = fit_normalizer(X_raw, Y_raw, opts.output_lo, opts.output_hi);
    const Matrix Xn = norm.normalize_inputs(X_raw);
    const Vector Yn = norm.normalize_outputs(Y_raw);

    TrainedModel model;
    model.kind = kind;
    model.normalizer = norm;
    model.hidden = gen(Xn);

    const Matrix H = build_hidden_matrix(model.hidden, kind, Xn);
    const LsqSolution sol = opts.ridge > 0.0 ? ridge_solve(H, Yn, opts.ridge)
                                             : solve_output_weights(H, Yn, opts.svd_rel_tol);
    model.beta = sol.beta;
    model.rank = sol.rank;
    model.residual_norm = sol.residual_norm;
    return model;
}

TrainedModel train(const Matrix& X_raw, const Vector& Y_raw, const GenConfig& config,
                   const TrainOptions& opts) {
    if (X_raw.rows() < 2)
        throw ContractError("train: need at least 2 samples, got " +
                            std::to_string(X_raw.rows()));
    config.validate();
    TrainedModel model = train_with_hidden(
        X_raw, Y_raw, config.kind,
        [&config](const Matrix& Xn) { return generate(config, Xn.cols(), &Xn); }, opts);
    model.gen_config = config;
    return model;
}

Vector predict_normalized(const TrainedModel& model, const Matrix& X_raw) {
    if (X_raw.cols() != model.hidden.dim())
        throw ContractError("predict: " + std::to_string(X_raw.cols()) +
                            " input columns, model expects " +
                            std::to_string(model.hidden.dim()));
    const Matrix Xn = model.normalizer.normalize_inputs(X_raw);
    const Matrix H = build_hidden_matrix(model.hidden, model.kind, Xn);
    return H * model.beta;
}

Vector predict(const TrainedModel& model, const Matrix& X_raw) {
    return model.normalizer.denormalize_outputs(predict_normalized(model, X_raw));
}

namespace {

constexpr int kModelVersion = 1;

json to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i)
        arr.push_back(v[i]);
    return arr;
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Vector vector_from_json(const json& arr) {
    Vector v(static_cast<Index>(arr.size()));
    Index i = 0;
    for (const auto& x : arr)
        v[i++] = x.get<double>();
    return v;
}

Matrix matrix_from_json(const json& rows) {
    if (rows.empty())
        return Matrix(0, 0);
    const auto nr = static_cast<Index>(rows.size());
    const auto nc = static_cast<Index>(rows.front().size());
    Matrix m(nr, nc);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != nc)
            throw FormatError("model file: ragged matrix rows");
        Index j = 0;
        for (const auto& x : row)
            m(i, j++) = x.get<double>();
        ++i;
    }
    return m;
}

} // namespace

void save(const TrainedModel& model, const std::string& path) {
    json j;
    j["format"] = "rhn-model";
    j["version"] = kModelVersion;
    j["kind"] = to_string(model.kind);
    j["normalizer"] = {{"input_min", to_json(model.normalizer.input_min)},
                       {"input_max", to_json(model.normalizer.input_max)},
                       {"output_lo", model.normalizer.output_lo},
                       {"output_hi", model.normalizer.output_hi},
                       {"output_min", model.normalizer.output_min},
                       {"output_max", model.normalizer.output_max}};
    j["hidden"] = {{"weights", to_json(model.hidden.weights)},
                   {"biases", to_json(model.hidden.biases)},
                   {"sigma", to_json(model.hidden.sigma)}};
    j["hidden"]["anchors"] =
        model.hidden.has_anchors() ? to_json(model.hidden.anchors) : json(nullptr);
    j["beta"] = to_json(model.beta);
    j["rank"] = model.rank;
    j["residual_norm"] = model.residual_norm;
    if (model.gen_config) {
        const GenConfig& g = *model.gen_config;
        j["generation"] = {{"kind", to_string(g.kind)}, {"r", g.r},
                           {"s", g.s},                  {"nodes", g.nodes},
                           {"strategy", to_string(g.strategy)}, {"seed", g.seed}};
    }

    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os << j.dump(1) << '\n';
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

TrainedModel load(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "' for reading");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("model file '" + path + "' is not valid: " + e.what());
    }

    try {
        if (!j.is_object() || j.value("format", "") != "rhn-model")
            throw FormatError("'" + path + "' is not a model file");
        const int version = j.at("version").get<int>();
        if (version != kModelVersion)
            throw FormatError("model file version " + std::to_string(version) +
                              " not supported (this build reads version " +
                              std::to_string(kModelVersion) + ")");

        TrainedModel model;
        model.kind = activation_from_string(j.at("kind").get<std::string>());
        const json& n = j.at("normalizer");
        model.normalizer.input_min = vector_from_json(n.at("input_min"));
        model.normalizer.input_max = vector_from_json(n.at("input_max"));
        model.normalizer.output_lo = n.at("output_lo").get<double>();
        model.normalizer.output_hi = n.at("output_hi").get<double>();
        model.normalizer.output_min = n.at("output_min").get<double>();
        model.normalizer.output_max = n.at("output_max").get<double>();
        const json& h = j.at("hidden");
        model.hidden.weights = matrix_from_json(h.at("weights"));
        model.hidden.biases = vector_from_json(h.at("biases"));
        model.hidden.sigma = vector_from_json(h.at("sigma"));
        model.hidden.anchors =
            h.at("anchors").is_null() ? Matrix(0, 0) : matrix_from_json(h.at("anchors"));
        model.beta = vector_from_json(j.at("beta"));
        model.rank = j.at("rank").get<Index>();
        model.residual_norm = j.at("residual_norm").get<double>();
        if (j.contains("generation")) {
            const json& g = j.at("generation");
            GenConfig cfg;
            cfg.kind = activation_from_string(g.at("kind").get<std::string>());
            cfg.r = g.at("r").get<double>();
            cfg.s = g.at("s").get<double>();
            cfg.nodes = g.at("nodes").get<Index>();
            cfg.strategy = strategy_from_string(g.at("strategy").get<std::string>());
            cfg.seed = g.at("seed").get<uint64_t>();
            model.gen_config = cfg;
        }
        if (model.beta.size() != model.hidden.nodes())
            throw FormatError("model file: beta length does not match node count");
        return model;
    } catch (const json::exception& e) {
        throw FormatError("model file '" + path + "' is malformed: " + e.what());
    }
}

} // namespace rhn
