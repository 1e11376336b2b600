#include "rhn/param_gen.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "rhn/errors.hpp"

namespace rhn {

namespace {
// Below this, dividing by sum(zeta) in the weight split would blow the
// weights past sigma/eps; the whole zeta vector is redrawn instead.
constexpr double kZetaSumEps = 1e-3;
constexpr int kZetaResampleCap = 1000;
} // namespace

std::string to_string(BiasStrategy strategy) {
    switch (strategy) {
    case BiasStrategy::UniformPoint: return "uniform";
    case BiasStrategy::TrainingPoint: return "data";
    case BiasStrategy::ClusterPrototype: return "cluster";
    }
    throw ContractError("unknown bias strategy");
}

BiasStrategy strategy_from_string(std::string_view name) {
    if (name == "uniform") return BiasStrategy::UniformPoint;
    if (name == "data") return BiasStrategy::TrainingPoint;
    if (name == "cluster") return BiasStrategy::ClusterPrototype;
    throw ConfigError("unknown bias strategy '" + std::string(name) +
                      "' (expected uniform|data|cluster)");
}

void GenConfig::validate() const {
    sigma_interval(kind, r, s); // throws DomainError on bad r or s
    if (nodes < 1)
        throw ConfigError("node count must be >= 1, got " + std::to_string(nodes));
}

double sample_sigma(const SigmaInterval& interval, Rng& rng) {
    const double magnitude = rng.uniform(interval.lo, interval.hi);
    return rng.flip() ? -magnitude : magnitude;
}

Vector distribute_weights(double sigma, const Vector& zeta) {
    if (zeta.size() < 1)
        throw ContractError("distribute_weights: empty share vector");
    if (!std::isfinite(sigma) || sigma == 0.0)
        throw ContractError("distribute_weights: sigma must be finite and nonzero");
    const double sum = zeta.sum();
    if (std::abs(sum) < kZetaSumEps)
        throw NumericalError("distribute_weights: share sum " + std::to_string(sum) +
                             " too close to zero");
    return zeta * (sigma / sum);
}

Vector distribute_weights(double sigma, Index n, Rng& rng) {
    if (n < 1)
        throw ContractError("distribute_weights: dimension must be >= 1");
    if (!std::isfinite(sigma) || sigma == 0.0)
        throw ContractError("distribute_weights: sigma must be finite and nonzero");
    Vector zeta(n);
    for (int attempt = 0; attempt < kZetaResampleCap; ++attempt) {
        for (Index k = 0; k < n; ++k)
            zeta[k] = rng.symmetric();
        const double sum = zeta.sum();
        if (std::abs(sum) >= kZetaSumEps)
            return zeta * (sigma / sum);
    }
    throw NumericalError("distribute_weights: share sum stayed below " +
                         std::to_string(kZetaSumEps) + " after " +
                         std::to_string(kZetaResampleCap) + " redraws");
}

Vector select_anchor(BiasStrategy strategy, Index n, const Matrix* inputs,
                     const Matrix* prototypes, Index node_index, Rng& rng) {
    switch (strategy) {
    case BiasStrategy::UniformPoint: {
        Vector x(n);
        for (Index k = 0; k < n; ++k)
            x[k] = rng.unit();
        return x;
    }
    case BiasStrategy::TrainingPoint: {
        if (inputs == nullptr || inputs->rows() == 0)
            throw ConfigError("data bias strategy requires training inputs");
        if (inputs->cols() != n)
            throw ContractError("select_anchor: input dimension mismatch");
        const auto row = static_cast<Index>(rng.below(static_cast<uint64_t>(inputs->rows())));
        return inputs->row(row).transpose();
    }
    case BiasStrategy::ClusterPrototype: {
        if (prototypes == nullptr || prototypes->rows() == 0)
            throw ConfigError("cluster bias strategy requires prototypes");
        if (prototypes->cols() != n)
            throw ContractError("select_anchor: prototype dimension mismatch");
        if (node_index < 0 || node_index >= prototypes->rows())
            throw ContractError("select_anchor: node index outside prototype rows");
        return prototypes->row(node_index).transpose();
    }
    }
    throw ContractError("unknown bias strategy");
}

double compute_bias(const Vector& a, const Vector& x) {
    if (a.size() != x.size())
        throw ContractError("compute_bias: weight and anchor lengths differ");
    return -a.dot(x);
}

Matrix cluster_prototypes(const Matrix& inputs, Index m, uint64_t seed) {
    const Index N = inputs.rows();
    const Index n = inputs.cols();
    if (m < 1)
        throw ConfigError("cluster count must be >= 1");
    if (N < m)
        throw ConfigError("cluster count " + std::to_string(m) + " exceeds sample count " +
                          std::to_string(N));

    Rng rng(seed);

    // Initial centroids: m distinct rows (partial Fisher-Yates on indices).
    std::vector<Index> idx(static_cast<size_t>(N));
    std::iota(idx.begin(), idx.end(), Index{0});
    Matrix centroids(m, n);
    for (Index i = 0; i < m; ++i) {
        const Index j = i + static_cast<Index>(rng.below(static_cast<uint64_t>(N - i)));
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
        centroids.row(i) = inputs.row(idx[static_cast<size_t>(i)]);
    }

    std::vector<Index> assign(static_cast<size_t>(N), 0);
    Matrix next(m, n);
    std::vector<Index> counts(static_cast<size_t>(m), 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (Index l = 0; l < N; ++l) {
            Index best = 0;
            double best_d = (inputs.row(l) - centroids.row(0)).squaredNorm();
            for (Index i = 1; i < m; ++i) {
                const double d = (inputs.row(l) - centroids.row(i)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            assign[static_cast<size_t>(l)] = best;
        }
        next.setZero();
        std::fill(counts.begin(), counts.end(), Index{0});
        for (Index l = 0; l < N; ++l) {
            next.row(assign[static_cast<size_t>(l)]) += inputs.row(l);
            ++counts[static_cast<size_t>(assign[static_cast<size_t>(l)])];
        }
        double shift = 0.0;
        double scale = 0.0;
        for (Index i = 0; i < m; ++i) {
            if (counts[static_cast<size_t>(i)] == 0)
                next.row(i) = centroids.row(i); // empty cluster keeps its centroid
            else
                next.row(i) /= static_cast<double>(counts[static_cast<size_t>(i)]);
            shift = std::max(shift, (next.row(i) - centroids.row(i)).norm());
            scale = std::max(scale, centroids.row(i).norm());
        }
        centroids = next;
        if (shift <= 1e-6 * (1.0 + scale))
            break;
    }
    return centroids;
}

HiddenParams generate(const GenConfig& config, Index n, const Matrix* inputs) {
    config.validate();
    if (n < 1)
        throw ContractError("generate: input dimension must be >= 1");

    const bool needs_data = config.strategy != BiasStrategy::UniformPoint;
    if (needs_data) {
        if (inputs == nullptr || inputs->rows() == 0)
            throw ConfigError(to_string(config.strategy) +
                              " bias strategy requires training inputs");
        if (inputs->cols() != n)
            throw ContractError("generate: inputs have " + std::to_string(inputs->cols()) +
                                " columns, expected " + std::to_string(n));
        if (inputs->minCoeff() < -1e-9 || inputs->maxCoeff() > 1.0 + 1e-9)
            throw ContractError("generate: inputs must lie in [0,1]^n — normalize them first");
    }

    const SigmaInterval interval = sigma_interval(config.kind, config.r, config.s);
    Rng rng(config.seed);

    Matrix prototypes;
    if (config.strategy == BiasStrategy::ClusterPrototype) {
        if (inputs->rows() < config.nodes)
            throw ConfigError("cluster bias strategy needs at least one training row per node");
        prototypes = cluster_prototypes(*inputs, config.nodes, rng.word());
    }

    HiddenParams p;
    p.weights.resize(config.nodes, n);
    p.biases.resize(config.nodes);
    p.anchors.resize(config.nodes, n);
    p.sigma.resize(config.nodes);
    for (Index i = 0; i < config.nodes; ++i) {
        p.sigma[i] = sample_sigma(interval, rng);
        const Vector a = distribute_weights(p.sigma[i], n, rng);
        const Vector x = select_anchor(config.strategy, n, inputs, &prototypes, i, rng);
        p.weights.row(i) = a.transpose();
        p.anchors.row(i) = x.transpose();
        p.biases[i] = compute_bias(a, x);
    }
    return p;
}

HiddenParams baseline_generate(Index m, Index n, double w_lo, double w_hi, double b_lo,
                               double b_hi, uint64_t seed) {
    if (m < 1)
        throw ConfigError("node count must be >= 1");
    if (n < 1)
        throw ContractError("input dimension must be >= 1");
    if (w_lo > w_hi || b_lo > b_hi)
        throw ConfigError("range lower bound exceeds upper bound");

    Rng rng(seed);
    HiddenParams p;
    p.weights.resize(m, n);
    p.biases.resize(m);
    p.anchors.resize(0, 0);
    p.sigma.resize(m);
    for (Index i = 0; i < m; ++i) {
        for (Index k = 0; k < n; ++k)
            p.weights(i, k) = rng.uniform(w_lo, w_hi);
        p.biases[i] = rng.uniform(b_lo, b_hi);
        p.sigma[i] = p.weights.row(i).sum();
    }
    return p;
}

} // namespace rhn
