#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rhn/activation.hpp"
#include "rhn/rng.hpp"
#include "rhn/types.hpp"

namespace rhn {

// How the anchor point x in b = -a'x is chosen for each node.
enum class BiasStrategy {
    UniformPoint,    // i.i.d. U(0,1) coordinates; needs no data
    TrainingPoint,   // a uniformly drawn training row (with replacement)
    ClusterPrototype // centroid i of a k-means run with k = node count
};

std::string to_string(BiasStrategy strategy);
BiasStrategy strategy_from_string(std::string_view name); // uniform | data | cluster

struct GenConfig {
    Activation kind = Activation::Sigmoid;
    double r = 0.1;
    double s = 5.0;
    Index nodes = 1;
    BiasStrategy strategy = BiasStrategy::UniformPoint;
    uint64_t seed = 0;

    // Throws DomainError/ConfigError on out-of-range r, s <= 1, or nodes < 1.
    void validate() const;
};

// One hidden layer's worth of random parameters. Row i of `weights` is node
// i's input weight vector; `sigma[i]` is its row sum and `anchors` row i the
// point where the node's argument is zero. Baseline-generated layers have no
// anchors (see has_anchors).
struct HiddenParams {
    Matrix weights; // m x n
    Vector biases;  // m
    Matrix anchors; // m x n, or 0 x 0 for fixed-range layers
    Vector sigma;   // m row sums

    Index nodes() const { return weights.rows(); }
    Index dim() const { return weights.cols(); }
    bool has_anchors() const { return anchors.size() > 0; }
};

// Magnitude uniform on [interval.lo, interval.hi], sign equiprobable.
double sample_sigma(const SigmaInterval& interval, Rng& rng);

// a_k = zeta_k * sigma / sum(zeta). Deterministic core; throws
// NumericalError when |sum(zeta)| < 1e-3 instead of dividing.
Vector distribute_weights(double sigma, const Vector& zeta);

// Same, with zeta ~ U(-1,1)^n drawn from rng; resamples the whole vector
// while the sum is near zero (cap 1000 attempts).
Vector distribute_weights(double sigma, Index n, Rng& rng);

// Pick the anchor for one node. `inputs` is required for TrainingPoint,
// `prototypes` for ClusterPrototype (row = node_index); pass nullptr
// otherwise.
Vector select_anchor(BiasStrategy strategy, Index n, const Matrix* inputs,
                     const Matrix* prototypes, Index node_index, Rng& rng);

// b = -a'x so the node's argument vanishes at the anchor.
double compute_bias(const Vector& a, const Vector& x);

// k-means centroids (k = m) on rows of `inputs`: initial centroids are m
// distinct rows drawn by seed, then Lloyd iterations (cap 100, relative
// shift tolerance 1e-6); a cluster that empties keeps its previous centroid.
Matrix cluster_prototypes(const Matrix& inputs, Index m, uint64_t seed);

// The full generation procedure: per node, sample sigma, spread it over the
// weights, pick an anchor, set the bias. `inputs` (normalized to [0,1]^n)
// is required by the data-dependent strategies and must be provided then.
HiddenParams generate(const GenConfig& config, Index n, const Matrix* inputs = nullptr);

// Naive fixed-range layer: weights i.i.d. uniform on [w_lo,w_hi], biases on
// [b_lo,b_hi]. Exists as the comparison arm; anchors are left unset.
HiddenParams baseline_generate(Index m, Index n, double w_lo, double w_hi,
                               double b_lo, double b_hi, uint64_t seed);

} // namespace rhn
