#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rhn/param_gen.hpp"
#include "rhn/solver.hpp"
#include "rhn/types.hpp"

namespace rhn {

// Min-max statistics fitted on training data only. Inputs map to [0,1]^n
// (a constant dimension maps to 0.5); targets map to [output_lo, output_hi].
struct Normalizer {
    Vector input_min;
    Vector input_max;
    double output_lo = 0.0;
    double output_hi = 1.0;
    double output_min = 0.0;
    double output_max = 1.0;

    Index dim() const { return input_min.size(); }

    // Out-of-box inputs are clamped into [0,1] after scaling; the anchors
    // only make sense inside the unit cube.
    Matrix normalize_inputs(const Matrix& X) const;
    Vector normalize_outputs(const Vector& Y) const;
    Vector denormalize_outputs(const Vector& Y) const;
};

Normalizer fit_normalizer(const Matrix& X_raw, const Vector& Y_raw,
                          double output_lo = 0.0, double output_hi = 1.0);

struct TrainOptions {
    double output_lo = 0.0;
    double output_hi = 1.0;
    double svd_rel_tol = 1e-10;
    double ridge = 0.0; // > 0 switches the solve to the ridge path
};

struct TrainedModel {
    Activation kind = Activation::Sigmoid;
    HiddenParams hidden;
    Vector beta;
    Normalizer normalizer;
    std::optional<GenConfig> gen_config; // absent for fixed-range layers
    Index rank = 0;
    double residual_norm = 0.0; // in normalized output units
};

// Fit normalizer -> generate hidden layer -> build H -> solve beta.
// Requires N >= 2 rows.
TrainedModel train(const Matrix& X_raw, const Vector& Y_raw, const GenConfig& config,
                   const TrainOptions& opts = {});

// Same pipeline but the hidden layer comes from a caller-supplied generator
// operating on the normalized inputs. No row-count gate: the k-fold driver
// legitimately trains on single-row folds.
TrainedModel train_with_hidden(const Matrix& X_raw, const Vector& Y_raw, Activation kind,
                               const std::function<HiddenParams(const Matrix&)>& gen,
                               const TrainOptions& opts = {});

// phi(x) = sum_i beta_i h_i(x) on normalized inputs, reported in raw target
// units. predict_normalized skips the final rescale.
Vector predict(const TrainedModel& model, const Matrix& X_raw);
Vector predict_normalized(const TrainedModel& model, const Matrix& X_raw);

// Versioned text format; load(save(m)) predicts bit-identically.
void save(const TrainedModel& model, const std::string& path);
TrainedModel load(const std::string& path);

} // namespace rhn
