#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rhn/types.hpp"

namespace rhn {

struct Dataset {
    Matrix X;                       // raw units, N x n
    Vector Y;                       // raw units, N
    std::vector<std::string> names; // n feature labels
    std::string provenance;         // free-text source tag

    Index size() const { return X.rows(); }
    Index dim() const { return X.cols(); }
};

// Benchmark targets, all defined on the unit cube of their dimension.
enum class TargetFunction {
    Osc1D,  // sin(20 e^x) x^2
    Osc2D,  // two-variable oscillatory sum
    Peaks1D // three-bump Gaussian mixture
};

std::string to_string(TargetFunction tf);
TargetFunction target_from_string(std::string_view name); // osc1d | osc2d | peaks
int tf_dimension(TargetFunction tf);

double eval_target(TargetFunction tf, const Vector& x);

// Inputs i.i.d. U(0,1)^dim, Y = g(x) + U(-w, w); w = 0 gives exact targets.
Dataset make_synthetic(TargetFunction tf, Index N, double noise_half_width, uint64_t seed);

// Regular grid including both endpoints; dim = 2 is the Cartesian product
// (count^2 rows, first axis varying slowest).
Matrix grid_points(int dim, Index count_per_axis);

// Noise-free targets on a regular grid — the standard test set for fitted
// curves.
Dataset grid_dataset(TargetFunction tf, Index count_per_axis);

// Randomized disjoint partition; train gets round(fraction * N) rows.
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, uint64_t seed);

// Rectangular numeric CSV. target_column is a header name, or a 0-based
// column index when numeric (works with or without a header row).
Dataset load_csv(const std::string& path, const std::string& target_column, bool has_header);

// Same file format, but every column is a feature (prediction inputs).
Matrix load_csv_features(const std::string& path, bool has_header);

} // namespace rhn
