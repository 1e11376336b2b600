#pragma once

#include "rhn/activation.hpp"
#include "rhn/param_gen.hpp"
#include "rhn/types.hpp"

namespace rhn {

struct LsqSolution {
    Vector beta;
    Index rank = 0;
    double residual_norm = 0.0; // ||H*beta - Y||_2
};

// Row l is [h_1(x_l), ..., h_m(x_l)] for x_l = row l of X.
Matrix build_hidden_matrix(const HiddenParams& params, Activation kind, const Matrix& X);

// Minimum-norm least-squares solution beta = pinv(H) * Y via SVD; singular
// values below rel_tol * sigma_max are treated as zero.
LsqSolution solve_output_weights(const Matrix& H, const Vector& Y, double rel_tol = 1e-10);

// Minimizes ||H*beta - Y||^2 + lambda * ||beta||^2. With lambda = 0 falls
// back to the pseudoinverse path. Off by default everywhere; a safeguard
// for nearly singular H.
LsqSolution ridge_solve(const Matrix& H, const Vector& Y, double lambda_ridge);

} // namespace rhn
