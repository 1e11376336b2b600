#include "rhn/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "rhn/errors.hpp"

namespace rhn {

Matrix build_hidden_matrix(const HiddenParams& params, Activation kind, const Matrix& X) {
    if (X.cols() != params.dim())
        throw ContractError("build_hidden_matrix: inputs have " + std::to_string(X.cols()) +
                            " columns, layer expects " + std::to_string(params.dim()));
    if (X.rows() < 1)
        throw ContractError("build_hidden_matrix: empty input set");
    if (!X.allFinite() || !params.weights.allFinite() || !params.biases.allFinite())
        throw ContractError("build_hidden_matrix: non-finite inputs or parameters");

    Matrix Z = X * params.weights.transpose();
    Z.rowwise() += params.biases.transpose();
    const Matrix H = Z.unaryExpr([kind](double z) { return evaluate(kind, z); });
    if (!H.allFinite())
        throw NumericalError("build_hidden_matrix: non-finite activation output");
    return H;
}

LsqSolution solve_output_weights(const Matrix& H, const Vector& Y, double rel_tol) {
    if (H.rows() != Y.size())
        throw ContractError("solve_output_weights: " + std::to_string(H.rows()) +
                            " rows vs " + std::to_string(Y.size()) + " targets");
    if (H.rows() < 1 || H.cols() < 1)
        throw ContractError("solve_output_weights: empty system");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ContractError("solve_output_weights: rel_tol must be in (0, 1)");
    if (!H.allFinite() || !Y.allFinite())
        throw ContractError("solve_output_weights: non-finite entries");

    Eigen::BDCSVD<Matrix> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("singular value decomposition did not converge on a " +
                             std::to_string(H.rows()) + "x" + std::to_string(H.cols()) +
                             " system");
    svd.setThreshold(rel_tol);

    LsqSolution sol;
    sol.beta = svd.solve(Y);
    sol.rank = svd.rank();
    sol.residual_norm = (H * sol.beta - Y).norm();
    return sol;
}

LsqSolution ridge_solve(const Matrix& H, const Vector& Y, double lambda_ridge) {
    if (lambda_ridge < 0.0)
        throw ContractError("ridge_solve: penalty must be >= 0");
    if (lambda_ridge == 0.0)
        return solve_output_weights(H, Y);
    if (H.rows() != Y.size())
        throw ContractError("ridge_solve: row/target length mismatch");
    if (!H.allFinite() || !Y.allFinite())
        throw ContractError("ridge_solve: non-finite entries");

    const Index m = H.cols();
    Matrix G = H.transpose() * H;
    G.diagonal().array() += lambda_ridge;
    const Eigen::LDLT<Matrix> ldlt(G);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("ridge system factorization failed");

    LsqSolution sol;
    sol.beta = ldlt.solve(H.transpose() * Y);
    sol.rank = m; // the penalty makes the system full rank
    sol.residual_norm = (H * sol.beta - Y).norm();
    return sol;
}

} // namespace rhn
