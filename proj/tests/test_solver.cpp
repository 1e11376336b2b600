#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rhn/errors.hpp"
#include "rhn/param_gen.hpp"
#include "rhn/rng.hpp"
#include "rhn/solver.hpp"

using namespace rhn;

namespace {

HiddenParams layer_from(const Matrix& weights, const Vector& biases) {
    HiddenParams p;
    p.weights = weights;
    p.biases = biases;
    p.sigma = weights.rowwise().sum();
    return p;
}

// A reproducible random overdetermined system: N x m hidden matrix from an
// actual generated layer, targets from a smooth function of the inputs.
struct Fixture {
    Matrix H;
    Vector Y;
};

Fixture make_fixture(Index rows, Index nodes, uint64_t seed) {
    Rng rng(seed);
    Matrix X(rows, 2);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < 2; ++j) X(i, j) = rng.unit();
    GenConfig config;
    config.kind = Activation::Sigmoid;
    config.r = 0.1;
    config.s = 5.0;
    config.nodes = nodes;
    config.strategy = BiasStrategy::TrainingPoint;
    config.seed = seed + 1;
    const HiddenParams params = generate(config, 2, &X);
    Fixture f;
    f.H = build_hidden_matrix(params, config.kind, X);
    f.Y = (X.col(0).array() * 3.0 - X.col(1).array().square()).matrix();
    return f;
}

} // namespace

TEST_CASE("hidden matrix of a zero sigmoid node is a column of one-halves") {
    Matrix X(4, 1);
    X << 0.0, 0.25, 0.5, 1.0;
    const HiddenParams p = layer_from(Matrix::Zero(1, 1), Vector::Zero(1));
    const Matrix H = build_hidden_matrix(p, Activation::Sigmoid, X);
    REQUIRE(H.rows() == 4);
    REQUIRE(H.cols() == 1);
    for (Index i = 0; i < 4; ++i) CHECK(H(i, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("hidden matrix of cosine nodes at the origin is all ones") {
    const double pi = std::acos(-1.0);
    Matrix W(2, 1);
    W << pi, 2.0 * pi;
    Matrix X(1, 1);
    X << 0.0;
    const Matrix H = build_hidden_matrix(layer_from(W, Vector::Zero(2)), Activation::Cosine, X);
    REQUIRE(H.rows() == 1);
    REQUIRE(H.cols() == 2);
    CHECK(H(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(H(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hidden matrix of a unit gaussian node evaluates exp(-z^2)") {
    Matrix W(1, 1);
    W << 1.0;
    Matrix X(2, 1);
    X << 0.0, 1.0;
    const Matrix H = build_hidden_matrix(layer_from(W, Vector::Zero(1)), Activation::Gaussian, X);
    CHECK(H(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(H(1, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("hidden matrix entries match node-by-node re-evaluation") {
    const Fixture f = make_fixture(12, 5, 77);
    // Rebuild the same layer and spot-check every entry against the scalar form.
    Rng rng(77);
    Matrix X(12, 2);
    for (Index i = 0; i < 12; ++i)
        for (Index j = 0; j < 2; ++j) X(i, j) = rng.unit();
    GenConfig config;
    config.kind = Activation::Sigmoid;
    config.r = 0.1;
    config.s = 5.0;
    config.nodes = 5;
    config.strategy = BiasStrategy::TrainingPoint;
    config.seed = 78;
    const HiddenParams params = generate(config, 2, &X);
    const Matrix H = build_hidden_matrix(params, config.kind, X);
    for (Index l = 0; l < H.rows(); ++l)
        for (Index i = 0; i < H.cols(); ++i) {
            const double direct = evaluate(Activation::Sigmoid, params.weights.row(i).transpose(),
                                           params.biases(i), X.row(l).transpose());
            CHECK(H(l, i) == doctest::Approx(direct).epsilon(1e-15));
        }
}

TEST_CASE("hidden matrix rejects mismatched dimensions and empty input") {
    const HiddenParams p = layer_from(Matrix::Zero(1, 2), Vector::Zero(1));
    CHECK_THROWS_AS(build_hidden_matrix(p, Activation::Sigmoid, Matrix::Zero(3, 1)), ContractError);
    CHECK_THROWS_AS(build_hidden_matrix(p, Activation::Sigmoid, Matrix::Zero(0, 2)), ContractError);
}

TEST_CASE("identity system returns the targets as weights") {
    const Matrix H = Matrix::Identity(2, 2);
    Vector Y(2);
    Y << 1.0, 2.0;
    const LsqSolution sol = solve_output_weights(H, Y);
    REQUIRE(sol.beta.size() == 2);
    CHECK(sol.beta(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.beta(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sol.rank == 2);
    CHECK(sol.residual_norm == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("overdetermined column of ones averages the targets") {
    Matrix H(2, 1);
    H << 1.0, 1.0;
    Vector Y(2);
    Y << 1.0, 3.0;
    const LsqSolution sol = solve_output_weights(H, Y);
    REQUIRE(sol.beta.size() == 1);
    CHECK(sol.beta(0) == doctest::Approx(2.0).epsilon(1e-12));
    // Residual is the distance from (1,3) to (2,2): sqrt(2).
    CHECK(sol.residual_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sol.rank == 1);
}

TEST_CASE("rank-deficient system returns the minimum-norm minimizer") {
    Matrix H(2, 2);
    H << 1.0, 1.0, 1.0, 1.0;
    Vector Y(2);
    Y << 2.0, 2.0;
    const LsqSolution sol = solve_output_weights(H, Y);
    CHECK(sol.rank == 1);
    CHECK(sol.beta(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.beta(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.residual_norm == doctest::Approx(0.0).epsilon(1e-9));

    // Every feasible minimizer lies on beta0 + beta1 = 2; sweep the line and
    // confirm none beats the returned norm.
    const double returned = sol.beta.norm();
    for (int i = -50; i <= 50; ++i) {
        const double b0 = 1.0 + 0.05 * i;
        Vector cand(2);
        cand << b0, 2.0 - b0;
        CHECK((H * cand - Y).norm() <= 1e-9);   // still a minimizer
        CHECK(returned <= cand.norm() + 1e-9);  // but never shorter
    }
}

TEST_CASE("solver input contracts") {
    const Matrix H = Matrix::Identity(2, 2);
    Vector Y(3);
    Y << 1, 2, 3;
    CHECK_THROWS_AS(solve_output_weights(H, Y), ContractError);
    Vector bad(2);
    bad << 1.0, std::nan("");
    CHECK_THROWS_AS(solve_output_weights(H, bad), ContractError);
    Vector ok(2);
    ok << 1.0, 2.0;
    CHECK_THROWS_AS(solve_output_weights(H, ok, 0.0), ContractError);
    CHECK_THROWS_AS(solve_output_weights(H, ok, 1.0), ContractError);
    Matrix badH = H;
    badH(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_output_weights(badH, ok), ContractError);
}

TEST_CASE("normal-equation residual stays small on random systems") {
    for (uint64_t seed : {11u, 12u, 13u}) {
        const Fixture f = make_fixture(40, 15, seed);
        const LsqSolution sol = solve_output_weights(f.H, f.Y);
        const double lhs = (f.H.transpose() * (f.H * sol.beta - f.Y)).lpNorm<Eigen::Infinity>();
        const double rhs = 1e-6 * (1.0 + (f.H.transpose() * f.Y).lpNorm<Eigen::Infinity>());
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("no unit-scaled perturbation improves the residual") {
    const Fixture f = make_fixture(30, 8, 21);
    const LsqSolution sol = solve_output_weights(f.H, f.Y);
    const double base = (f.H * sol.beta - f.Y).norm();
    Rng rng(99);
    for (int k = 0; k < 100; ++k) {
        Vector delta(sol.beta.size());
        for (Index i = 0; i < delta.size(); ++i) delta(i) = rng.symmetric();
        delta *= 1e-3 / delta.norm();
        CHECK((f.H * (sol.beta + delta) - f.Y).norm() >= base - 1e-12);
    }
}

TEST_CASE("with more nodes than samples the fit interpolates") {
    const Fixture f = make_fixture(10, 25, 5);
    const LsqSolution sol = solve_output_weights(f.H, f.Y);
    REQUIRE(sol.rank == 10); // full row rank: interpolation regime
    CHECK(sol.residual_norm <= 1e-6 * f.Y.norm());
}

TEST_CASE("residual_norm field matches recomputation") {
    const Fixture f = make_fixture(25, 6, 33);
    const LsqSolution sol = solve_output_weights(f.H, f.Y);
    CHECK(sol.residual_norm == doctest::Approx((f.H * sol.beta - f.Y).norm()).epsilon(1e-9));
    CHECK(sol.rank <= std::min(f.H.rows(), f.H.cols()));
}

TEST_CASE("ridge with zero penalty equals the pseudoinverse path") {
    const Matrix H = Matrix::Identity(2, 2);
    Vector Y(2);
    Y << 1.0, 2.0;
    const LsqSolution sol = ridge_solve(H, Y, 0.0);
    CHECK(sol.beta(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.beta(1) == doctest::Approx(2.0).epsilon(1e-12));

    Matrix H2(2, 1);
    H2 << 1.0, 1.0;
    Vector Y2(2);
    Y2 << 1.0, 3.0;
    CHECK(ridge_solve(H2, Y2, 0.0).beta(0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ridge shrinks a scalar system by 1/(1+lambda)") {
    Matrix H(1, 1);
    H << 1.0;
    Vector Y(1);
    Y << 1.0;
    const LsqSolution sol = ridge_solve(H, Y, 1.0);
    CHECK(sol.beta(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sol.rank == 1);
}

TEST_CASE("ridge agrees with pseudoinverse on a well-conditioned system") {
    const Fixture f = make_fixture(40, 10, 44);
    const LsqSolution plain = solve_output_weights(f.H, f.Y);
    const LsqSolution tiny = ridge_solve(f.H, f.Y, 1e-12);
    CHECK((plain.beta - tiny.beta).lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK_THROWS_AS(ridge_solve(f.H, f.Y, -1.0), ContractError);
}
