#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "helpers.hpp"
#include "rhn/data.hpp"
#include "rhn/errors.hpp"
#include "rhn/rng.hpp"

using namespace rhn;

namespace {

std::string write_temp_csv(const char* stem, const std::string& text) {
    const std::string path =
        std::string("/tmp/rhn_test_") + stem + "_" + std::to_string(::getpid()) + ".csv";
    std::ofstream os(path);
    os << text;
    return path;
}

Vector point1(double x) {
    Vector v(1);
    v << x;
    return v;
}

Vector point2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

// Independent re-evaluation of the three target formulas, written in a
// different operation order than the implementation.
double reference_target(TargetFunction tf, const Vector& x) {
    switch (tf) {
    case TargetFunction::Osc1D:
        return std::sin(20.0 * std::exp(x(0))) * std::pow(x(0), 2.0);
    case TargetFunction::Osc2D: {
        double acc = 0.0;
        for (int k = 0; k < 2; ++k) acc += std::sin(20.0 * std::exp(x(k))) * std::pow(x(k), 2.0);
        return acc;
    }
    case TargetFunction::Peaks1D: {
        const double t1 = 10.0 * x(0) - 4.0;
        const double t2 = 80.0 * x(0) - 40.0;
        const double t3 = 80.0 * x(0) - 20.0;
        return 0.2 * std::exp(-(t1 * t1)) + 0.5 * std::exp(-(t2 * t2)) +
               0.3 * std::exp(-(t3 * t3));
    }
    }
    return 0.0;
}

} // namespace

TEST_CASE("target function wire names round-trip") {
    CHECK(to_string(TargetFunction::Osc1D) == "osc1d");
    CHECK(to_string(TargetFunction::Osc2D) == "osc2d");
    CHECK(to_string(TargetFunction::Peaks1D) == "peaks");
    CHECK(target_from_string("osc1d") == TargetFunction::Osc1D);
    CHECK(target_from_string("osc2d") == TargetFunction::Osc2D);
    CHECK(target_from_string("peaks") == TargetFunction::Peaks1D);
    CHECK_THROWS_AS(target_from_string("osc3d"), ConfigError);
    CHECK(tf_dimension(TargetFunction::Osc1D) == 1);
    CHECK(tf_dimension(TargetFunction::Osc2D) == 2);
    CHECK(tf_dimension(TargetFunction::Peaks1D) == 1);
}

TEST_CASE("oscillatory target vanishes at the origin") {
    CHECK(eval_target(TargetFunction::Osc1D, point1(0.0)) == 0.0);
    CHECK(eval_target(TargetFunction::Osc2D, point2(0.0, 0.0)) == 0.0);
}

TEST_CASE("three-bump target hits its known values") {
    // At x = 0.4 the first exponent is exactly zero and the other two bumps
    // contribute at most e^-64.
    CHECK(eval_target(TargetFunction::Peaks1D, point1(0.4)) ==
          doctest::Approx(0.2).epsilon(1e-12));
    // At x = 0.5: 0.2 e^-1 + 0.5 + 0.3 e^-400.
    const double expected = 0.2 * std::exp(-1.0) + 0.5;
    CHECK(eval_target(TargetFunction::Peaks1D, point1(0.5)) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(eval_target(TargetFunction::Peaks1D, point1(0.5)) == doctest::Approx(0.5736).epsilon(1e-4));
}

TEST_CASE("targets match an independent re-evaluation at random points") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.unit();
        const double v = rng.unit();
        for (TargetFunction tf :
             {TargetFunction::Osc1D, TargetFunction::Osc2D, TargetFunction::Peaks1D}) {
            const Vector x = tf_dimension(tf) == 1 ? point1(u) : point2(u, v);
            const double got = eval_target(tf, x);
            const double want = reference_target(tf, x);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("targets reject out-of-domain points") {
    CHECK_THROWS_AS(eval_target(TargetFunction::Osc1D, point1(1.5)), ContractError);
    CHECK_THROWS_AS(eval_target(TargetFunction::Osc1D, point1(-0.1)), ContractError);
    CHECK_THROWS_AS(eval_target(TargetFunction::Osc1D, point2(0.5, 0.5)), ContractError);
    CHECK_THROWS_AS(eval_target(TargetFunction::Osc2D, point1(0.5)), ContractError);
}

TEST_CASE("noise-free synthetic samples equal the target exactly") {
    const Dataset ds = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 7);
    REQUIRE(ds.size() == 1000);
    REQUIRE(ds.dim() == 1);
    for (Index i = 0; i < ds.size(); ++i) {
        CHECK(ds.X(i, 0) >= 0.0);
        CHECK(ds.X(i, 0) <= 1.0);
        CHECK(ds.Y(i) == eval_target(TargetFunction::Peaks1D, ds.X.row(i).transpose()));
    }
}

TEST_CASE("noise stays inside its half-width band") {
    const Dataset ds = make_synthetic(TargetFunction::Osc1D, 5000, 0.2, 11);
    double max_abs = 0.0;
    for (Index i = 0; i < ds.size(); ++i) {
        const double dev = ds.Y(i) - eval_target(TargetFunction::Osc1D, ds.X.row(i).transpose());
        max_abs = std::max(max_abs, std::abs(dev));
    }
    CHECK(max_abs <= 0.2);
    CHECK(max_abs > 0.05); // the band is actually used
}

TEST_CASE("noise is centered") {
    const Dataset ds = make_synthetic(TargetFunction::Osc2D, 10000, 0.2, 13);
    double acc = 0.0;
    for (Index i = 0; i < ds.size(); ++i)
        acc += ds.Y(i) - eval_target(TargetFunction::Osc2D, ds.X.row(i).transpose());
    CHECK(std::abs(acc / 10000.0) <= 0.01);
}

TEST_CASE("synthetic draws are seed-deterministic") {
    const Dataset a = make_synthetic(TargetFunction::Osc1D, 50, 0.2, 3);
    const Dataset b = make_synthetic(TargetFunction::Osc1D, 50, 0.2, 3);
    const Dataset c = make_synthetic(TargetFunction::Osc1D, 50, 0.2, 4);
    CHECK(bit_equal(a.X, b.X));
    CHECK(bit_equal(a.Y, b.Y));
    CHECK_FALSE(bit_equal(a.Y, c.Y));
}

TEST_CASE("one-dimensional grids include both endpoints") {
    const Matrix g = grid_points(1, 3);
    REQUIRE(g.rows() == 3);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g(2, 0) == 1.0);

    const Matrix g300 = grid_points(1, 300);
    REQUIRE(g300.rows() == 300);
    CHECK(g300(0, 0) == 0.0);
    CHECK(g300(299, 0) == 1.0);
    const double step = 1.0 / 299.0;
    for (Index i = 1; i < 300; ++i)
        CHECK(g300(i, 0) - g300(i - 1, 0) == doctest::Approx(step).epsilon(1e-12));
}

TEST_CASE("two-dimensional grids are the Cartesian product") {
    const Matrix g = grid_points(2, 3);
    REQUIRE(g.rows() == 9);
    REQUIRE(g.cols() == 2);
    std::set<std::pair<double, double>> corners;
    for (Index i = 0; i < 9; ++i) {
        if ((g(i, 0) == 0.0 || g(i, 0) == 1.0) && (g(i, 1) == 0.0 || g(i, 1) == 1.0))
            corners.insert({g(i, 0), g(i, 1)});
    }
    CHECK(corners.size() == 4);
    CHECK_THROWS_AS(grid_points(1, 1), ConfigError);
    CHECK_THROWS_AS(grid_points(3, 5), ConfigError);
}

TEST_CASE("grid dataset carries exact target values") {
    const Dataset ds = grid_dataset(TargetFunction::Peaks1D, 300);
    REQUIRE(ds.size() == 300);
    for (Index i : {Index(0), Index(150), Index(299)})
        CHECK(ds.Y(i) == eval_target(TargetFunction::Peaks1D, ds.X.row(i).transpose()));
}

TEST_CASE("split partitions the rows") {
    Dataset ds;
    ds.X = Matrix(4, 1);
    ds.X << 1, 2, 3, 4;
    ds.Y = Vector(4);
    ds.Y << 10, 20, 30, 40;
    ds.names = {"x"};

    const auto [train, test] = split(ds, 0.75, 5);
    REQUIRE(train.size() == 3);
    REQUIRE(test.size() == 1);

    std::multiset<double> seen;
    for (Index i = 0; i < train.size(); ++i) seen.insert(train.Y(i));
    for (Index i = 0; i < test.size(); ++i) seen.insert(test.Y(i));
    CHECK(seen == std::multiset<double>({10, 20, 30, 40}));

    // Rows stay attached to their targets.
    for (Index i = 0; i < train.size(); ++i) CHECK(train.Y(i) == 10.0 * train.X(i, 0));
}

TEST_CASE("split is seed-deterministic") {
    const Dataset ds = make_synthetic(TargetFunction::Osc1D, 40, 0.0, 17);
    const auto [a_train, a_test] = split(ds, 0.6, 100);
    const auto [b_train, b_test] = split(ds, 0.6, 100);
    const auto [c_train, c_test] = split(ds, 0.6, 101);
    CHECK(bit_equal(a_train.X, b_train.X));
    CHECK(bit_equal(a_test.Y, b_test.Y));
    CHECK_FALSE(bit_equal(a_train.X, c_train.X));
}

TEST_CASE("degenerate splits are rejected") {
    const Dataset ds = make_synthetic(TargetFunction::Osc1D, 4, 0.0, 17);
    CHECK_THROWS_AS(split(ds, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(split(ds, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(split(ds, 0.01, 1), ConfigError);  // train side would be empty
    CHECK_THROWS_AS(split(ds, 0.999, 1), ConfigError); // test side would be empty
}

TEST_CASE("two-column file loads with the target by header name") {
    const std::string path = write_temp_csv("two_col", "x,y\n0,1\n1,3\n");
    const Dataset ds = load_csv(path, "y", true);
    REQUIRE(ds.size() == 2);
    REQUIRE(ds.dim() == 1);
    CHECK(ds.X(0, 0) == 0.0);
    CHECK(ds.X(1, 0) == 1.0);
    CHECK(ds.Y(0) == 1.0);
    CHECK(ds.Y(1) == 3.0);
    CHECK(ds.names == std::vector<std::string>{"x"});
    std::remove(path.c_str());
}

TEST_CASE("target by index swaps the roles of the columns") {
    const std::string path = write_temp_csv("by_index", "x,y\n0,1\n1,3\n");
    const Dataset ds = load_csv(path, "0", true);
    CHECK(ds.X(0, 0) == 1.0); // features come from column y now
    CHECK(ds.X(1, 0) == 3.0);
    CHECK(ds.Y(0) == 0.0);
    CHECK(ds.Y(1) == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("ragged rows are reported with their line number") {
    const std::string path = write_temp_csv("ragged", "x,y\n0,1\n1\n2,4\n");
    CHECK_THROWS_WITH_AS(load_csv(path, "y", true), doctest::Contains("3"), FormatError);
    std::remove(path.c_str());
}

TEST_CASE("non-numeric cells are reported") {
    const std::string path = write_temp_csv("non_numeric", "x,y\n0,1\nfoo,3\n");
    CHECK_THROWS_AS(load_csv(path, "y", true), FormatError);
    std::remove(path.c_str());
}

TEST_CASE("missing target columns and files are distinct errors") {
    const std::string path = write_temp_csv("missing_target", "x,y\n0,1\n");
    CHECK_THROWS_AS(load_csv(path, "z", true), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_csv("/tmp/rhn_no_such_file.csv", "y", true), IoError);
}

TEST_CASE("headerless files load by column index") {
    const std::string path = write_temp_csv("no_header", "0,1\n1,3\n");
    const Dataset ds = load_csv(path, "1", false);
    REQUIRE(ds.size() == 2);
    CHECK(ds.X(0, 0) == 0.0);
    CHECK(ds.Y(1) == 3.0);
    std::remove(path.c_str());
}

TEST_CASE("feature-only loading keeps every column") {
    const std::string path = write_temp_csv("features", "a,b,c\n1,2,3\n4,5,6\n");
    const Matrix X = load_csv_features(path, true);
    REQUIRE(X.rows() == 2);
    REQUIRE(X.cols() == 3);
    CHECK(X(1, 2) == 6.0);
    std::remove(path.c_str());
}
