#include <doctest.h>

#include "fbcs/analysis.hpp"
#include "fbcs/rng.hpp"
#include "fbcs/sensing.hpp"

using namespace fbcs;

namespace {

MeasurementOperator select_first_coord() {
    MeasurementOperator op;
    op.matrix.resize(1, 2);
    op.matrix << 1.0, 0.0;
    return op;
}

double max_abs_gram_error(const MeasurementOperator& op) {
    const Mat gram = op.matrix * op.matrix.transpose();
    Mat err = gram;
    err.diagonal().array() -= 1.0;
    return err.cwiseAbs().maxCoeff();
}

Vec random_vec(Rng& rng, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(0.0, 1.0);
    return v;
}

} // namespace

TEST_SUITE("sensing") {

TEST_CASE("square operators are orthogonal") {
    const MeasurementOperator op = make_operator(42, 4, 4);
    CHECK(max_abs_gram_error(op) <= 1e-10);
    const Mat gram_cols = op.matrix.transpose() * op.matrix;
    Mat err = gram_cols;
    err.diagonal().array() -= 1.0;
    CHECK(err.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("rows are orthonormal across shapes") {
    for (const auto& [dim, d] : {std::pair{16, 4}, {64, 64}, {1024, 256}, {1024, 1024}}) {
        CAPTURE(dim);
        CAPTURE(d);
        const MeasurementOperator op = make_operator(7, dim, d);
        CHECK(max_abs_gram_error(op) <= 1e-10);
    }
}

TEST_CASE("same seed gives bit-identical matrices") {
    const MeasurementOperator a = make_operator(123, 64, 16);
    const MeasurementOperator b = make_operator(123, 64, 16);
    CHECK(a.matrix == b.matrix);

    const MeasurementOperator c = make_operator(124, 64, 16);
    CHECK(a.matrix != c.matrix);
}

TEST_CASE("dimension preconditions") {
    CHECK_THROWS_AS(make_operator(1, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_operator(1, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_operator(1, 0, 0), std::invalid_argument);
}

TEST_CASE("measure and adjoint on a hand-built operator") {
    const MeasurementOperator op = select_first_coord();
    Vec x(2);
    x << 3.0, 4.0;
    const Vec z = measure(op, x);
    REQUIRE(z.size() == 1);
    CHECK(z[0] == 3.0);

    const Vec back = adjoint(op, z);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == 3.0);
    CHECK(back[1] == 0.0);

    CHECK(measure(op, Vec::Zero(2)).isApprox(Vec::Zero(1)));
    CHECK_THROWS_AS(measure(op, Vec::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(adjoint(op, Vec::Zero(2)), std::invalid_argument);
}

TEST_CASE("measure is linear") {
    Rng rng(11);
    const MeasurementOperator op = make_operator(11, 16, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 16);
        const Vec y = random_vec(rng, 16);
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-2.0, 2.0);
        const Vec lhs = measure(op, a * x + b * y);
        const Vec rhs = a * measure(op, x) + b * measure(op, y);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("adjoint is the transpose") {
    Rng rng(21);
    const MeasurementOperator op = make_operator(21, 32, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 32);
        const Vec z = random_vec(rng, 12);
        const double lhs = measure(op, x).dot(z);
        const double rhs = x.dot(adjoint(op, z));
        CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
}

TEST_CASE("measure after adjoint is the identity on measurements") {
    Rng rng(31);
    const MeasurementOperator op = make_operator(31, 64, 24);
    const Vec z = random_vec(rng, 24);
    const Vec round = measure(op, adjoint(op, z));
    CHECK((round - z).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("operator norm is 1") {
    for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const MeasurementOperator op = make_operator(seed, 64, 16);
        const double rho = spectral_radius(op.matrix.transpose() * op.matrix);
        CHECK(std::sqrt(rho) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("batched measure/adjoint match the per-vector path") {
    Rng rng(41);
    const MeasurementOperator op = make_operator(41, 16, 8);
    Mat x_cols(16, 5);
    for (int j = 0; j < 5; ++j) x_cols.col(j) = random_vec(rng, 16);
    const Mat z_cols = measure_cols(op, x_cols);
    const Mat back = adjoint_cols(op, z_cols);
    for (int j = 0; j < 5; ++j) {
        CHECK((z_cols.col(j) - measure(op, x_cols.col(j))).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((back.col(j) - adjoint(op, z_cols.col(j))).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("sampling_dims rounds half away from zero") {
    CHECK(sampling_dims(0.25, 1024) == 256);
    CHECK(sampling_dims(1.0, 1024) == 1024);
    CHECK(sampling_dims(0.1, 1024) == 102); // round(102.4)
    CHECK(sampling_dims(0.25, 10) == 3);    // round(2.5) away from zero
    CHECK(sampling_dims(0.001, 100) == 1);  // floor at 1
    CHECK_THROWS_AS(sampling_dims(0.0, 1024), std::invalid_argument);
    CHECK_THROWS_AS(sampling_dims(-0.1, 1024), std::invalid_argument);
    CHECK_THROWS_AS(sampling_dims(1.1, 1024), std::invalid_argument);
}

} // TEST_SUITE
