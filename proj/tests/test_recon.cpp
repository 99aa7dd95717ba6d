#include <doctest.h>

#include <cmath>

#include "fbcs/dct.hpp"
#include "fbcs/recon.hpp"
#include "fbcs/rng.hpp"
#include "fbcs/sensing.hpp"
#include "oracles.hpp"

using namespace fbcs;

namespace {

Vec random_vec(Rng& rng, int n, double lo = 0.0, double hi = 255.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
    return v;
}

double ista_objective(const MeasurementOperator& op, const Dct2& dct, const Vec& coeffs,
                      const Vec& z, double tau) {
    const double fit = 0.5 * (z - measure(op, dct.inverse(coeffs))).squaredNorm();
    return fit + tau * coeffs.lpNorm<1>();
}

} // namespace

TEST_SUITE("recon") {

TEST_CASE("dct2 of a constant block concentrates on the DC coefficient") {
    const double c = 3.7;
    const Vec block = Vec::Constant(32 * 32, c);
    const Vec coeffs = dct2(block);
    CHECK(std::abs(coeffs[0] - 32.0 * c) <= 1e-10);
    CHECK(coeffs.tail(coeffs.size() - 1).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("dct2 and idct2 are mutually inverse and norm preserving") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec x = random_vec(rng, 64);
        const Vec coeffs = dct2(x);
        CHECK((idct2(coeffs) - x).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(std::abs(coeffs.norm() - x.norm()) <= 1e-10);
        CHECK((dct2(idct2(coeffs)) - coeffs).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("idct2 closed forms") {
    CHECK(idct2(Vec::Zero(16)).cwiseAbs().maxCoeff() == 0.0);

    Vec dc = Vec::Zero(4); // B = 2
    dc[0] = 1.0;
    const Vec block = idct2(dc);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(block[i] - 0.5) <= 1e-12);
    }
}

TEST_CASE("dct2 rejects non-square dimensions") {
    CHECK_THROWS_AS(dct2(Vec::Zero(12)), std::invalid_argument);
    CHECK_THROWS_AS(idct2(Vec::Zero(8)), std::invalid_argument);
}

TEST_CASE("soft_threshold") {
    CHECK(soft_threshold(5.0, 2.0) == 3.0);
    CHECK(soft_threshold(-5.0, 2.0) == -3.0);
    CHECK(soft_threshold(1.0, 2.0) == 0.0);
    CHECK(soft_threshold(-1.5, 2.0) == 0.0);
    CHECK(soft_threshold(4.0, 0.0) == 4.0);
    CHECK_THROWS_AS(soft_threshold(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("recover_pinv is the minimum-norm solution") {
    MeasurementOperator op;
    op.matrix.resize(1, 2);
    op.matrix << 1.0, 0.0;
    Vec z(1);
    z << 3.0;
    const Vec x = recover_pinv(op, z);
    CHECK(x[0] == 3.0);
    CHECK(x[1] == 0.0);
}

TEST_CASE("recover_pinv inverts full-rate measurements") {
    Rng rng(17);
    const MeasurementOperator op = make_operator(17, 16, 16);
    const Vec x = random_vec(rng, 16);
    CHECK((recover_pinv(op, measure(op, x)) - x).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("recover_pinv re-measures exactly and is idempotent") {
    Rng rng(18);
    const MeasurementOperator op = make_operator(18, 32, 12);
    const Vec z = random_vec(rng, 12, -1.0, 1.0);
    const Vec x = recover_pinv(op, z);
    CHECK((measure(op, x) - z).cwiseAbs().maxCoeff() <= 1e-10);

    const Vec once = recover_pinv(op, measure(op, random_vec(rng, 32)));
    const Vec twice = recover_pinv(op, measure(op, once));
    CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("recover_ista fixed points") {
    const MeasurementOperator op = make_operator(5, 16, 8);
    ReconstructorSpec spec;
    spec.kind = ReconKind::ista;
    spec.ista_iterations = 50;
    spec.ista_threshold = 1.0;

    SUBCASE("zero measurements give the zero block") {
        const Vec x = recover_ista(op, Vec::Zero(8), spec);
        CHECK(x.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("full rate without shrinkage recovers exactly") {
        Rng rng(6);
        const MeasurementOperator full = make_operator(6, 16, 16);
        ReconstructorSpec exact = spec;
        exact.ista_threshold = 0.0;
        exact.ista_iterations = 200;
        const Vec x = random_vec(rng, 16);
        const Vec rec = recover_ista(full, measure(full, x), exact);
        CHECK((rec - x).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("recover_ista matches a straight-line oracle on a sparse signal") {
    // 5-sparse in the DCT domain, B = 8, d = 48 of D = 64.
    Vec coeffs = Vec::Zero(64);
    coeffs[0] = 210.0;
    coeffs[3] = -140.0;
    coeffs[10] = 95.0;
    coeffs[17] = 60.0;
    coeffs[40] = -75.0;
    const Vec truth = idct2(coeffs);

    const MeasurementOperator op = make_operator(77, 64, 48);
    const Vec z = measure(op, truth);

    ReconstructorSpec spec;
    spec.kind = ReconKind::ista;
    spec.ista_iterations = 200;
    spec.ista_threshold = 1.0;
    const Vec recovered = recover_ista(op, z, spec);

    std::vector<double> z_std(z.data(), z.data() + z.size());
    const std::vector<double> oracle = testutil::ista_reference(op.matrix, z_std, 8, 1.0, 200);
    for (int i = 0; i < 64; ++i) {
        CHECK(std::abs(recovered[i] - oracle[i]) <= 1e-8);
    }

    const double mse = (recovered - truth).squaredNorm() / 64.0;
    const double psnr_db = 10.0 * std::log10(255.0 * 255.0 / mse);
    CHECK(psnr_db > 40.0);
}

TEST_CASE("ista objective is non-increasing") {
    Rng rng(91);
    for (int problem = 0; problem < 20; ++problem) {
        const int edge = (problem % 2 == 0) ? 4 : 8;
        const int dim = edge * edge;
        const int d = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(dim)));
        const MeasurementOperator op = make_operator(1000 + problem, dim, d);
        const Vec x0 = random_vec(rng, dim);
        const Vec z = measure(op, x0);

        ReconstructorSpec spec;
        spec.kind = ReconKind::ista;
        spec.ista_iterations = 40;
        spec.ista_threshold = 5.0;

        IstaDiagnostics diag;
        recover_ista(op, z, spec, &diag);
        REQUIRE(diag.objective.size() == 40);
        for (std::size_t k = 1; k < diag.objective.size(); ++k) {
            const double slack = 1e-9 * std::max(1.0, diag.objective[k - 1]);
            CHECK(diag.objective[k] <= diag.objective[k - 1] + slack);
        }
        // the first recorded value must also not exceed the initial objective
        const Dct2 dct(edge);
        const double initial = ista_objective(op, dct, dct.forward(adjoint(op, z)), z, 5.0);
        CHECK(diag.objective.front() <= initial + 1e-9 * std::max(1.0, initial));
    }
}

TEST_CASE("recover dispatches per kind and is deterministic") {
    Rng rng(55);
    const MeasurementOperator op = make_operator(55, 16, 8);
    const Vec z = random_vec(rng, 8, -10.0, 10.0);

    ReconstructorSpec pinv_spec;
    pinv_spec.kind = ReconKind::pinv;
    CHECK(recover(op, z, pinv_spec) == recover_pinv(op, z));

    ReconstructorSpec ista_spec;
    ista_spec.kind = ReconKind::ista;
    ista_spec.ista_iterations = 25;
    ista_spec.ista_threshold = 2.0;
    CHECK(recover(op, z, ista_spec) == recover_ista(op, z, ista_spec));
    CHECK(recover(op, z, ista_spec) == recover(op, z, ista_spec));
}

TEST_CASE("recover_cols agrees with per-vector recovery") {
    Rng rng(66);
    const MeasurementOperator op = make_operator(66, 16, 8);
    Mat z_cols(8, 6);
    for (int j = 0; j < 6; ++j) z_cols.col(j) = random_vec(rng, 8, -5.0, 5.0);

    ReconstructorSpec pinv_spec;
    const Mat pinv_batch = recover_cols(op, z_cols, pinv_spec);
    for (int j = 0; j < 6; ++j) {
        CHECK((pinv_batch.col(j) - recover_pinv(op, z_cols.col(j))).cwiseAbs().maxCoeff() <= 1e-12);
    }

    ReconstructorSpec ista_spec;
    ista_spec.kind = ReconKind::ista;
    ista_spec.ista_iterations = 30;
    ista_spec.ista_threshold = 1.5;
    const Mat ista_batch = recover_cols(op, z_cols, ista_spec);
    for (int j = 0; j < 6; ++j) {
        const Vec single = recover_ista(op, z_cols.col(j), ista_spec);
        CHECK((ista_batch.col(j) - single).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("spec validation") {
    const MeasurementOperator op = make_operator(9, 16, 8);
    ReconstructorSpec bad;
    bad.kind = ReconKind::ista;
    bad.ista_iterations = 0;
    CHECK_THROWS_AS(recover_ista(op, Vec::Zero(8), bad), std::invalid_argument);
    bad.ista_iterations = 10;
    bad.ista_threshold = -1.0;
    CHECK_THROWS_AS(recover_ista(op, Vec::Zero(8), bad), std::invalid_argument);
    CHECK_THROWS_AS(recover_ista(op, Vec::Zero(7), ReconstructorSpec{ReconKind::ista, 10, 1.0}),
                    std::invalid_argument);
}

} // TEST_SUITE
