#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mvrkm/datagen.hpp"
#include "mvrkm/embedding.hpp"
#include "mvrkm/kernels.hpp"
#include "mvrkm/trainer.hpp"
#include "test_helpers.hpp"

using namespace mvrkm;
using mvrkm::testing::jacobi_eigenvalues;
using mvrkm::testing::random_matrix;

namespace {

// The summed two-view Gram the trainer decomposes, assembled independently.
Matrix summed_gram(const TrainedModel& m) {
    Matrix Kx = gram(m.kx, m.X_train);
    Matrix Ky = gram(m.ky, m.Y_train);
    if (m.centered) {
        Kx = center_gram(Kx).first;
        Ky = center_gram(Ky).first;
    }
    return Kx + Ky;
}

void check_eigenpair_contract(const TrainedModel& m, const Matrix& K) {
    const Index s = m.s;
    const double kscale = std::max(K.norm(), 1e-300);

    // Rows of H are orthonormal.
    const Matrix gramH = m.H * m.H.transpose();
    CHECK((gramH - Matrix::Identity(s, s)).norm() <= 1e-8 * std::sqrt(double(s)));

    // Each (lambda_r, row r of H) is an eigenpair of K.
    const Matrix residual = K * m.H.transpose() - m.H.transpose() * m.lambda.asDiagonal();
    CHECK(residual.norm() <= 1e-8 * kscale);

    // Eigenvalues are descending and nonnegative up to round-off.
    for (Index r = 0; r + 1 < s; ++r) CHECK(m.lambda(r) >= m.lambda(r + 1));
    CHECK(m.lambda(s - 1) >= -1e-8 * std::abs(K.trace()));

    // Sign convention: the largest-magnitude entry of each row is positive,
    // and with tied magnitudes the earliest tied entry is the positive one.
    for (Index r = 0; r < s; ++r) {
        const double peak = m.H.row(r).cwiseAbs().maxCoeff();
        for (Index i = 0; i < m.H.cols(); ++i) {
            if (std::abs(m.H(r, i)) == peak) {
                CHECK(m.H(r, i) > 0.0);
                break;
            }
        }
    }
}

LaggedDataset sine_dataset(Index n, int p) {
    const TimeSeries series = gen_sine(n, 1.0, 1.0, 0.0, 0.01);
    return lag_embed(series, p);
}

} // namespace

TEST_SUITE("trainer") {

TEST_CASE("two orthogonal views with a diagonal summed gram") {
    // Kx = diag(2, 0.5) and Ky = diag(1, 0.5), so Kx + Ky = diag(3, 1) and
    // every quantity has a closed form.
    LaggedDataset data;
    data.p = 1;
    data.X = Matrix::Zero(2, 4);
    data.X(0, 0) = std::sqrt(2.0);
    data.X(1, 2) = std::sqrt(0.5);
    data.Y = Matrix::Zero(2, 2);
    data.Y(0, 0) = 1.0;
    data.Y(1, 1) = std::sqrt(0.5);

    const TrainedModel m =
        fit(data, KernelSpec::linear(), KernelSpec::linear(), 2, /*center=*/false);

    CHECK(m.lambda(0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(m.lambda(1) == doctest::Approx(1.0).epsilon(1e-12));

    // Eigenvectors of a diagonal matrix are the basis vectors, flipped
    // positive by the sign convention.
    CHECK(m.H(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(m.H(0, 1)) <= 1e-12);
    CHECK(m.H(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(m.H(1, 0)) <= 1e-12);

    // diag(lambda) - H Ky H^T = diag(3,1) - diag(1,0.5) = diag(2, 0.5).
    const Matrix& op = latent_operator(m);
    CHECK(op(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(op(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(op(0, 1)) <= 1e-12);
    CHECK(std::abs(op(1, 0)) <= 1e-12);
    CHECK_FALSE(m.jitter_used);
}

TEST_CASE("full spectrum reconstructs the summed gram") {
    LaggedDataset data;
    data.p = 2;
    data.X = random_matrix(12, 6, 101);
    data.Y = random_matrix(12, 2, 202);

    for (const bool center : {false, true}) {
        CAPTURE(center);
        const TrainedModel m =
            fit(data, KernelSpec::rbf(1.2), KernelSpec::rbf(0.8), 12, center);
        const Matrix K = summed_gram(m);
        check_eigenpair_contract(m, K);

        const Matrix rebuilt = m.H.transpose() * m.lambda.asDiagonal() * m.H;
        CHECK((rebuilt - K).norm() <= 1e-8 * K.norm());
    }
}

TEST_CASE("eigenpairs on a sine dataset match an independent eigensolver") {
    const LaggedDataset data = sine_dataset(200, 10);
    const TrainedModel m = fit(data, KernelSpec::rbf(1.0), KernelSpec::linear(), 20);
    const Matrix K = summed_gram(m);
    check_eigenpair_contract(m, K);

    // Cyclic Jacobi is a hand-rolled eigensolver sharing nothing with the
    // trainer's route; the retained spectrum must agree with its top entries.
    const Vector oracle = jacobi_eigenvalues(K);
    const double scale = std::max(std::abs(oracle(0)), 1.0);
    for (Index r = 0; r < m.s; ++r) {
        CAPTURE(r);
        CHECK(std::abs(m.lambda(r) - oracle(r)) <= 1e-8 * scale);
    }
}

TEST_CASE("training is deterministic") {
    const LaggedDataset data = sine_dataset(120, 5);
    const TrainedModel a = fit(data, KernelSpec::rbf(1.0), KernelSpec::rbf(0.7), 8);
    const TrainedModel b = fit(data, KernelSpec::rbf(1.0), KernelSpec::rbf(0.7), 8);
    CHECK((a.H - b.H).norm() == 0.0);
    CHECK((a.lambda - b.lambda).norm() == 0.0);
    CHECK((a.M_inv - b.M_inv).norm() == 0.0);
}

TEST_CASE("permuting the training pairs keeps the spectrum") {
    LaggedDataset data;
    data.p = 1;
    data.X = random_matrix(15, 4, 7);
    data.Y = random_matrix(15, 2, 8);

    std::vector<Index> perm(15);
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), std::mt19937(99));

    LaggedDataset shuffled = data;
    for (Index i = 0; i < 15; ++i) {
        shuffled.X.row(i) = data.X.row(perm[size_t(i)]);
        shuffled.Y.row(i) = data.Y.row(perm[size_t(i)]);
    }

    const TrainedModel a = fit(data, KernelSpec::rbf(0.9), KernelSpec::rbf(1.1), 6);
    const TrainedModel b = fit(shuffled, KernelSpec::rbf(0.9), KernelSpec::rbf(1.1), 6);
    const double scale = std::max(std::abs(a.lambda(0)), 1.0);
    CHECK((a.lambda - b.lambda).cwiseAbs().maxCoeff() <= 1e-8 * scale);
}

TEST_CASE("two identical linear views double the single-view spectrum") {
    LaggedDataset data;
    data.p = 1;
    data.X = random_matrix(10, 3, 41);
    data.Y = data.X;

    const TrainedModel m =
        fit(data, KernelSpec::linear(), KernelSpec::linear(), 10, /*center=*/false);
    const Vector single = jacobi_eigenvalues(data.X * data.X.transpose());
    const double scale = std::max(single(0), 1.0);
    for (Index r = 0; r < 10; ++r) {
        CAPTURE(r);
        CHECK(std::abs(m.lambda(r) - 2.0 * single(r)) <= 1e-10 * scale);
    }
}

TEST_CASE("latent operator closed forms via rebuilt caches") {
    SUBCASE("single pair: 1 / (lambda - ky(y, y))") {
        TrainedModel m;
        m.s = 1;
        m.p = 1;
        m.H = Matrix::Ones(1, 1);
        m.lambda = Vector::Constant(1, 2.0);
        m.X_train = random_matrix(1, 2, 5);
        m.Y_train = Matrix::Constant(1, 1, std::sqrt(0.5)); // ky(y,y) = 0.5
        m.kx = KernelSpec::linear();
        m.ky = KernelSpec::linear();
        m.centered = false;
        rebuild_derived(m);
        CHECK(latent_operator(m)(0, 0) == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
        CHECK_FALSE(m.jitter_used);
    }

    SUBCASE("zero output gram: reciprocal eigenvalues") {
        TrainedModel m;
        m.s = 2;
        m.p = 1;
        m.H = Matrix::Identity(2, 2);
        m.lambda = Vector(2);
        m.lambda << 2.0, 5.0;
        m.X_train = random_matrix(2, 2, 6);
        m.Y_train = Matrix::Zero(2, 1);
        m.kx = KernelSpec::linear();
        m.ky = KernelSpec::linear();
        m.centered = false;
        rebuild_derived(m);
        const Matrix& op = latent_operator(m);
        CHECK(op(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(op(1, 1) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(std::abs(op(0, 1)) <= 1e-12);
        CHECK(std::abs(op(1, 0)) <= 1e-12);
    }
}

TEST_CASE("latent operator matches a dense full-pivot inverse") {
    LaggedDataset data;
    data.p = 1;
    data.X = random_matrix(30, 4, 11);
    data.Y = random_matrix(30, 2, 12);
    const TrainedModel m = fit(data, KernelSpec::rbf(1.5), KernelSpec::rbf(0.9), 5);

    Matrix M = Matrix(m.lambda.asDiagonal()) - m.H * m.Ky_view * m.H.transpose();
    M = ((M + M.transpose()) * 0.5).eval();
    const Matrix oracle = Eigen::FullPivLU<Matrix>(M).inverse();
    CHECK((latent_operator(m) - oracle).norm() <= 1e-8 * oracle.norm());
    CHECK_FALSE(m.jitter_used);
}

TEST_CASE("rank-deficient input view falls back to jitter") {
    // Every input row identical makes the input gram rank one, so the latent
    // operator is singular once more than one component is kept.
    LaggedDataset data;
    data.p = 1;
    data.X = Matrix::Ones(6, 4) * 2.0;
    data.Y = random_matrix(6, 3, 21);

    const TrainedModel m =
        fit(data, KernelSpec::linear(), KernelSpec::linear(), 3, /*center=*/false);
    CHECK(m.jitter_used);
    CHECK(latent_operator(m).allFinite());
}

TEST_CASE("all-zero training data leaves the operator singular") {
    LaggedDataset data;
    data.p = 1;
    data.X = Matrix::Zero(4, 2);
    data.Y = Matrix::Zero(4, 1);
    CHECK_THROWS_WITH_AS(
        fit(data, KernelSpec::linear(), KernelSpec::linear(), 2, /*center=*/false),
        "latent operator is singular even after jitter; try fewer components or "
        "different kernels",
        std::runtime_error);
}

TEST_CASE("component count is validated") {
    const LaggedDataset data = sine_dataset(7, 1); // N = 5
    CHECK_THROWS_WITH_AS(fit(data, KernelSpec::rbf(1.0), KernelSpec::linear(), 6),
                         "fit: 6 components exceed sample count 5", std::invalid_argument);
    CHECK_THROWS_AS(fit(data, KernelSpec::rbf(1.0), KernelSpec::linear(), 0),
                    std::invalid_argument);
}

TEST_CASE("rebuilding derived state reproduces the fit's caches") {
    const LaggedDataset data = sine_dataset(80, 4);
    const TrainedModel original = fit(data, KernelSpec::rbf(1.0), KernelSpec::rbf(0.6), 6);

    TrainedModel stripped = original;
    stripped.Ky_view = Matrix();
    stripped.M_inv = Matrix();
    stripped.cx = CenteringStats{};
    stripped.cy = CenteringStats{};
    stripped.y_mean = Vector();
    stripped.jitter_used = true;
    rebuild_derived(stripped);

    CHECK((stripped.Ky_view - original.Ky_view).norm() == 0.0);
    CHECK((stripped.M_inv - original.M_inv).norm() == 0.0);
    CHECK((stripped.cx.gram_row_means - original.cx.gram_row_means).norm() == 0.0);
    CHECK(stripped.cx.gram_total_mean == original.cx.gram_total_mean);
    CHECK((stripped.y_mean - original.y_mean).norm() == 0.0);
    CHECK(stripped.jitter_used == original.jitter_used);
}

} // TEST_SUITE("trainer")
