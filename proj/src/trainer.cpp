#include "mvrkm/trainer.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mvrkm {

namespace {

// A solve counts as failed if it produced non-finite entries or the inverse
// does not reproduce the identity to the given relative tolerance.
bool try_invert(const Matrix& A, Matrix& out, double rel_tol) {
    const Index s = A.rows();
    Eigen::PartialPivLU<Matrix> lu(A);
    Matrix inv = lu.solve(Matrix::Identity(s, s));
    if (!inv.allFinite()) return false;
    const double residual = (A * inv - Matrix::Identity(s, s)).norm();
    if (!(residual <= rel_tol * std::sqrt(static_cast<double>(s)))) return false;
    out = std::move(inv);
    return true;
}

void compute_latent_operator(TrainedModel& m) {
    const Index s = m.s;
    Matrix M = Matrix(m.lambda.asDiagonal()) - m.H * m.Ky_view * m.H.transpose();
    M = ((M + M.transpose()) * 0.5).eval();
    if (try_invert(M, m.M_inv, 1e-6)) {
        m.jitter_used = false;
        return;
    }
    // The operator is positive semidefinite up to round-off, so a trace-scaled
    // ridge makes it invertible whenever it is not identically zero. The
    // rescued solve is allowed a looser residual: its condition number is by
    // construction about 1e10, which puts honest round-off near 1e-6.
    const double eps = 1e-10 * M.trace() / static_cast<double>(s);
    Matrix jittered = M + eps * Matrix::Identity(s, s);
    if (eps > 0.0 && try_invert(jittered, m.M_inv, 1e-3)) {
        m.jitter_used = true;
        return;
    }
    throw std::runtime_error(
        "latent operator is singular even after jitter; try fewer components or "
        "different kernels");
}

} // namespace

TrainedModel fit(const LaggedDataset& data, const KernelSpec& kx, const KernelSpec& ky,
                 Index s, bool center) {
    const Index N = data.size();
    if (N < 1) throw std::invalid_argument("fit: empty dataset");
    if (s < 1) throw std::invalid_argument("fit: component count must be positive");
    if (s > N) {
        throw std::invalid_argument("fit: " + std::to_string(s) + " components exceed sample count " +
                                    std::to_string(N));
    }

    TrainedModel m;
    m.s = s;
    m.p = data.p;
    m.X_train = data.X;
    m.Y_train = data.Y;
    m.kx = kx;
    m.ky = ky;
    m.centered = center;

    Matrix Kx = gram(kx, data.X);
    Matrix Ky = gram(ky, data.Y);
    if (center) {
        auto [Kxc, sx] = center_gram(Kx);
        auto [Kyc, sy] = center_gram(Ky);
        Kx = std::move(Kxc);
        Ky = std::move(Kyc);
        m.cx = std::move(sx);
        m.cy = std::move(sy);
        m.y_mean = data.Y.colwise().mean();
    } else {
        m.cx = CenteringStats::identity(N);
        m.cy = CenteringStats::identity(N);
        m.y_mean = Vector::Zero(data.Y.cols());
    }
    m.Ky_view = std::move(Ky);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(Kx + m.Ky_view);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("fit: eigendecomposition did not converge");
    }

    // Eigen returns eigenvalues ascending; export the top s descending. Each
    // row is flipped so its largest-magnitude entry is positive, ties broken
    // toward the lowest index.
    m.H.resize(s, N);
    m.lambda.resize(s);
    for (Index r = 0; r < s; ++r) {
        const Index src = N - 1 - r;
        m.lambda(r) = solver.eigenvalues()(src);
        Vector v = solver.eigenvectors().col(src);
        Index pivot = 0;
        double best = -1.0;
        for (Index i = 0; i < N; ++i) {
            const double a = std::abs(v(i));
            if (a > best) {
                best = a;
                pivot = i;
            }
        }
        if (v(pivot) < 0.0) v = -v;
        m.H.row(r) = v.transpose();
    }

    compute_latent_operator(m);
    return m;
}

const Matrix& latent_operator(const TrainedModel& model) { return model.M_inv; }

void rebuild_derived(TrainedModel& model) {
    const Index N = model.n_train();
    Matrix Ky = gram(model.ky, model.Y_train);
    if (model.centered) {
        const Matrix Kx = gram(model.kx, model.X_train);
        model.cx = center_gram(Kx).second;
        auto [Kyc, sy] = center_gram(Ky);
        model.Ky_view = std::move(Kyc);
        model.cy = std::move(sy);
        model.y_mean = model.Y_train.colwise().mean();
    } else {
        model.cx = CenteringStats::identity(N);
        model.cy = CenteringStats::identity(N);
        model.Ky_view = std::move(Ky);
        model.y_mean = Vector::Zero(model.Y_train.cols());
    }
    compute_latent_operator(model);
}

} // namespace mvrkm
