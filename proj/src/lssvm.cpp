#include "mvrkm/lssvm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace mvrkm {

LssvmModel lssvm_fit(const LaggedDataset& data, const KernelSpec& kx, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("lssvm_fit: gamma must be positive, got " + std::to_string(gamma));
    }
    const Index N = data.size();
    if (N < 1) throw std::invalid_argument("lssvm_fit: empty dataset");
    const Index d = data.Y.cols();

    Matrix A = Matrix::Zero(N + 1, N + 1);
    A.block(0, 1, 1, N).setOnes();
    A.block(1, 0, N, 1).setOnes();
    A.block(1, 1, N, N) = gram(kx, data.X) + Matrix::Identity(N, N) / gamma;

    Matrix rhs = Matrix::Zero(N + 1, d);
    rhs.bottomRows(N) = data.Y;

    // One factorization shared by all output dimensions.
    Eigen::PartialPivLU<Matrix> lu(A);
    const Matrix sol = lu.solve(rhs);
    for (Index j = 0; j < d; ++j) {
        const double scale = std::max(data.Y.col(j).norm(), 1e-300);
        if (!sol.col(j).allFinite() || (A * sol.col(j) - rhs.col(j)).norm() > 1e-8 * scale) {
            throw std::runtime_error("lssvm_fit: bordered system is singular");
        }
    }

    LssvmModel m;
    m.gamma = gamma;
    m.kx = kx;
    m.X_train = data.X;
    m.p = data.p;
    m.b = sol.row(0).transpose();
    m.alpha = sol.bottomRows(N);
    return m;
}

Vector lssvm_predict(const LssvmModel& model, Eigen::Ref<const Vector> x) {
    if (x.size() != model.dim_in()) {
        throw std::invalid_argument("lssvm_predict: lag vector has length " + std::to_string(x.size()) +
                                    ", model expects " + std::to_string(model.dim_in()));
    }
    const Vector k = kernel_vector(model.kx, model.X_train, x);
    return model.alpha.transpose() * k + model.b;
}

ForecastResult lssvm_recursive_forecast(const LssvmModel& model, Eigen::Ref<const Vector> x0,
                                        Index horizon, const Matrix* truth) {
    if (horizon < 1) throw std::invalid_argument("lssvm_recursive_forecast: horizon must be positive");
    if (x0.size() != model.dim_in()) {
        throw std::invalid_argument("lssvm_recursive_forecast: initial window has length " +
                                    std::to_string(x0.size()) + ", model expects " +
                                    std::to_string(model.dim_in()));
    }

    const Index d = model.dim_out();
    ForecastResult result;
    result.predictions.resize(horizon, d);
    result.latents.resize(horizon, 0);

    Vector window = x0;
    for (Index t = 0; t < horizon; ++t) {
        const Vector y = lssvm_predict(model, window);
        if (!y.allFinite()) {
            // Steps are numbered from 1 to match the rows of the forecast output.
            throw std::runtime_error("non-finite prediction at step " + std::to_string(t + 1));
        }
        result.predictions.row(t) = y.transpose();
        shift_window(window, y, model.p);
    }

    if (model.standardization) {
        result.predictions = destandardize(result.predictions, *model.standardization);
    }
    if (truth) {
        if (truth->rows() < horizon || truth->cols() != d) {
            throw std::invalid_argument("lssvm_recursive_forecast: truth shape does not cover the horizon");
        }
        result.mse = (result.predictions - truth->topRows(horizon)).squaredNorm() /
                     static_cast<double>(horizon * d);
    }
    return result;
}

} // namespace mvrkm
