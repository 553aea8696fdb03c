#pragma once

#include <optional>

#include "mvrkm/embedding.hpp"
#include "mvrkm/forecaster.hpp"
#include "mvrkm/kernels.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm {

/// NAR least-squares SVM regression baseline: y = sum_i alpha_i k_x(x_i, x) + b.
struct LssvmModel {
    Matrix alpha; // N x d
    Vector b;     // d
    double gamma = 1.0;
    KernelSpec kx;
    Matrix X_train;
    std::optional<ColumnStats> standardization;
    int p = 1;

    Index n_train() const { return X_train.rows(); }
    Index dim_in() const { return X_train.cols(); }
    Index dim_out() const { return alpha.cols(); }
};

/// Solves the (N+1)x(N+1) bordered system
///   [[0, 1^T], [1, K + I/gamma]] [b; alpha] = [0; y]
/// once, with one right-hand side per output dimension.
LssvmModel lssvm_fit(const LaggedDataset& data, const KernelSpec& kx, double gamma);

/// Dual expansion evaluated per output dimension.
Vector lssvm_predict(const LssvmModel& model, Eigen::Ref<const Vector> x);

/// Recursive forecast with the same window-shift scheme as the main model.
ForecastResult lssvm_recursive_forecast(const LssvmModel& model, Eigen::Ref<const Vector> x0,
                                        Index horizon, const Matrix* truth = nullptr);

} // namespace mvrkm
