#pragma once

#include <optional>
#include <string>
#include <variant>

#include "mvrkm/trainer.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm {

/// Output step solved in closed form; requires a linear output kernel.
struct LinearPreimage {};

/// Similarity-weighted average of the n_r most similar training targets.
struct SmootherPreimage {
    int n_r = 1;
};

/// Learned ridge-regression map from latent codes back to output space.
struct KrrPreimage {
    double lambda = 1e-6;
    double sigma_h = 1.0;
};

using PreimageSpec = std::variant<LinearPreimage, SmootherPreimage, KrrPreimage>;

/// Canonical text form: "linear", "smoother:<n_r>" or "krr:<lambda>:<sigma_h>".
std::string to_string(const PreimageSpec& spec);
PreimageSpec parse_preimage(const std::string& text);

struct ForecastConfig {
    Index horizon = 1;
    PreimageSpec preimage = LinearPreimage{};
};

struct ForecastResult {
    Matrix predictions; // horizon x d, original units
    Matrix latents;     // horizon x s
    std::optional<double> mse; // vs supplied truth, original units
};

/// Latent code of a lag vector: M_inv * H * k_x(x), with the kernel vector
/// centered by the training statistics when centering is on.
Vector latent_code(const TrainedModel& model, Eigen::Ref<const Vector> x);

/// Closed-form output for a linear output kernel: y = Y^T (H^T h), shifted
/// back by the training target mean when centering is on.
Vector predict_linear(const TrainedModel& model, Eigen::Ref<const Vector> h);

/// Kernel-trick vector Ky H^T h: similarities of the implicit prediction to
/// every training target in the output feature space.
Vector output_kernel_vector(const TrainedModel& model, Eigen::Ref<const Vector> h);

/// Approximate pre-image as the similarity-weighted average of the n_r
/// training targets with the largest similarities. Non-positive weights are
/// dropped from the average; if the retained weights sum to (numerically)
/// nothing, the single most similar target is returned.
Vector preimage_smoother(const TrainedModel& model, Eigen::Ref<const Vector> k_y_vec, int n_r);

/// Ridge-regression pre-image map fitted on the training latent codes.
struct PreimageMap {
    Matrix latents; // N x s, training latent codes as rows
    Matrix alpha;   // N x d
    double sigma_h = 1.0;

    Vector predict(Eigen::Ref<const Vector> h) const;
};

PreimageMap preimage_krr_fit(const TrainedModel& model, double lambda, double sigma_h);

/// Recursive multi-step forecast from an initial lag window (standardized
/// scale). Each prediction is shifted into the window for the next step.
/// Predictions are reported in original units; when `truth` (original
/// units, horizon x d) is given, the mean squared error is filled in.
ForecastResult recursive_forecast(const TrainedModel& model, Eigen::Ref<const Vector> x0,
                                  const ForecastConfig& config, const Matrix* truth = nullptr);

} // namespace mvrkm
