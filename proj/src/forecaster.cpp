#include "mvrkm/forecaster.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mvrkm {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string to_string(const PreimageSpec& spec) {
    if (std::holds_alternative<LinearPreimage>(spec)) return "linear";
    if (const auto* s = std::get_if<SmootherPreimage>(&spec)) {
        return "smoother:" + std::to_string(s->n_r);
    }
    const auto& k = std::get<KrrPreimage>(spec);
    return "krr:" + fmt_double(k.lambda) + ":" + fmt_double(k.sigma_h);
}

PreimageSpec parse_preimage(const std::string& text) {
    if (text == "linear") return LinearPreimage{};
    const auto bad = [&]() -> std::invalid_argument {
        return std::invalid_argument("bad pre-image spec '" + text +
                                     "' (expected 'linear', 'smoother:N_R' or 'krr:LAMBDA:SIGMA_H')");
    };
    if (text.rfind("smoother:", 0) == 0) {
        std::size_t pos = 0;
        const std::string arg = text.substr(9);
        int n_r = 0;
        try {
            n_r = std::stoi(arg, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos != arg.size() || n_r < 1) throw bad();
        return SmootherPreimage{n_r};
    }
    if (text.rfind("krr:", 0) == 0) {
        const std::string rest = text.substr(4);
        const std::size_t colon = rest.find(':');
        if (colon == std::string::npos) throw bad();
        KrrPreimage k;
        try {
            std::size_t pos = 0;
            k.lambda = std::stod(rest.substr(0, colon), &pos);
            if (pos != colon) throw bad();
            const std::string tail = rest.substr(colon + 1);
            k.sigma_h = std::stod(tail, &pos);
            if (pos != tail.size()) throw bad();
        } catch (const std::invalid_argument&) {
            throw bad();
        } catch (const std::out_of_range&) {
            throw bad();
        }
        if (!(k.lambda > 0.0) || !(k.sigma_h > 0.0)) throw bad();
        return k;
    }
    throw bad();
}

Vector latent_code(const TrainedModel& model, Eigen::Ref<const Vector> x) {
    if (x.size() != model.dim_in()) {
        throw std::invalid_argument("latent_code: lag vector has length " + std::to_string(x.size()) +
                                    ", model expects " + std::to_string(model.dim_in()));
    }
    Vector k = kernel_vector(model.kx, model.X_train, x);
    if (model.centered) k = center_kernel_vector(k, model.cx);
    return model.M_inv * (model.H * k);
}

Vector predict_linear(const TrainedModel& model, Eigen::Ref<const Vector> h) {
    if (model.ky.family != KernelFamily::linear) {
        throw std::logic_error("closed-form output requires a linear output kernel");
    }
    const Vector w = model.H.transpose() * h;
    Vector y = model.Y_train.transpose() * w;
    if (model.centered) y += model.y_mean * (1.0 - w.sum());
    return y;
}

Vector output_kernel_vector(const TrainedModel& model, Eigen::Ref<const Vector> h) {
    if (h.size() != model.s) {
        throw std::invalid_argument("output_kernel_vector: latent has length " +
                                    std::to_string(h.size()) + ", model has " +
                                    std::to_string(model.s) + " components");
    }
    return model.Ky_view * (model.H.transpose() * h);
}

Vector preimage_smoother(const TrainedModel& model, Eigen::Ref<const Vector> k_y_vec, int n_r) {
    const Index N = model.n_train();
    if (k_y_vec.size() != N) {
        throw std::invalid_argument("preimage_smoother: similarity vector has length " +
                                    std::to_string(k_y_vec.size()) + ", expected " + std::to_string(N));
    }
    if (n_r < 1 || n_r > N) {
        throw std::invalid_argument("preimage_smoother: n_r must lie in [1, " + std::to_string(N) +
                                    "], got " + std::to_string(n_r));
    }
    const double max_abs = k_y_vec.cwiseAbs().maxCoeff();
    if (max_abs == 0.0) throw std::runtime_error("prediction outside kernel support");

    std::vector<Index> order(static_cast<std::size_t>(N));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return k_y_vec(a) > k_y_vec(b); });

    // Only positive similarities contribute weight; this keeps the result a
    // convex combination of the selected targets.
    Vector acc = Vector::Zero(model.dim_out());
    double total = 0.0;
    int contributors = 0;
    for (int r = 0; r < n_r; ++r) {
        const Index j = order[static_cast<std::size_t>(r)];
        const double w = k_y_vec(j);
        if (w <= 0.0) break;
        acc += w * model.Y_train.row(j).transpose();
        total += w;
        ++contributors;
    }
    // A single contributor is always the top-ranked target; return its row
    // directly so the weight cancels exactly instead of up to round-off.
    if (contributors <= 1 || total <= 1e-12 * max_abs) {
        return model.Y_train.row(order[0]).transpose();
    }
    return acc / total;
}

Vector PreimageMap::predict(Eigen::Ref<const Vector> h) const {
    const Vector k = kernel_vector(KernelSpec::rbf(sigma_h), latents, h);
    return alpha.transpose() * k;
}

PreimageMap preimage_krr_fit(const TrainedModel& model, double lambda, double sigma_h) {
    if (!(lambda > 0.0)) throw std::invalid_argument("preimage_krr_fit: lambda must be positive");
    PreimageMap map;
    map.sigma_h = sigma_h;
    map.latents = model.H.transpose();
    const Matrix K = gram(KernelSpec::rbf(sigma_h), map.latents);
    const Index N = K.rows();
    const Matrix A = K * K + lambda * Matrix::Identity(N, N);
    const Matrix rhs = K * model.Y_train;
    Eigen::LDLT<Matrix> ldlt(A);
    map.alpha = ldlt.solve(rhs);
    const double scale = std::max(rhs.norm(), 1.0);
    if (!map.alpha.allFinite() || (A * map.alpha - rhs).norm() > 1e-6 * scale) {
        throw std::runtime_error("pre-image map system is ill-conditioned; increase lambda");
    }
    return map;
}

ForecastResult recursive_forecast(const TrainedModel& model, Eigen::Ref<const Vector> x0,
                                  const ForecastConfig& config, const Matrix* truth) {
    if (config.horizon < 1) throw std::invalid_argument("recursive_forecast: horizon must be positive");
    if (x0.size() != model.dim_in()) {
        throw std::invalid_argument("recursive_forecast: initial window has length " +
                                    std::to_string(x0.size()) + ", model expects " +
                                    std::to_string(model.dim_in()));
    }

    std::optional<PreimageMap> map;
    if (const auto* krr = std::get_if<KrrPreimage>(&config.preimage)) {
        map = preimage_krr_fit(model, krr->lambda, krr->sigma_h);
    }

    const Index d = model.dim_out();
    ForecastResult result;
    result.predictions.resize(config.horizon, d);
    result.latents.resize(config.horizon, model.s);

    Vector window = x0;
    for (Index t = 0; t < config.horizon; ++t) {
        const Vector h = latent_code(model, window);
        Vector y;
        if (std::holds_alternative<LinearPreimage>(config.preimage)) {
            y = predict_linear(model, h);
        } else if (const auto* sm = std::get_if<SmootherPreimage>(&config.preimage)) {
            y = preimage_smoother(model, output_kernel_vector(model, h), sm->n_r);
        } else {
            y = map->predict(h);
        }
        if (!y.allFinite() || !h.allFinite()) {
            // Steps are numbered from 1 to match the rows of the forecast output.
            throw std::runtime_error("non-finite prediction at step " + std::to_string(t + 1));
        }
        result.latents.row(t) = h.transpose();
        result.predictions.row(t) = y.transpose();
        shift_window(window, y, model.p);
    }

    if (model.standardization) {
        result.predictions = destandardize(result.predictions, *model.standardization);
    }
    if (truth) {
        if (truth->rows() < config.horizon || truth->cols() != d) {
            throw std::invalid_argument("recursive_forecast: truth shape does not cover the horizon");
        }
        result.mse = (result.predictions - truth->topRows(config.horizon)).squaredNorm() /
                     static_cast<double>(config.horizon * d);
    }
    return result;
}

} // namespace mvrkm
