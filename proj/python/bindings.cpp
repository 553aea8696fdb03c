// Python module exposing the main operations of the toolkit: data
// generation, lag embedding, training from a JSON configuration, recursive
// forecasting, model persistence and grid search. Configurations travel as
// JSON strings in the same format the CLI reads and writes, so tuning
// results move freely between the two front ends.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mvrkm/datagen.hpp"
#include "mvrkm/embedding.hpp"
#include "mvrkm/forecaster.hpp"
#include "mvrkm/lssvm.hpp"
#include "mvrkm/model_io.hpp"
#include "mvrkm/tuner.hpp"

namespace py = pybind11;
using namespace mvrkm;

namespace {

TimeSeries series_from_array(const Matrix& values) {
    if (values.rows() < 1 || values.cols() < 1) {
        throw std::invalid_argument("series must have at least one row and one column");
    }
    TimeSeries s;
    s.values = values;
    return s;
}

/// A trained model of either kind plus the state recursive forecasting
/// starts from; the Python-facing handle around the C++ model types.
class PyModel {
public:
    explicit PyModel(StoredModel stored) : stored_(std::move(stored)) {}

    static PyModel train(const Matrix& values, const std::string& config_json) {
        const TrialConfig config = parse_trial_config_json(config_json, "config");
        return PyModel(train_from_config(series_from_array(values), config));
    }

    static PyModel load(const std::string& path) { return PyModel(load_model(path)); }

    void save(const std::string& path) const {
        if (const auto* m = std::get_if<StoredMvrkm>(&stored_)) {
            save_model(path, *m);
        } else {
            save_model(path, std::get<StoredLssvm>(stored_));
        }
    }

    std::string kind() const {
        return std::holds_alternative<StoredMvrkm>(stored_) ? "mvrkm" : "lssvm";
    }

    int lag() const {
        if (const auto* m = std::get_if<StoredMvrkm>(&stored_)) return m->model.p;
        return std::get<StoredLssvm>(stored_).model.p;
    }

    Index dim() const {
        if (const auto* m = std::get_if<StoredMvrkm>(&stored_)) return m->model.dim_out();
        return std::get<StoredLssvm>(stored_).model.dim_out();
    }

    py::dict forecast(Index horizon, const std::optional<Matrix>& truth,
                      const std::string& preimage) const {
        ForecastResult result;
        if (const auto* m = std::get_if<StoredMvrkm>(&stored_)) {
            ForecastConfig fc;
            fc.horizon = horizon;
            fc.preimage = preimage.empty() ? m->default_preimage : parse_preimage(preimage);
            result = recursive_forecast(m->model, m->x0, fc, truth ? &*truth : nullptr);
        } else {
            if (!preimage.empty()) {
                throw std::invalid_argument("preimage does not apply to an lssvm model");
            }
            const auto& l = std::get<StoredLssvm>(stored_);
            result = lssvm_recursive_forecast(l.model, l.x0, horizon, truth ? &*truth : nullptr);
        }
        py::dict out;
        out["predictions"] = result.predictions;
        out["latents"] = result.latents;
        out["mse"] = result.mse ? py::cast(*result.mse) : py::none();
        return out;
    }

private:
    StoredModel stored_;
};

py::list run_grid_search(const Matrix& values, const std::string& grid_json,
                         const std::string& kind, int jobs) {
    const Grid grid = parse_grid_json(grid_json, "grid");
    const auto trials =
        grid_search(series_from_array(values), grid, parse_model_kind(kind), jobs);
    py::list out;
    for (const auto& t : trials) {
        py::dict row;
        row["key"] = t.key;
        row["config"] = trial_config_to_json(t.config);
        row["validation_mse"] = t.ok ? py::cast(t.validation_mse) : py::none();
        row["ok"] = t.ok;
        row["error"] = t.error;
        out.append(std::move(row));
    }
    return out;
}

std::string default_config_json(const std::string& kind) {
    if (parse_model_kind(kind) == ModelKind::mvrkm) return trial_config_to_json(MvrkmConfig{});
    return trial_config_to_json(LssvmConfig{});
}

} // namespace

PYBIND11_MODULE(_mvrkm, m) {
    m.doc() = "Kernel time-series forecasting with a multi-view restricted kernel machine";

    m.def(
        "generate_sine",
        [](Index n, double freq, double amplitude, double phase, double dt) {
            return gen_sine(n, freq, amplitude, phase, dt).values;
        },
        py::arg("n"), py::arg("freq") = 1.0, py::arg("amplitude") = 1.0, py::arg("phase") = 0.0,
        py::arg("dt") = 0.01, "Sampled sine wave as an (n, 1) array.");
    m.def(
        "generate_sum_sines",
        [](Index n, const std::vector<double>& amplitudes, const std::vector<double>& freqs,
           const std::vector<double>& phases, double dt) {
            return gen_sum_sines(n, amplitudes, freqs, phases, dt).values;
        },
        py::arg("n"), py::arg("amplitudes"), py::arg("freqs"), py::arg("phases"),
        py::arg("dt") = 0.01, "Pointwise sum of sines as an (n, 1) array.");
    m.def(
        "generate_lorenz",
        [](Index steps, double dt, double a, double r, double b, double x0, double y0, double z0) {
            LorenzParams params;
            params.steps = steps;
            params.dt = dt;
            params.a = a;
            params.r = r;
            params.b = b;
            params.x0 = x0;
            params.y0 = y0;
            params.z0 = z0;
            return gen_lorenz(params).values;
        },
        py::arg("steps") = 4001, py::arg("dt") = 0.01, py::arg("a") = 10.0, py::arg("r") = 28.0,
        py::arg("b") = 2.667, py::arg("x0") = 1.0, py::arg("y0") = -1.0, py::arg("z0") = 1.05,
        "Explicit-Euler Lorenz trajectory as a (steps, 3) array; the first "
        "row is the initial condition.");

    m.def(
        "lag_embed",
        [](const Matrix& values, int p) {
            const LaggedDataset data = lag_embed(series_from_array(values), p);
            return py::make_tuple(data.X, data.Y);
        },
        py::arg("values"), py::arg("p"),
        "Lag-embeds a series into paired inputs and one-step-ahead targets "
        "(X of shape (N, (p+1)*d), Y of shape (N, d)).");

    m.def(
        "mse", [](const Matrix& pred, const Matrix& truth) { return mse(pred, truth); },
        py::arg("predictions"), py::arg("truth"),
        "Mean over all entries of the squared error.");

    m.def("default_config", &default_config_json, py::arg("kind") = "mvrkm",
          "Default hyperparameter assignment for 'mvrkm' or 'lssvm' as a "
          "JSON string, ready to edit and pass to train().");

    m.def("grid_search", &run_grid_search, py::arg("values"), py::arg("grid"),
          py::arg("kind") = "mvrkm", py::arg("jobs") = 1,
          "Exhaustive grid search scored by recursive-forecast MSE on a "
          "held-out tail; returns ranked trial dicts (best first). The grid "
          "is a JSON string of per-hyperparameter lists, the same format the "
          "CLI tune command reads.");

    py::class_<PyModel>(m, "Model")
        .def_static("train", &PyModel::train, py::arg("values"), py::arg("config"),
                    "Fits a model on a raw training series; config is a JSON "
                    "string whose 'model' field selects 'mvrkm' or 'lssvm'.")
        .def_static("load", &PyModel::load, py::arg("path"))
        .def("save", &PyModel::save, py::arg("path"))
        .def_property_readonly("kind", &PyModel::kind)
        .def_property_readonly("lag", &PyModel::lag)
        .def_property_readonly("dim", &PyModel::dim)
        .def("forecast", &PyModel::forecast, py::arg("horizon"),
             py::arg("truth") = std::nullopt, py::arg("preimage") = std::string{},
             "Recursive multi-step forecast from the end of the training "
             "series. Returns a dict with 'predictions' (original units), "
             "'latents' and 'mse' (None without truth). The optional "
             "preimage string ('linear', 'smoother:N_R' or "
             "'krr:LAMBDA:SIGMA_H') overrides the trained default.");
}
