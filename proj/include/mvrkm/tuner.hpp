#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mvrkm/datagen.hpp"
#include "mvrkm/forecaster.hpp"
#include "mvrkm/kernels.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm {

enum class ModelKind { mvrkm, lssvm };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

/// Full hyperparameter assignment for one MV-RKM trial.
struct MvrkmConfig {
    int p = 1;
    KernelSpec kx = KernelSpec::rbf(1.0);
    KernelSpec ky = KernelSpec::linear();
    Index s = 0; // 0 = default min(N, 50)
    PreimageSpec preimage = LinearPreimage{};
    bool center = true;
    bool standardize = true;
};

struct LssvmConfig {
    int p = 1;
    KernelSpec kx = KernelSpec::rbf(1.0);
    double gamma = 1.0;
    bool standardize = true;
};

using TrialConfig = std::variant<MvrkmConfig, LssvmConfig>;

/// Canonical single-line key, also the deterministic tie-breaker.
std::string config_key(const TrialConfig& config);

/// JSON round-trip for a single configuration ("model" selects the variant);
/// this is the format of the tuner's best-config file, reusable by `train`.
std::string trial_config_to_json(const TrialConfig& config);
TrialConfig parse_trial_config_json(const std::string& text, const std::string& context);

/// Hyperparameter lists expanded into the Cartesian grid of trials.
struct Grid {
    std::vector<int> lags;
    std::vector<double> sigmas_x;
    std::vector<KernelFamily> ky_families{KernelFamily::linear};
    std::vector<double> sigmas_y{1.0};
    std::vector<Index> components;
    std::vector<std::string> preimage_kinds{"smoother"}; // for rbf ky: smoother and/or krr
    std::vector<int> n_rs{1};
    std::vector<double> lambdas{1e-6};
    std::vector<double> sigmas_h{1.0};
    std::vector<double> gammas{1.0}; // lssvm
    std::vector<bool> centers{true};
    bool standardize = true;
};

/// Reads a grid definition from a JSON file of per-hyperparameter lists.
Grid load_grid(const std::string& path);

/// Same, from JSON text; `context` names the source in error messages.
Grid parse_grid_json(const std::string& text, const std::string& context);

std::vector<TrialConfig> expand_grid(const Grid& grid, ModelKind kind);

struct TrialResult {
    TrialConfig config;
    std::string key;
    double validation_mse = 0.0;
    double train_seconds = 0.0;
    double forecast_seconds = 0.0;
    bool ok = false;
    std::string error;
};

/// Mean over all entries of the squared error.
double mse(const Matrix& pred, const Matrix& truth);

/// Fits `config` on `train` and recursively forecasts truth.rows() steps
/// from the last training window; the returned MSE is in original units.
struct EvalOutcome {
    double mse = 0.0;
    double train_seconds = 0.0;
    double forecast_seconds = 0.0;
};
EvalOutcome evaluate_config(const TimeSeries& train, const Matrix& truth_original,
                            const TrialConfig& config);

/// Fraction of the training split held out as the tuning validation set.
inline constexpr double kValidationFraction = 0.15;

/// Exhaustive grid search scored by recursive-forecast MSE on the held-out
/// tail of `series`. Failed trials are kept, marked, and ranked last; the
/// ranking is deterministic and independent of grid order and of `jobs`.
std::vector<TrialResult> grid_search(const TimeSeries& series, const Grid& grid, ModelKind kind,
                                     int jobs = 1);

/// One CSV row per trial, ranked. Deliberately excludes wall-clock timings
/// so that reruns and different job counts produce identical files.
void write_trials_csv(const std::string& path, const std::vector<TrialResult>& trials);

} // namespace mvrkm
