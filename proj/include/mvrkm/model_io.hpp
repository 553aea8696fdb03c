#pragma once

#include <string>
#include <variant>

#include "mvrkm/forecaster.hpp"
#include "mvrkm/lssvm.hpp"
#include "mvrkm/trainer.hpp"
#include "mvrkm/tuner.hpp"

namespace mvrkm {

/// A trained MV-RKM plus what `forecast` needs to continue past the training
/// set without the original data: the last lag window and a default output
/// path.
struct StoredMvrkm {
    TrainedModel model;
    Vector x0;
    PreimageSpec default_preimage = LinearPreimage{};
};

struct StoredLssvm {
    LssvmModel model;
    Vector x0;
};

using StoredModel = std::variant<StoredMvrkm, StoredLssvm>;

/// Fits a model on a raw training series: standardizes (when configured),
/// lag-embeds, fits, and records the last training window as the starting
/// point for recursive forecasting. s = 0 resolves to min(N, 50).
StoredMvrkm train_from_config(const TimeSeries& train, const MvrkmConfig& config);
StoredLssvm train_from_config(const TimeSeries& train, const LssvmConfig& config);
StoredModel train_from_config(const TimeSeries& train, const TrialConfig& config);

/// Single self-describing binary file: versioned header, kernel specs,
/// standardization statistics and all matrices as little-endian 64-bit
/// floats. Derived caches (centered Grams, latent operator) are rebuilt
/// deterministically on load.
void save_model(const std::string& path, const StoredMvrkm& stored);
void save_model(const std::string& path, const StoredLssvm& stored);
StoredModel load_model(const std::string& path);

} // namespace mvrkm
