#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mvrkm/datagen.hpp"
#include "mvrkm/tuner.hpp"

namespace mvrkm {

/// One dataset entry of a benchmark run: where the data comes from, how it
/// is split, and per-model hyperparameters (fixed config or a tuning grid).
struct BenchmarkModelEntry {
    std::string name; // e.g. "mvrkm_rbf", "mvrkm_linear", "lssvm"
    ModelKind kind = ModelKind::mvrkm;
    std::variant<TrialConfig, Grid> setup;
};

struct DatasetConfig {
    std::string name;
    // Either a CSV path (resolved relative to the config file) or a
    // generator description.
    std::string csv_path;
    bool has_header = false;
    std::vector<int> columns;
    std::optional<LorenzParams> lorenz; // generator alternative to csv_path
    SplitSpec split;
    std::vector<BenchmarkModelEntry> models;
};

DatasetConfig load_dataset_config(const std::string& path);

struct BenchmarkRow {
    std::string dataset;
    std::string model;
    std::string config_key;
    double test_mse = 0.0;
    double train_seconds = 0.0;
    double forecast_seconds = 0.0;
    bool ok = false;
    std::string error;
};

/// Runs every model entry of one dataset: grids are tuned on the training
/// split, the winning config is refit on the full training split, and the
/// test split is forecast recursively.
std::vector<BenchmarkRow> run_dataset(const DatasetConfig& config, int jobs = 1);

void write_benchmark_csv(const std::string& path, const std::vector<BenchmarkRow>& rows);

} // namespace mvrkm
