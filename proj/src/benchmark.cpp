#include "mvrkm/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mvrkm {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

DatasetConfig load_dataset_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("dataset config '" + path + "': " + e.what());
    }
    const std::string context = "dataset config '" + path + "'";
    if (!j.is_object()) throw std::runtime_error(context + ": expected a JSON object");

    DatasetConfig cfg;
    try {
        cfg.name = j.at("name").get<std::string>();
        if (j.contains("csv")) {
            // Data paths are resolved relative to the config file.
            const std::filesystem::path base = std::filesystem::path(path).parent_path();
            cfg.csv_path = (base / j.at("csv").get<std::string>()).string();
            if (j.contains("has_header")) cfg.has_header = j.at("has_header").get<bool>();
            if (j.contains("columns")) cfg.columns = j.at("columns").get<std::vector<int>>();
        } else if (j.contains("lorenz")) {
            const auto& lz = j.at("lorenz");
            LorenzParams params;
            if (lz.contains("a")) params.a = lz.at("a").get<double>();
            if (lz.contains("r")) params.r = lz.at("r").get<double>();
            if (lz.contains("b")) params.b = lz.at("b").get<double>();
            if (lz.contains("x0")) params.x0 = lz.at("x0").get<double>();
            if (lz.contains("y0")) params.y0 = lz.at("y0").get<double>();
            if (lz.contains("z0")) params.z0 = lz.at("z0").get<double>();
            if (lz.contains("dt")) params.dt = lz.at("dt").get<double>();
            if (lz.contains("steps")) params.steps = lz.at("steps").get<Index>();
            cfg.lorenz = params;
        } else {
            throw std::runtime_error(context + ": needs either 'csv' or 'lorenz'");
        }
        cfg.split.n_train = j.at("split").at("train").get<Index>();
        cfg.split.n_test = j.at("split").at("test").get<Index>();

        if (!j.contains("models") || !j.at("models").is_array() || j.at("models").empty()) {
            throw std::runtime_error(context + ": 'models' must be a non-empty array");
        }
        for (const auto& mj : j.at("models")) {
            BenchmarkModelEntry entry;
            entry.name = mj.at("name").get<std::string>();
            entry.kind = parse_model_kind(mj.at("kind").get<std::string>());
            if (mj.contains("grid")) {
                entry.setup = parse_grid_json(mj.at("grid").dump(),
                                              context + ", model '" + entry.name + "' grid");
            } else if (mj.contains("config")) {
                entry.setup = parse_trial_config_json(
                    mj.at("config").dump(), context + ", model '" + entry.name + "' config");
            } else {
                throw std::runtime_error(context + ": model '" + entry.name +
                                         "' needs either 'grid' or 'config'");
            }
            cfg.models.push_back(std::move(entry));
        }
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
    return cfg;
}

std::vector<BenchmarkRow> run_dataset(const DatasetConfig& config, int jobs) {
    if (config.models.empty()) {
        throw std::invalid_argument("run_dataset: dataset '" + config.name + "' lists no models");
    }
    const TimeSeries series = config.lorenz
                                  ? gen_lorenz(*config.lorenz)
                                  : load_csv(config.csv_path, config.has_header, config.columns);
    const auto [train, test] = split(series, config.split);
    if (test.n() < 1) {
        throw std::invalid_argument("run_dataset: dataset '" + config.name + "' has an empty test split");
    }

    std::vector<BenchmarkRow> rows;
    rows.reserve(config.models.size());
    for (const auto& entry : config.models) {
        BenchmarkRow row;
        row.dataset = config.name;
        row.model = entry.name;
        try {
            TrialConfig best;
            if (const auto* fixed = std::get_if<TrialConfig>(&entry.setup)) {
                best = *fixed;
            } else {
                const auto trials = grid_search(train, std::get<Grid>(entry.setup), entry.kind, jobs);
                best = trials.front().config;
            }
            row.config_key = config_key(best);
            // Refit on the full training split, then forecast the test split.
            const EvalOutcome outcome = evaluate_config(train, test.values, best);
            row.test_mse = outcome.mse;
            row.train_seconds = outcome.train_seconds;
            row.forecast_seconds = outcome.forecast_seconds;
            row.ok = std::isfinite(outcome.mse);
            if (!row.ok) row.error = "non-finite test error";
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_benchmark_csv(const std::string& path, const std::vector<BenchmarkRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "dataset,model,config,test_mse,train_seconds,forecast_seconds,status,error\n";
    for (const auto& r : rows) {
        std::string error = r.error;
        for (char& c : error) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << r.dataset << ',' << r.model << ',' << r.config_key << ',';
        if (r.ok) out << fmt_double(r.test_mse);
        out << ',' << fmt_double(r.train_seconds) << ',' << fmt_double(r.forecast_seconds) << ','
            << (r.ok ? "ok" : "failed") << ',' << error << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace mvrkm
