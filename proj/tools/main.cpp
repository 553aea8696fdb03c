#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "mvrkm/benchmark.hpp"
#include "mvrkm/datagen.hpp"
#include "mvrkm/model_io.hpp"
#include "mvrkm/tuner.hpp"
#include "mvrkm/version.hpp"

namespace fs = std::filesystem;
using namespace mvrkm;
using nlohmann::json;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fnv1a64_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for hashing");
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char out[32];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

// Accumulates what every run records next to its outputs.
struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    int seed = 0;
    json config = json::object();
    std::map<std::string, std::string> input_hashes;
    std::vector<std::string> outputs;
    std::map<std::string, double> timings;

    void add_input(const std::string& path) { input_hashes[path] = "fnv1a64:" + fnv1a64_hex(path); }

    void write(const fs::path& dir) const {
        json j;
        j["tool"] = "mvrkm";
        j["version"] = kVersion;
        j["command"] = command;
        j["argv"] = argv;
        j["seed"] = seed;
        j["config"] = config;
        j["inputs"] = input_hashes;
        j["outputs"] = outputs;
        j["timings_seconds"] = timings;
        std::ofstream out(dir / "manifest.json");
        if (!out) throw std::runtime_error("cannot write manifest in '" + dir.string() + "'");
        out << j.dump(2) << '\n';
        if (!out) throw std::runtime_error("manifest write failed in '" + dir.string() + "'");
    }
};

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

SplitSpec parse_split(const std::string& text) {
    const auto colon = text.find(':');
    SplitSpec spec;
    try {
        std::size_t pos = 0;
        spec.n_train = std::stoll(text.substr(0, colon), &pos);
        if (colon == std::string::npos || pos != colon) throw std::invalid_argument(text);
        const std::string tail = text.substr(colon + 1);
        spec.n_test = std::stoll(tail, &pos);
        if (pos != tail.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::runtime_error("bad split '" + text + "' (expected N_TRAIN:N_TEST)");
    }
    if (spec.n_train < 0 || spec.n_test < 0) {
        throw std::runtime_error("bad split '" + text + "' (counts must be non-negative)");
    }
    return spec;
}

// Options shared by commands that read a CSV series.
struct DataOptions {
    std::string path;
    bool has_header = false;
    std::vector<int> columns;

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", path, "Input series CSV")->required();
        cmd->add_flag("--has-header", has_header, "Skip the first CSV row");
        cmd->add_option("--columns", columns, "Comma-separated column selection (0-based)")
            ->delimiter(',');
    }

    TimeSeries load() const { return load_csv(path, has_header, columns); }
};

// Model hyperparameter flags shared by train (and mirrored by the tuner's
// best-config JSON, which --config loads instead).
struct ModelOptions {
    std::string model = "mvrkm";
    int lag = 1;
    std::string kx = "rbf:1";
    std::string ky = "linear";
    Index components = 0;
    std::string preimage;
    bool center = true;
    bool standardize = true;
    double gamma = 1.0;
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "JSON config file (e.g. the tuner's best_config.json); overrides the flags below");
        cmd->add_option("--model", model, "Model kind: mvrkm or lssvm")
            ->check(CLI::IsMember({"mvrkm", "lssvm"}));
        cmd->add_option("--lag", lag, "Lag order p")->check(CLI::PositiveNumber);
        cmd->add_option("--kx", kx, "Input kernel: rbf:SIGMA or linear");
        cmd->add_option("--ky", ky, "Output kernel: rbf:SIGMA or linear");
        cmd->add_option("--components", components,
                        "Number of latent components s (default: min(N, 50))")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--preimage", preimage,
                        "Output map: linear, smoother:N_R or krr:LAMBDA:SIGMA_H "
                        "(default: linear for linear ky, smoother:10 otherwise)");
        cmd->add_flag("--center,!--no-center", center, "Center kernels in feature space (default on)");
        cmd->add_flag("--standardize,!--no-standardize", standardize,
                      "Standardize the series before training (default on)");
        cmd->add_option("--gamma", gamma, "LS-SVM regularization");
    }

    TrialConfig resolve() const {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open config file '" + config_path + "'");
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            return parse_trial_config_json(text, "config file '" + config_path + "'");
        }
        if (model == "lssvm") {
            LssvmConfig c;
            c.p = lag;
            c.kx = parse_kernel(kx);
            c.gamma = gamma;
            c.standardize = standardize;
            return c;
        }
        MvrkmConfig c;
        c.p = lag;
        c.kx = parse_kernel(kx);
        c.ky = parse_kernel(ky);
        c.s = components;
        c.center = center;
        c.standardize = standardize;
        if (!preimage.empty()) {
            c.preimage = parse_preimage(preimage);
        } else if (c.ky.family == KernelFamily::rbf) {
            c.preimage = SmootherPreimage{10};
        }
        if (c.ky.family == KernelFamily::linear &&
            !std::holds_alternative<LinearPreimage>(c.preimage)) {
            throw std::runtime_error("pre-image '" + preimage + "' requires an rbf output kernel");
        }
        return c;
    }
};

json config_as_json(const TrialConfig& config) { return json::parse(trial_config_to_json(config)); }

int cmd_generate(const std::string& kind, const json& params, const TimeSeries& series,
                 const std::string& out, Manifest& manifest) {
    const fs::path dir = prepare_out_dir(out);
    const fs::path csv = dir / "data.csv";
    save_csv(csv.string(), series.values);
    manifest.command = "generate";
    manifest.config = {{"kind", kind}, {"params", params}};
    manifest.outputs = {"data.csv"};
    manifest.write(dir);
    std::cout << "wrote " << csv.string() << " (" << series.n() << " x " << series.d() << ")\n";
    return 0;
}

int cmd_train(const DataOptions& data, const ModelOptions& model_opts, const std::string& split_text,
              const std::string& out, Manifest& manifest) {
    const auto t0 = clock_type::now();
    TimeSeries series = data.load();
    if (!split_text.empty()) {
        const SplitSpec spec = parse_split(split_text);
        series = split(series, spec).first; // the test tail is never seen
    }
    const TrialConfig config = model_opts.resolve();
    manifest.add_input(data.path);
    if (!model_opts.config_path.empty()) manifest.add_input(model_opts.config_path);

    const fs::path dir = prepare_out_dir(out);
    const fs::path model_path = dir / "model.bin";
    const auto t1 = clock_type::now();
    const StoredModel stored = train_from_config(series, config);
    const double train_seconds = std::chrono::duration<double>(clock_type::now() - t1).count();

    if (const auto* m = std::get_if<StoredMvrkm>(&stored)) {
        save_model(model_path.string(), *m);
        std::cout << "trained mvrkm on " << m->model.n_train() << " windows (p=" << m->model.p
                  << ", s=" << m->model.s << ")";
        if (m->model.jitter_used) std::cout << " [latent operator needed jitter]";
        std::cout << '\n';
    } else {
        const auto& l = std::get<StoredLssvm>(stored);
        save_model(model_path.string(), l);
        std::cout << "trained lssvm on " << l.model.n_train() << " windows (p=" << l.model.p << ")\n";
    }

    manifest.command = "train";
    manifest.config = config_as_json(config);
    if (!split_text.empty()) manifest.config["split"] = split_text;
    manifest.outputs = {"model.bin"};
    manifest.timings["train"] = train_seconds;
    manifest.timings["total"] = seconds_since(t0);
    manifest.write(dir);
    std::cout << "wrote " << model_path.string() << '\n';
    return 0;
}

int cmd_forecast(const std::string& model_path, Index horizon, const std::string& truth_path,
                 bool truth_has_header, const std::vector<int>& truth_columns, Index skip,
                 const std::string& preimage_text, const std::string& out, Manifest& manifest) {
    const auto t0 = clock_type::now();
    manifest.add_input(model_path);
    const StoredModel stored = load_model(model_path);

    std::optional<Matrix> truth;
    if (!truth_path.empty()) {
        manifest.add_input(truth_path);
        const TimeSeries t = load_csv(truth_path, truth_has_header, truth_columns);
        if (t.n() < skip + horizon) {
            throw std::runtime_error("truth file has " + std::to_string(t.n()) +
                                     " rows, need skip+horizon = " + std::to_string(skip + horizon));
        }
        truth = t.values.middleRows(skip, horizon);
    }

    ForecastResult result;
    std::string config_key_text;
    if (const auto* m = std::get_if<StoredMvrkm>(&stored)) {
        ForecastConfig fc;
        fc.horizon = horizon;
        fc.preimage = preimage_text.empty() ? m->default_preimage : parse_preimage(preimage_text);
        result = recursive_forecast(m->model, m->x0, fc, truth ? &*truth : nullptr);
        config_key_text = "mvrkm preimage=" + to_string(fc.preimage);
    } else {
        const auto& l = std::get<StoredLssvm>(stored);
        if (!preimage_text.empty()) {
            throw std::runtime_error("--preimage does not apply to an lssvm model");
        }
        result = lssvm_recursive_forecast(l.model, l.x0, horizon, truth ? &*truth : nullptr);
        config_key_text = "lssvm";
    }

    const Index d = result.predictions.cols();
    std::vector<std::string> header;
    header.push_back("step");
    for (Index j = 0; j < d; ++j) header.push_back("dim_" + std::to_string(j));
    Matrix table;
    if (truth) {
        for (Index j = 0; j < d; ++j) header.push_back("truth_" + std::to_string(j));
        header.push_back("sqerr");
        table.resize(horizon, 1 + 2 * d + 1);
        for (Index t = 0; t < horizon; ++t) {
            table(t, 0) = static_cast<double>(t + 1);
            table.block(t, 1, 1, d) = result.predictions.row(t);
            table.block(t, 1 + d, 1, d) = truth->row(t);
            table(t, 1 + 2 * d) =
                (result.predictions.row(t) - truth->row(t)).squaredNorm() / static_cast<double>(d);
        }
    } else {
        table.resize(horizon, 1 + d);
        for (Index t = 0; t < horizon; ++t) {
            table(t, 0) = static_cast<double>(t + 1);
            table.block(t, 1, 1, d) = result.predictions.row(t);
        }
    }

    const fs::path dir = prepare_out_dir(out);
    const fs::path csv = dir / "forecast.csv";
    save_csv(csv.string(), table, header);

    manifest.command = "forecast";
    manifest.config = {{"model_file", model_path},
                       {"horizon", horizon},
                       {"resolved", config_key_text}};
    if (!truth_path.empty()) manifest.config["skip"] = skip;
    manifest.outputs = {"forecast.csv"};
    manifest.timings["total"] = seconds_since(t0);

    if (result.mse) {
        std::cout << "mse " << *result.mse << '\n';
        manifest.config["mse"] = *result.mse;
        if (d > 1) {
            for (Index j = 0; j < d; ++j) {
                const double dim_mse =
                    (result.predictions.col(j) - truth->col(j)).squaredNorm() /
                    static_cast<double>(horizon);
                std::cout << "mse dim_" << j << " " << dim_mse << '\n';
                manifest.config["mse_dim_" + std::to_string(j)] = dim_mse;
            }
        }
    }
    manifest.write(dir);
    std::cout << "wrote " << csv.string() << '\n';
    return 0;
}

int cmd_tune(const DataOptions& data, const std::string& grid_path, const std::string& kind_text,
             const std::string& split_text, int jobs, const std::string& out, Manifest& manifest) {
    const auto t0 = clock_type::now();
    manifest.add_input(data.path);
    manifest.add_input(grid_path);
    TimeSeries series = data.load();
    std::optional<TimeSeries> test;
    if (!split_text.empty()) {
        const SplitSpec spec = parse_split(split_text);
        auto parts = split(series, spec);
        series = std::move(parts.first);
        if (spec.n_test > 0) test = std::move(parts.second);
    }

    const Grid grid = load_grid(grid_path);
    const ModelKind kind = parse_model_kind(kind_text);
    const std::vector<TrialResult> trials = grid_search(series, grid, kind, jobs);

    const fs::path dir = prepare_out_dir(out);
    write_trials_csv((dir / "trials.csv").string(), trials);
    const TrialConfig& best = trials.front().config;
    {
        std::ofstream cfg(dir / "best_config.json");
        if (!cfg) throw std::runtime_error("cannot write best_config.json");
        cfg << trial_config_to_json(best);
    }
    std::cout << "trials " << trials.size() << '\n';
    std::cout << "best " << trials.front().key << '\n';
    std::cout << "validation mse " << trials.front().validation_mse << '\n';

    manifest.command = "tune";
    manifest.config = {{"grid_file", grid_path},
                       {"model", kind_text},
                       {"jobs", jobs},
                       {"trials", trials.size()},
                       {"best", config_as_json(best)},
                       {"validation_mse", trials.front().validation_mse}};
    if (!split_text.empty()) manifest.config["split"] = split_text;
    manifest.outputs = {"trials.csv", "best_config.json"};

    if (test) {
        // Refit on the full training split before scoring the test split.
        const EvalOutcome outcome = evaluate_config(series, test->values, best);
        std::cout << "test mse " << outcome.mse << '\n';
        manifest.config["test_mse"] = outcome.mse;
    }
    manifest.timings["total"] = seconds_since(t0);
    manifest.write(dir);
    return 0;
}

int cmd_benchmark(const std::string& configs_dir, int jobs, const std::string& out,
                  Manifest& manifest) {
    const auto t0 = clock_type::now();
    std::vector<std::string> config_files;
    if (fs::is_regular_file(configs_dir)) {
        config_files.push_back(configs_dir);
    } else if (fs::is_directory(configs_dir)) {
        for (const auto& entry : fs::directory_iterator(configs_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") {
                config_files.push_back(entry.path().string());
            }
        }
        std::sort(config_files.begin(), config_files.end());
    } else {
        throw std::runtime_error("'" + configs_dir + "' is not a config file or directory");
    }
    if (config_files.empty()) {
        throw std::runtime_error("no dataset configs (*.json) in '" + configs_dir + "'");
    }

    std::vector<BenchmarkRow> rows;
    for (const auto& file : config_files) {
        manifest.add_input(file);
        const DatasetConfig cfg = load_dataset_config(file);
        std::cout << "dataset " << cfg.name << " (" << cfg.models.size() << " models)\n";
        const auto dataset_rows = run_dataset(cfg, jobs);
        for (const auto& row : dataset_rows) {
            std::cout << "  " << row.model << ": ";
            if (row.ok) {
                std::cout << "mse " << row.test_mse;
            } else {
                std::cout << "failed (" << row.error << ")";
            }
            std::cout << '\n';
        }
        rows.insert(rows.end(), dataset_rows.begin(), dataset_rows.end());
    }

    const fs::path dir = prepare_out_dir(out);
    write_benchmark_csv((dir / "benchmark.csv").string(), rows);
    manifest.command = "benchmark";
    manifest.config = {{"configs_dir", configs_dir}, {"jobs", jobs}};
    manifest.outputs = {"benchmark.csv"};
    manifest.timings["total"] = seconds_since(t0);
    manifest.write(dir);
    std::cout << "wrote " << (dir / "benchmark.csv").string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel time-series forecasting toolkit (multi-view restricted kernel machine)"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Manifest manifest;
    for (int i = 0; i < argc; ++i) manifest.argv.emplace_back(argv[i]);
    app.add_option("--seed", manifest.seed,
                   "Recorded in the manifest; the pipeline itself is deterministic");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic series as CSV");
    gen->require_subcommand(1);
    std::string gen_out = "out";

    auto* gen_sine_cmd = gen->add_subcommand("sine", "Single sine wave");
    Index sine_n = 0;
    double sine_freq = 1.0, sine_amplitude = 1.0, sine_phase = 0.0, sine_dt = 0.01;
    gen_sine_cmd->add_option("--n", sine_n, "Number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    gen_sine_cmd->add_option("--freq", sine_freq, "Frequency");
    gen_sine_cmd->add_option("--amplitude", sine_amplitude, "Amplitude");
    gen_sine_cmd->add_option("--phase", sine_phase, "Phase offset");
    gen_sine_cmd->add_option("--dt", sine_dt, "Sampling step");
    gen_sine_cmd->add_option("--out", gen_out, "Output directory");

    auto* gen_sum_cmd = gen->add_subcommand("sum-sines", "Sum of sine components");
    Index sum_n = 0;
    std::vector<double> sum_amplitudes{1.0, 0.2};
    std::vector<double> sum_freqs{1.0, 20.0};
    std::vector<double> sum_phases;
    double sum_dt = 0.01;
    gen_sum_cmd->add_option("--n", sum_n, "Number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    gen_sum_cmd->add_option("--amplitudes", sum_amplitudes, "Component amplitudes")->delimiter(',');
    gen_sum_cmd->add_option("--freqs", sum_freqs, "Component frequencies")->delimiter(',');
    gen_sum_cmd->add_option("--phases", sum_phases, "Component phases (default all 0)")
        ->delimiter(',');
    gen_sum_cmd->add_option("--dt", sum_dt, "Sampling step");
    gen_sum_cmd->add_option("--out", gen_out, "Output directory");

    auto* gen_lorenz_cmd = gen->add_subcommand("lorenz", "Lorenz system, explicit Euler");
    LorenzParams lorenz;
    gen_lorenz_cmd->add_option("--steps", lorenz.steps, "Total rows, initial condition included")
        ->check(CLI::PositiveNumber);
    gen_lorenz_cmd->add_option("--dt", lorenz.dt, "Integration step");
    gen_lorenz_cmd->add_option("--a", lorenz.a, "Parameter a");
    gen_lorenz_cmd->add_option("--r", lorenz.r, "Parameter r");
    gen_lorenz_cmd->add_option("--b", lorenz.b, "Parameter b");
    gen_lorenz_cmd->add_option("--x0", lorenz.x0, "Initial x");
    gen_lorenz_cmd->add_option("--y0", lorenz.y0, "Initial y");
    gen_lorenz_cmd->add_option("--z0", lorenz.z0, "Initial z");
    gen_lorenz_cmd->add_option("--out", gen_out, "Output directory");

    // train
    auto* train_cmd = app.add_subcommand("train", "Fit a model and store it");
    DataOptions train_data;
    train_data.attach(train_cmd);
    ModelOptions model_opts;
    model_opts.attach(train_cmd);
    std::string train_split;
    train_cmd->add_option("--split", train_split,
                          "N_TRAIN:N_TEST; only the first N_TRAIN points are used");
    std::string train_out = "out";
    train_cmd->add_option("--out", train_out, "Output directory");

    // forecast
    auto* fc_cmd = app.add_subcommand("forecast", "Recursive multi-step forecast from a stored model");
    std::string fc_model;
    fc_cmd->add_option("--model", fc_model, "Model file from train")->required();
    Index fc_horizon = 0;
    fc_cmd->add_option("--horizon", fc_horizon, "Steps to forecast")
        ->required()
        ->check(CLI::PositiveNumber);
    std::string fc_truth;
    fc_cmd->add_option("--truth", fc_truth, "CSV with ground truth for scoring");
    bool fc_truth_header = false;
    fc_cmd->add_flag("--has-header", fc_truth_header, "Skip the first row of the truth CSV");
    std::vector<int> fc_truth_columns;
    fc_cmd->add_option("--columns", fc_truth_columns, "Column selection for the truth CSV")
        ->delimiter(',');
    Index fc_skip = 0;
    fc_cmd->add_option("--skip", fc_skip,
                       "Truth rows to skip first (e.g. the training prefix of a full series)")
        ->check(CLI::NonNegativeNumber);
    std::string fc_preimage;
    fc_cmd->add_option("--preimage", fc_preimage, "Override the stored output map");
    std::string fc_out = "out";
    fc_cmd->add_option("--out", fc_out, "Output directory");

    // tune
    auto* tune_cmd = app.add_subcommand("tune", "Grid-search hyperparameters");
    DataOptions tune_data;
    tune_data.attach(tune_cmd);
    std::string tune_grid;
    tune_cmd->add_option("--grid", tune_grid, "Grid JSON file")->required();
    std::string tune_kind = "mvrkm";
    tune_cmd->add_option("--model", tune_kind, "Model kind: mvrkm or lssvm")
        ->check(CLI::IsMember({"mvrkm", "lssvm"}));
    std::string tune_split;
    tune_cmd->add_option("--split", tune_split,
                         "N_TRAIN:N_TEST; tunes on the train part, reports test MSE if N_TEST > 0");
    int tune_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    tune_cmd->add_option("--jobs", tune_jobs, "Parallel trials")->check(CLI::PositiveNumber);
    std::string tune_out = "out";
    tune_cmd->add_option("--out", tune_out, "Output directory");

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "Run the model comparison over dataset configs");
    std::string bench_configs;
    bench_cmd->add_option("--configs", bench_configs,
                          "Dataset config JSON file, or a directory of them")
        ->required();
    int bench_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bench_cmd->add_option("--jobs", bench_jobs, "Parallel trials")->check(CLI::PositiveNumber);
    std::string bench_out = "out";
    bench_cmd->add_option("--out", bench_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_sine_cmd->parsed()) {
            const json params = {{"n", sine_n},     {"freq", sine_freq}, {"amplitude", sine_amplitude},
                                 {"phase", sine_phase}, {"dt", sine_dt}};
            return cmd_generate("sine", params,
                                gen_sine(sine_n, sine_freq, sine_amplitude, sine_phase, sine_dt),
                                gen_out, manifest);
        }
        if (gen_sum_cmd->parsed()) {
            if (sum_phases.empty()) sum_phases.assign(sum_amplitudes.size(), 0.0);
            const json params = {{"n", sum_n},
                                 {"amplitudes", sum_amplitudes},
                                 {"freqs", sum_freqs},
                                 {"phases", sum_phases},
                                 {"dt", sum_dt}};
            return cmd_generate("sum-sines", params,
                                gen_sum_sines(sum_n, sum_amplitudes, sum_freqs, sum_phases, sum_dt),
                                gen_out, manifest);
        }
        if (gen_lorenz_cmd->parsed()) {
            const json params = {{"steps", lorenz.steps}, {"dt", lorenz.dt}, {"a", lorenz.a},
                                 {"r", lorenz.r},         {"b", lorenz.b},   {"x0", lorenz.x0},
                                 {"y0", lorenz.y0},       {"z0", lorenz.z0}};
            return cmd_generate("lorenz", params, gen_lorenz(lorenz), gen_out, manifest);
        }
        if (train_cmd->parsed()) {
            return cmd_train(train_data, model_opts, train_split, train_out, manifest);
        }
        if (fc_cmd->parsed()) {
            return cmd_forecast(fc_model, fc_horizon, fc_truth, fc_truth_header, fc_truth_columns,
                                fc_skip, fc_preimage, fc_out, manifest);
        }
        if (tune_cmd->parsed()) {
            return cmd_tune(tune_data, tune_grid, tune_kind, tune_split, tune_jobs, tune_out,
                            manifest);
        }
        if (bench_cmd->parsed()) {
            return cmd_benchmark(bench_configs, bench_jobs, bench_out, manifest);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
