#include "mvrkm/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "mvrkm/lssvm.hpp"
#include "mvrkm/model_io.hpp"
#include "mvrkm/trainer.hpp"

namespace mvrkm {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double seconds_between(std::chrono::steady_clock::time_point a,
                       std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int config_p(const TrialConfig& config) {
    if (const auto* m = std::get_if<MvrkmConfig>(&config)) return m->p;
    return std::get<LssvmConfig>(config).p;
}

Index config_s(const TrialConfig& config) {
    if (const auto* m = std::get_if<MvrkmConfig>(&config)) return m->s;
    return 0;
}

} // namespace

std::string to_string(ModelKind kind) {
    return kind == ModelKind::mvrkm ? "mvrkm" : "lssvm";
}

ModelKind parse_model_kind(const std::string& text) {
    if (text == "mvrkm") return ModelKind::mvrkm;
    if (text == "lssvm") return ModelKind::lssvm;
    throw std::invalid_argument("bad model kind '" + text + "' (expected 'mvrkm' or 'lssvm')");
}

std::string config_key(const TrialConfig& config) {
    if (const auto* m = std::get_if<MvrkmConfig>(&config)) {
        return "mvrkm p=" + std::to_string(m->p) + " kx=" + to_string(m->kx) +
               " ky=" + to_string(m->ky) + " s=" + std::to_string(m->s) +
               " preimage=" + to_string(m->preimage) + " center=" + std::to_string(m->center) +
               " standardize=" + std::to_string(m->standardize);
    }
    const auto& l = std::get<LssvmConfig>(config);
    return "lssvm p=" + std::to_string(l.p) + " kx=" + to_string(l.kx) +
           " gamma=" + fmt_double(l.gamma) + " standardize=" + std::to_string(l.standardize);
}

std::string trial_config_to_json(const TrialConfig& config) {
    nlohmann::json j;
    if (const auto* m = std::get_if<MvrkmConfig>(&config)) {
        j["model"] = "mvrkm";
        j["p"] = m->p;
        j["kx"] = to_string(m->kx);
        j["ky"] = to_string(m->ky);
        j["s"] = m->s;
        j["preimage"] = to_string(m->preimage);
        j["center"] = m->center;
        j["standardize"] = m->standardize;
    } else {
        const auto& l = std::get<LssvmConfig>(config);
        j["model"] = "lssvm";
        j["p"] = l.p;
        j["kx"] = to_string(l.kx);
        j["gamma"] = l.gamma;
        j["standardize"] = l.standardize;
    }
    return j.dump(2) + "\n";
}

TrialConfig parse_trial_config_json(const std::string& text, const std::string& context) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(context + ": expected a JSON object");
    try {
        const std::string model = j.at("model").get<std::string>();
        if (model == "mvrkm") {
            MvrkmConfig c;
            c.p = j.at("p").get<int>();
            c.kx = parse_kernel(j.at("kx").get<std::string>());
            c.ky = parse_kernel(j.at("ky").get<std::string>());
            if (j.contains("s")) c.s = j.at("s").get<Index>();
            if (j.contains("preimage")) {
                c.preimage = parse_preimage(j.at("preimage").get<std::string>());
            } else if (c.ky.family == KernelFamily::rbf) {
                c.preimage = SmootherPreimage{10};
            }
            if (j.contains("center")) c.center = j.at("center").get<bool>();
            if (j.contains("standardize")) c.standardize = j.at("standardize").get<bool>();
            return c;
        }
        if (model == "lssvm") {
            LssvmConfig c;
            c.p = j.at("p").get<int>();
            c.kx = parse_kernel(j.at("kx").get<std::string>());
            c.gamma = j.at("gamma").get<double>();
            if (j.contains("standardize")) c.standardize = j.at("standardize").get<bool>();
            return c;
        }
        throw std::runtime_error(context + ": unknown model '" + model + "'");
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
}

Grid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_grid_json(text, "grid file '" + path + "'");
}

Grid parse_grid_json(const std::string& text, const std::string& context) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }
    if (!j.is_object()) throw std::runtime_error(context + ": expected a JSON object");

    static const std::vector<std::string> known = {
        "lags",   "sigmas_x", "ky",       "sigmas_y", "components", "preimage",
        "n_rs",   "lambdas",  "sigmas_h", "gammas",   "centers",    "standardize"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw std::runtime_error(context + ": unknown key '" + item.key() + "'");
        }
    }

    Grid g;
    const auto bad = [&context](const std::string& what) {
        return std::runtime_error(context + ": " + what);
    };
    try {
        if (!j.contains("lags")) throw bad("'lags' is required");
        g.lags = j.at("lags").get<std::vector<int>>();
        if (!j.contains("sigmas_x")) throw bad("'sigmas_x' is required");
        g.sigmas_x = j.at("sigmas_x").get<std::vector<double>>();
        if (j.contains("ky")) {
            g.ky_families.clear();
            for (const auto& name : j.at("ky").get<std::vector<std::string>>()) {
                if (name == "linear") {
                    g.ky_families.push_back(KernelFamily::linear);
                } else if (name == "rbf") {
                    g.ky_families.push_back(KernelFamily::rbf);
                } else {
                    throw bad("'ky' entries must be 'linear' or 'rbf', got '" + name + "'");
                }
            }
        }
        if (j.contains("sigmas_y")) g.sigmas_y = j.at("sigmas_y").get<std::vector<double>>();
        if (j.contains("components")) {
            for (const auto& v : j.at("components")) g.components.push_back(v.get<Index>());
        }
        if (g.components.empty()) g.components.push_back(0); // 0 = default min(N, 50)
        if (j.contains("preimage")) {
            g.preimage_kinds = j.at("preimage").get<std::vector<std::string>>();
        }
        if (j.contains("n_rs")) g.n_rs = j.at("n_rs").get<std::vector<int>>();
        if (j.contains("lambdas")) g.lambdas = j.at("lambdas").get<std::vector<double>>();
        if (j.contains("sigmas_h")) g.sigmas_h = j.at("sigmas_h").get<std::vector<double>>();
        if (j.contains("gammas")) g.gammas = j.at("gammas").get<std::vector<double>>();
        if (j.contains("centers")) g.centers = j.at("centers").get<std::vector<bool>>();
        if (j.contains("standardize")) g.standardize = j.at("standardize").get<bool>();
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(context + ": " + e.what());
    }

    for (int p : g.lags)
        if (p < 1) throw bad("lags must be >= 1");
    for (double s : g.sigmas_x)
        if (!(s > 0.0)) throw bad("sigmas_x must be positive");
    for (double s : g.sigmas_y)
        if (!(s > 0.0)) throw bad("sigmas_y must be positive");
    for (Index s : g.components)
        if (s < 0) throw bad("components must be >= 0 (0 selects the default)");
    for (const auto& kind : g.preimage_kinds) {
        if (kind != "smoother" && kind != "krr") {
            throw bad("preimage entries must be 'smoother' or 'krr', got '" + kind + "'");
        }
    }
    for (int n : g.n_rs)
        if (n < 1) throw bad("n_rs must be >= 1");
    for (double l : g.lambdas)
        if (!(l > 0.0)) throw bad("lambdas must be positive");
    for (double s : g.sigmas_h)
        if (!(s > 0.0)) throw bad("sigmas_h must be positive");
    for (double gm : g.gammas)
        if (!(gm > 0.0)) throw bad("gammas must be positive");
    if (g.lags.empty() || g.sigmas_x.empty() || g.ky_families.empty() || g.sigmas_y.empty() ||
        g.preimage_kinds.empty() || g.n_rs.empty() || g.lambdas.empty() || g.sigmas_h.empty() ||
        g.gammas.empty() || g.centers.empty()) {
        throw bad("hyperparameter lists must be non-empty");
    }
    return g;
}

std::vector<TrialConfig> expand_grid(const Grid& grid, ModelKind kind) {
    if (grid.lags.empty() || grid.sigmas_x.empty()) {
        throw std::invalid_argument("expand_grid: lags and sigmas_x must be non-empty");
    }
    std::vector<TrialConfig> out;

    if (kind == ModelKind::lssvm) {
        for (int p : grid.lags)
            for (double sx : grid.sigmas_x)
                for (double gamma : grid.gammas) {
                    LssvmConfig c;
                    c.p = p;
                    c.kx = KernelSpec::rbf(sx);
                    c.gamma = gamma;
                    c.standardize = grid.standardize;
                    out.emplace_back(c);
                }
        return out;
    }

    std::vector<Index> components = grid.components;
    if (components.empty()) components.push_back(0);
    for (int p : grid.lags)
        for (double sx : grid.sigmas_x)
            for (Index s : components)
                for (bool center : grid.centers)
                    for (KernelFamily fam : grid.ky_families) {
                        MvrkmConfig base;
                        base.p = p;
                        base.kx = KernelSpec::rbf(sx);
                        base.s = s;
                        base.center = center;
                        base.standardize = grid.standardize;
                        if (fam == KernelFamily::linear) {
                            base.ky = KernelSpec::linear();
                            base.preimage = LinearPreimage{};
                            out.emplace_back(base);
                            continue;
                        }
                        for (double sy : grid.sigmas_y) {
                            base.ky = KernelSpec::rbf(sy);
                            for (const auto& kind_name : grid.preimage_kinds) {
                                if (kind_name == "smoother") {
                                    for (int n_r : grid.n_rs) {
                                        base.preimage = SmootherPreimage{n_r};
                                        out.emplace_back(base);
                                    }
                                } else if (kind_name == "krr") {
                                    for (double lambda : grid.lambdas)
                                        for (double sh : grid.sigmas_h) {
                                            base.preimage = KrrPreimage{lambda, sh};
                                            out.emplace_back(base);
                                        }
                                } else {
                                    throw std::invalid_argument("expand_grid: unknown pre-image kind '" +
                                                                kind_name + "'");
                                }
                            }
                        }
                    }
    return out;
}

double mse(const Matrix& pred, const Matrix& truth) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols()) {
        throw std::invalid_argument("mse: shapes " + std::to_string(pred.rows()) + "x" +
                                    std::to_string(pred.cols()) + " and " +
                                    std::to_string(truth.rows()) + "x" + std::to_string(truth.cols()) +
                                    " differ");
    }
    return (pred - truth).squaredNorm() / static_cast<double>(pred.size());
}

EvalOutcome evaluate_config(const TimeSeries& train, const Matrix& truth_original,
                            const TrialConfig& config) {
    using clock = std::chrono::steady_clock;
    const Index horizon = truth_original.rows();
    if (horizon < 1) throw std::invalid_argument("evaluate_config: no truth to score against");

    EvalOutcome out;
    if (const auto* mc = std::get_if<MvrkmConfig>(&config)) {
        const auto t0 = clock::now();
        const StoredMvrkm stored = train_from_config(train, *mc);
        const auto t1 = clock::now();
        const ForecastConfig fc{horizon, mc->preimage};
        const ForecastResult res = recursive_forecast(stored.model, stored.x0, fc, &truth_original);
        const auto t2 = clock::now();
        out.mse = *res.mse;
        out.train_seconds = seconds_between(t0, t1);
        out.forecast_seconds = seconds_between(t1, t2);
        return out;
    }

    const auto& lc = std::get<LssvmConfig>(config);
    const auto t0 = clock::now();
    const StoredLssvm stored = train_from_config(train, lc);
    const auto t1 = clock::now();
    const ForecastResult res = lssvm_recursive_forecast(stored.model, stored.x0, horizon, &truth_original);
    const auto t2 = clock::now();
    out.mse = *res.mse;
    out.train_seconds = seconds_between(t0, t1);
    out.forecast_seconds = seconds_between(t1, t2);
    return out;
}

std::vector<TrialResult> grid_search(const TimeSeries& series, const Grid& grid, ModelKind kind,
                                     int jobs) {
    const std::vector<TrialConfig> configs = expand_grid(grid, kind);
    if (configs.empty()) throw std::invalid_argument("grid_search: empty grid");

    const Index n = series.n();
    const Index n_val = std::max<Index>(1, static_cast<Index>(std::llround(kValidationFraction * n)));
    if (n_val >= n) {
        throw std::invalid_argument("grid_search: series of length " + std::to_string(n) +
                                    " is too short for a validation split");
    }
    const auto [fit_part, val_part] = split(series, SplitSpec{n - n_val, n_val});
    const Matrix truth = val_part.values;

    std::vector<TrialResult> results(configs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) break;
            TrialResult& r = results[i];
            r.config = configs[i];
            r.key = config_key(configs[i]);
            try {
                const EvalOutcome outcome = evaluate_config(fit_part, truth, configs[i]);
                r.train_seconds = outcome.train_seconds;
                r.forecast_seconds = outcome.forecast_seconds;
                if (std::isfinite(outcome.mse)) {
                    r.validation_mse = outcome.mse;
                    r.ok = true;
                } else {
                    r.error = "non-finite validation error";
                }
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };

    const int n_jobs = std::clamp<int>(jobs, 1, static_cast<int>(configs.size()));
    if (n_jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_jobs));
        for (int t = 0; t < n_jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(results.begin(), results.end(), [](const TrialResult& a, const TrialResult& b) {
        if (a.ok != b.ok) return a.ok;
        if (!a.ok) return a.key < b.key;
        if (a.validation_mse != b.validation_mse) return a.validation_mse < b.validation_mse;
        if (config_s(a.config) != config_s(b.config)) return config_s(a.config) < config_s(b.config);
        if (config_p(a.config) != config_p(b.config)) return config_p(a.config) < config_p(b.config);
        return a.key < b.key;
    });

    if (!results.front().ok) {
        std::map<std::string, int> causes;
        for (const auto& r : results) ++causes[r.error];
        std::string msg = "grid_search: all " + std::to_string(results.size()) + " trials failed:";
        for (const auto& [cause, count] : causes) {
            msg += " [" + std::to_string(count) + "x] " + cause + ";";
        }
        throw std::runtime_error(msg);
    }
    return results;
}

void write_trials_csv(const std::string& path, const std::vector<TrialResult>& trials) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "rank,model,config,validation_mse,status,error\n";
    int rank = 0;
    for (const auto& t : trials) {
        ++rank;
        const char* model = std::holds_alternative<MvrkmConfig>(t.config) ? "mvrkm" : "lssvm";
        std::string error = t.error;
        for (char& c : error) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << rank << ',' << model << ',' << t.key << ',';
        if (t.ok) out << fmt_double(t.validation_mse);
        out << ',' << (t.ok ? "ok" : "failed") << ',' << error << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace mvrkm
