#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mvrkm/embedding.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm {

/// x_t = amplitude * sin(2*pi*freq*t*dt + phase), t = 0..n-1.
TimeSeries gen_sine(Index n, double freq = 1.0, double amplitude = 1.0, double phase = 0.0,
                    double dt = 0.01);

/// Pointwise sum of component sines with shared sampling step.
TimeSeries gen_sum_sines(Index n, const std::vector<double>& amplitudes,
                         const std::vector<double>& freqs, const std::vector<double>& phases,
                         double dt = 0.01);

struct LorenzParams {
    double a = 10.0;
    double r = 28.0;
    double b = 2.667;
    double x0 = 1.0;
    double y0 = -1.0;
    double z0 = 1.05;
    double dt = 0.01;
    Index steps = 4001; // total rows, the initial condition included
};

/// Lorenz system integrated with the explicit Euler scheme; the first row is
/// the initial condition.
TimeSeries gen_lorenz(const LorenzParams& params);

/// Loads a comma-separated numeric file, rows as timesteps. An optional
/// `columns` selection picks (and reorders) dimensions. Non-finite values
/// and parse errors are rejected with their location.
TimeSeries load_csv(const std::string& path, bool has_header = false,
                    const std::vector<int>& columns = {});

/// Writes values as CSV with full double round-trip precision; `header` adds
/// a single header row when non-empty.
void save_csv(const std::string& path, const Matrix& values,
              const std::vector<std::string>& header = {});

struct SplitSpec {
    Index n_train = 0;
    Index n_test = 0;
};

/// Contiguous prefix/suffix split; the test split starts immediately after
/// the training split.
std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec);

} // namespace mvrkm
