#include "mvrkm/embedding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvrkm {

ColumnStats column_stats(const Matrix& values) {
    if (values.rows() < 1) throw std::invalid_argument("column_stats: empty series");
    ColumnStats stats;
    stats.mean = values.colwise().mean();
    // population convention
    const Matrix centered = values.rowwise() - stats.mean.transpose();
    stats.stddev = (centered.array().square().colwise().mean()).sqrt();
    return stats;
}

namespace {

TimeSeries apply_standardization(const TimeSeries& series, ColumnStats stats) {
    if (stats.mean.size() != series.d()) {
        throw std::invalid_argument("standardize: statistics have " +
                                    std::to_string(stats.mean.size()) + " columns, series has " +
                                    std::to_string(series.d()));
    }
    for (Index j = 0; j < stats.stddev.size(); ++j) {
        if (!(stats.stddev(j) > 0.0)) {
            throw std::invalid_argument("standardize: column " + std::to_string(j) +
                                        " has zero variance");
        }
    }
    TimeSeries out;
    out.values = (series.values.rowwise() - stats.mean.transpose()).array().rowwise() /
                 stats.stddev.transpose().array();
    out.standardization = std::move(stats);
    return out;
}

} // namespace

TimeSeries standardize(const TimeSeries& series) {
    return apply_standardization(series, column_stats(series.values));
}

TimeSeries standardize(const TimeSeries& series, const TimeSeries& stats_from) {
    return apply_standardization(series, column_stats(stats_from.values));
}

Matrix destandardize(const Matrix& values, const ColumnStats& stats) {
    if (values.cols() != stats.mean.size()) {
        throw std::invalid_argument("destandardize: dimension mismatch");
    }
    return (values.array().rowwise() * stats.stddev.transpose().array()).rowwise() +
           stats.mean.transpose().array();
}

TimeSeries destandardize(const TimeSeries& series) {
    if (!series.standardization) return series;
    return {destandardize(series.values, *series.standardization), std::nullopt};
}

LaggedDataset lag_embed(const TimeSeries& series, int p) {
    if (p < 1) throw std::invalid_argument("lag_embed: lag must be positive");
    const Index n = series.n();
    const Index d = series.d();
    if (n < p + 2) {
        throw std::invalid_argument("series too short for lag " + std::to_string(p) + ": need at least " +
                                    std::to_string(p + 2) + " points, got " + std::to_string(n));
    }
    const Index N = n - p - 1;
    LaggedDataset out;
    out.p = p;
    out.X.resize(N, (p + 1) * d);
    out.Y.resize(N, d);
    for (Index i = 0; i < N; ++i) {
        const Index t = p + i; // newest point of window i
        for (Index k = 0; k < d; ++k) {
            for (Index j = 0; j <= p; ++j) {
                out.X(i, k * (p + 1) + j) = series.values(t - j, k);
            }
        }
        out.Y.row(i) = series.values.row(t + 1);
    }
    return out;
}

Vector initial_window(const TimeSeries& series, int p) {
    if (p < 1) throw std::invalid_argument("initial_window: lag must be positive");
    const Index n = series.n();
    const Index d = series.d();
    if (n < p + 1) {
        throw std::invalid_argument("series too short for lag " + std::to_string(p) +
                                    " window: need at least " + std::to_string(p + 1) +
                                    " points, got " + std::to_string(n));
    }
    Vector window((p + 1) * d);
    for (Index k = 0; k < d; ++k) {
        for (Index j = 0; j <= p; ++j) {
            window(k * (p + 1) + j) = series.values(n - 1 - j, k);
        }
    }
    return window;
}

void shift_window(Eigen::Ref<Vector> window, Eigen::Ref<const Vector> y_new, int p) {
    const Index block = p + 1;
    if (window.size() % block != 0) {
        throw std::invalid_argument("shift_window: window length not a multiple of p+1");
    }
    const Index d = window.size() / block;
    if (y_new.size() != d) {
        throw std::invalid_argument("shift_window: new point has wrong dimension");
    }
    for (Index k = 0; k < d; ++k) {
        const Index base = k * block;
        for (Index j = block - 1; j > 0; --j) window(base + j) = window(base + j - 1);
        window(base) = y_new(k);
    }
}

} // namespace mvrkm
