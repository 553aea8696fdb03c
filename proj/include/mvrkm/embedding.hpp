#pragma once

#include <optional>

#include "mvrkm/types.hpp"

namespace mvrkm {

/// Per-column mean and population standard deviation.
struct ColumnStats {
    Vector mean;
    Vector stddev;
};

/// Ordered multivariate series, n timesteps by d dimensions. When the values
/// were standardized, the statistics used are kept for inversion.
struct TimeSeries {
    Matrix values;
    std::optional<ColumnStats> standardization;

    Index n() const { return values.rows(); }
    Index d() const { return values.cols(); }
};

/// Paired NAR inputs and one-step-ahead targets. Row i of X holds, per
/// dimension, the window [x_t, x_{t-1}, ..., x_{t-p}] (newest first, one
/// contiguous block per dimension) and row i of Y is x_{t+1}.
struct LaggedDataset {
    Matrix X; // N x (p+1)*d
    Matrix Y; // N x d
    int p = 1;

    Index size() const { return X.rows(); }
};

ColumnStats column_stats(const Matrix& values);

/// Transforms each column to (x - mean)/stddev. Statistics come from
/// `stats_from` (the training split) when given, otherwise from the series
/// itself; they are recorded on the result for inversion.
TimeSeries standardize(const TimeSeries& series);
TimeSeries standardize(const TimeSeries& series, const TimeSeries& stats_from);

/// Inverse of standardize.
Matrix destandardize(const Matrix& values, const ColumnStats& stats);
TimeSeries destandardize(const TimeSeries& series);

/// Converts a series into the lagged NAR format with lag p. Requires
/// n >= p + 2 and yields N = n - p - 1 pairs.
LaggedDataset lag_embed(const TimeSeries& series, int p);

/// Lag vector over the last p+1 points of the series, laid out exactly like
/// a lag_embed input row. This is the window whose one-step-ahead target is
/// the first unseen point.
Vector initial_window(const TimeSeries& series, int p);

/// Drops the oldest entry of every per-dimension block of a lag window and
/// inserts y_new as the newest.
void shift_window(Eigen::Ref<Vector> window, Eigen::Ref<const Vector> y_new, int p);

} // namespace mvrkm
