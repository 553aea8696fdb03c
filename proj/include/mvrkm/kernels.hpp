#pragma once

#include <string>
#include <utility>

#include "mvrkm/types.hpp"

namespace mvrkm {

enum class KernelFamily { linear, rbf };

/// Kernel family plus its bandwidth (rbf only).
struct KernelSpec {
    KernelFamily family = KernelFamily::rbf;
    double sigma = 1.0;

    static KernelSpec linear() { return {KernelFamily::linear, 0.0}; }
    static KernelSpec rbf(double sigma);
};

/// Canonical text form: "linear" or "rbf:<sigma>".
std::string to_string(const KernelSpec& spec);
KernelSpec parse_kernel(const std::string& text);

/// Dual-form statistics of a training Gram matrix, kept so that
/// prediction-time kernel vectors can be centered consistently.
struct CenteringStats {
    Vector gram_row_means; // (K 1)/n
    double gram_total_mean = 0.0;
    Index n = 0;

    /// Stats that make centering a no-op (used when centering is off).
    static CenteringStats identity(Index n);
};

/// Single kernel evaluation k(a, b).
double eval(const KernelSpec& spec, Eigen::Ref<const Vector> a, Eigen::Ref<const Vector> b);

/// Gram matrix over the rows of `data`. Exactly symmetric; rbf entries are
/// computed from the expanded squared distance with negative round-off
/// clamped to zero so the diagonal is exactly one.
Matrix gram(const KernelSpec& spec, const Matrix& data);

/// Kernel vector [k(row_0, query), ..., k(row_{n-1}, query)].
Vector kernel_vector(const KernelSpec& spec, const Matrix& data, Eigen::Ref<const Vector> query);

/// Feature-space centering of a Gram matrix: (I - 11^T/n) K (I - 11^T/n).
/// Returns the centered matrix together with the statistics of K needed to
/// center out-of-sample kernel vectors later.
std::pair<Matrix, CenteringStats> center_gram(const Matrix& K);

/// Centers a kernel vector of similarities against the training set using
/// the stored training statistics.
Vector center_kernel_vector(Eigen::Ref<const Vector> k_vec, const CenteringStats& stats);

} // namespace mvrkm
