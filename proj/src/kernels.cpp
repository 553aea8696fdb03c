#include "mvrkm/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvrkm {

KernelSpec KernelSpec::rbf(double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("rbf kernel requires sigma > 0, got " + std::to_string(sigma));
    }
    return {KernelFamily::rbf, sigma};
}

std::string to_string(const KernelSpec& spec) {
    if (spec.family == KernelFamily::linear) return "linear";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "rbf:%.17g", spec.sigma);
    return buf;
}

KernelSpec parse_kernel(const std::string& text) {
    if (text == "linear") return KernelSpec::linear();
    if (text.rfind("rbf:", 0) == 0) {
        size_t pos = 0;
        const std::string arg = text.substr(4);
        double sigma = std::stod(arg, &pos);
        if (pos != arg.size()) throw std::invalid_argument("bad kernel spec '" + text + "'");
        return KernelSpec::rbf(sigma);
    }
    throw std::invalid_argument("bad kernel spec '" + text + "' (expected 'linear' or 'rbf:SIGMA')");
}

CenteringStats CenteringStats::identity(Index n) {
    return {Vector::Zero(n), 0.0, n};
}

double eval(const KernelSpec& spec, Eigen::Ref<const Vector> a, Eigen::Ref<const Vector> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("kernel eval: dimension mismatch, " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }
    switch (spec.family) {
        case KernelFamily::linear:
            return a.dot(b);
        case KernelFamily::rbf: {
            const double d2 = (a - b).squaredNorm();
            return std::exp(-d2 / (2.0 * spec.sigma * spec.sigma));
        }
    }
    throw std::logic_error("unknown kernel family");
}

Matrix gram(const KernelSpec& spec, const Matrix& data) {
    const Index n = data.rows();
    if (n < 1) throw std::invalid_argument("gram: empty data");

    Matrix K(n, n);
    if (spec.family == KernelFamily::linear) {
        K.setZero();
        K.selfadjointView<Eigen::Lower>().rankUpdate(data);
        K.triangularView<Eigen::StrictlyUpper>() = K.transpose();
        return K;
    }

    // rbf via the expanded squared distance |a|^2 + |b|^2 - 2 a.b, computed
    // on the lower triangle only so the result is exactly symmetric.
    const Vector sq = data.rowwise().squaredNorm();
    Matrix G(n, n);
    G.setZero();
    G.selfadjointView<Eigen::Lower>().rankUpdate(data);
    const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
    for (Index j = 0; j < n; ++j) {
        K(j, j) = 1.0;
        for (Index i = j + 1; i < n; ++i) {
            double d2 = sq(i) + sq(j) - 2.0 * G(i, j);
            if (d2 < 0.0) d2 = 0.0;
            K(i, j) = std::exp(-d2 * inv2s2);
            K(j, i) = K(i, j);
        }
    }
    return K;
}

Vector kernel_vector(const KernelSpec& spec, const Matrix& data, Eigen::Ref<const Vector> query) {
    if (data.cols() != query.size()) {
        throw std::invalid_argument("kernel_vector: dimension mismatch, " +
                                    std::to_string(data.cols()) + " vs " +
                                    std::to_string(query.size()));
    }
    if (spec.family == KernelFamily::linear) return data * query;

    const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
    Vector k(data.rows());
    for (Index i = 0; i < data.rows(); ++i) {
        k(i) = std::exp(-(data.row(i).transpose() - query).squaredNorm() * inv2s2);
    }
    return k;
}

std::pair<Matrix, CenteringStats> center_gram(const Matrix& K) {
    if (K.rows() != K.cols()) {
        throw std::invalid_argument("center_gram: matrix is " + std::to_string(K.rows()) + "x" +
                                    std::to_string(K.cols()) + ", expected square");
    }
    const Index n = K.rows();
    CenteringStats stats;
    stats.n = n;
    stats.gram_row_means = K.rowwise().mean();
    stats.gram_total_mean = stats.gram_row_means.mean();

    Matrix centered = K;
    centered.colwise() -= stats.gram_row_means;
    centered.rowwise() -= stats.gram_row_means.transpose();
    centered.array() += stats.gram_total_mean;
    return {std::move(centered), std::move(stats)};
}

Vector center_kernel_vector(Eigen::Ref<const Vector> k_vec, const CenteringStats& stats) {
    if (k_vec.size() != stats.n) {
        throw std::invalid_argument("center_kernel_vector: length " + std::to_string(k_vec.size()) +
                                    " does not match training size " + std::to_string(stats.n));
    }
    const double k_mean = k_vec.mean();
    return k_vec - stats.gram_row_means - Vector::Constant(stats.n, k_mean - stats.gram_total_mean);
}

} // namespace mvrkm
