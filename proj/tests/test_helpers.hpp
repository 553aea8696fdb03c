#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "mvrkm/embedding.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm::testing {

inline Matrix random_matrix(Index rows, Index cols, unsigned seed, double lo = -1.0,
                            double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

inline Vector random_vector(Index n, unsigned seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = dist(rng);
    return v;
}

// Leading eigenvalue of a symmetric PSD matrix by plain power iteration; an
// oracle independent of the solver the trainer uses.
inline double power_iteration_leading(const Matrix& A, int iters = 2000) {
    Vector v = Vector::Ones(A.rows()).normalized();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        Vector w = A * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        lambda = v.dot(A * v);
    }
    return lambda;
}

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
// descending. Hand-rolled, so independent of any library eigensolver.
inline Vector jacobi_eigenvalues(Matrix A, int max_sweeps = 100) {
    const Index n = A.rows();
    const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Index p = 0; p < n; ++p)
            for (Index q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) break;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = A(p, p) - t * apq;
                const double aqq = A(q, q) + t * apq;
                for (Index k = 0; k < n; ++k) {
                    const double akp = A(k, p);
                    const double akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    A(p, k) = A(k, p);
                    A(q, k) = A(k, q);
                }
                A(p, p) = app;
                A(q, q) = aqq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
            }
        }
    }
    Vector evs = A.diagonal();
    std::sort(evs.data(), evs.data() + n, std::greater<double>());
    return evs;
}

} // namespace mvrkm::testing
