#pragma once

#include <optional>

#include "mvrkm/embedding.hpp"
#include "mvrkm/kernels.hpp"
#include "mvrkm/types.hpp"

namespace mvrkm {

/// Result of training: the top-s eigenpairs of the summed (optionally
/// centered) input- and output-view Gram matrices, plus everything needed to
/// evaluate the dual prediction equations later.
struct TrainedModel {
    Matrix H;      // s x N, orthonormal rows (latent code of pair i = column i)
    Vector lambda; // s eigenvalues, descending
    Index s = 0;

    Matrix X_train; // N x (p+1)*d
    Matrix Y_train; // N x d
    KernelSpec kx;
    KernelSpec ky;
    bool centered = true;
    CenteringStats cx;
    CenteringStats cy;

    Matrix Ky_view; // N x N output-view Gram, centered iff `centered`
    Matrix M_inv;   // s x s, (diag(lambda) - H Ky H^T)^{-1}
    bool jitter_used = false;

    int p = 1;
    std::optional<ColumnStats> standardization;
    Vector y_mean; // column means of Y_train when centered, zeros otherwise

    Index n_train() const { return X_train.rows(); }
    Index dim_in() const { return X_train.cols(); }
    Index dim_out() const { return Y_train.cols(); }
};

/// Fits the model by eigendecomposition of Kx + Ky. H rows are unit-norm
/// eigenvectors ordered by descending eigenvalue, each flipped so its
/// largest-magnitude entry is positive (ties to the lowest index).
TrainedModel fit(const LaggedDataset& data, const KernelSpec& kx, const KernelSpec& ky,
                 Index s, bool center = true);

/// The s x s operator (diag(lambda) - H Ky H^T)^{-1} shared by all
/// prediction equations. fit() computes and caches it; jitter is added only
/// if the plain inverse fails.
const Matrix& latent_operator(const TrainedModel& model);

/// Recomputes the derived caches (centering statistics, output-view Gram,
/// latent operator, target mean) from the primary fields. Deserialization
/// calls this instead of storing caches; identical primary fields yield
/// identical caches.
void rebuild_derived(TrainedModel& model);

} // namespace mvrkm
