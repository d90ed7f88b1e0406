#pragma once

#include "gradalign/encoder.hpp"
#include "gradalign/graph.hpp"

namespace gradalign {

/// Multi-layer embedding similarity: the per-layer sum of cosine Gram
/// matrices of the original-attribute channel plus lambda times that of
/// the augmented channel. Every embedding is row-unit-normalized before
/// the product. When the original channel is absent (empty), the
/// augmented term is used alone, unweighted.
Eigen::MatrixXd embedding_similarity(const LayerEmbeddings& emb_s,
                                     const LayerEmbeddings& emb_t,
                                     const LayerEmbeddings& aug_emb_s,
                                     const LayerEmbeddings& aug_emb_t,
                                     double lambda);

/// ACN count matrix: entry (u, v) counts mapped pairs (u', v') with
/// u' adjacent to u and v' adjacent to v.
Eigen::MatrixXi acn_counts(const Graph& g_s, const Graph& g_t, const Mapping& mapping);

/// Incremental ACN maintenance: adding a matched pair touches only the
/// neighborhood product of its endpoints.
class AcnCounter {
public:
    AcnCounter(const Graph& g_s, const Graph& g_t);

    void add_pair(int u, int v);
    const Eigen::MatrixXi& counts() const { return counts_; }

private:
    const Graph* g_s_;
    const Graph* g_t_;
    Eigen::MatrixXi counts_;
};

/// Smoothed ACN similarity (count + 1)^p: the empty first-iteration
/// mapping yields the all-ones matrix, so iteration 1 falls back to pure
/// embedding similarity under the element-wise combination.
Eigen::MatrixXd acn_similarity(const Eigen::MatrixXi& counts, double p);

/// Hadamard product of the two similarity channels.
Eigen::MatrixXd combined_similarity(const Eigen::MatrixXd& s_emb,
                                    const Eigen::MatrixXd& s_acn);

}  // namespace gradalign
