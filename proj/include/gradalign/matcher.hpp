#pragma once

#include "gradalign/encoder.hpp"
#include "gradalign/graph.hpp"

#include <cstdint>
#include <vector>

namespace gradalign {

struct MatchConfig {
    int iterations = 10;
    double p = 2.0;
    double lambda = 1.0;
    std::uint64_t rng_seed = 0;
};

struct IterationTrace {
    int iteration = 0;
    int committed = 0;
    double min_similarity = 0.0;
    double max_similarity = 0.0;
};

/// Per-channel layer embeddings for both networks. The original-attribute
/// channel may be empty; the augmented channel is always present.
struct ChannelEmbeddings {
    LayerEmbeddings source;
    LayerEmbeddings target;
    LayerEmbeddings aug_source;
    LayerEmbeddings aug_target;
};

/// Repeated global-max selection with row/column elimination: up to
/// `budget` pairs in non-increasing similarity order, one-to-one with each
/// other and with the already-matched sets. Ties break toward the smaller
/// source id, then the smaller target id.
std::vector<NodePair> greedy_commit(const Eigen::MatrixXd& s, int budget,
                                    const std::vector<char>& matched_s,
                                    const std::vector<char>& matched_t);

/// The gradual matching loop: seeds first, then per-iteration greedy
/// commitment of B = ceil((min(n_s, n_t) - |seeds|) / iterations) pairs
/// scored by S_emb (u,v) * (ACN(u,v) + 1)^p, with ACN counts updated
/// incrementally between iterations. Embeddings are trained once and
/// frozen; only the ACN factor changes across iterations. Returns a
/// one-to-one mapping that is total on the smaller side.
Mapping gradual_align(const AlignmentProblem& problem, const ChannelEmbeddings& emb,
                      const MatchConfig& cfg,
                      std::vector<IterationTrace>* trace = nullptr);

}  // namespace gradalign
