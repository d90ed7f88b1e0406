#pragma once

#include "gradalign/centrality.hpp"
#include "gradalign/graph.hpp"

#include <optional>
#include <vector>

namespace gradalign {

struct AugmentConfig {
    // Exactly one of width / target_dim must be set.
    std::optional<double> width;
    std::optional<int> target_dim;
    CentralityConfig centrality;
};

/// One-hot centrality-bin matrices for both networks with a shared column
/// dimension; every row sums to 1 and no column is all-zero across the
/// concatenation of the two matrices.
struct AugmentedAttributes {
    Eigen::MatrixXd source;
    Eigen::MatrixXd target;
    std::vector<double> bin_edges;  // upper edge of each retained bin
};

/// Equal-width bin index per node: max(1, ceil(c_i / width)), clamped to
/// [1, ceil(c_max / width)]. Indices are 1-based.
std::vector<int> bin_assign(const Eigen::VectorXd& c, double width, double c_max);

/// Centrality -> shared-width one-hot encoding -> joint pruning of bins
/// never assigned over the two networks. The bin grid is shared: c_max is
/// taken over the union of both networks so both matrices get the same
/// dimension.
AugmentedAttributes augment(const AlignmentProblem& problem, const AugmentConfig& cfg);

}  // namespace gradalign
