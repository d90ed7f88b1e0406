#pragma once

#include "gradalign/graph.hpp"

#include <cstdint>
#include <optional>

namespace gradalign {

enum class CentralityKind { KHop, Katz };

struct CentralityConfig {
    CentralityKind kind = CentralityKind::Katz;
    int k = 1;                    // hop radius (k-hop only)
    std::optional<double> alpha;  // k-hop penalty (default 2) or Katz attenuation
                                  // (default min(0.9 / lambda_max, 0.1))
    double beta = 1.0;            // Katz additive constant
    double tol = 1e-10;
    int max_iter = 1000;
};

/// c_i = sum_{l=1..k} n_l(i) / alpha^(l-1), where n_l(i) counts the nodes
/// (excluding i) whose distance from i is at most l. With k = 1 this is
/// exactly the degree vector.
Eigen::VectorXd khop_centrality(const Graph& g, int k, double alpha);

/// Fixed point of c = alpha * A * c + beta * 1, iterated from c = beta * 1.
/// Requires alpha * spectral_radius(A) < 1 (checked via a power-iteration
/// estimate); throws std::runtime_error on non-convergence.
Eigen::VectorXd katz_centrality(const Graph& g, double alpha, double beta,
                                double tol = 1e-10, int max_iter = 1000);

/// Power-iteration estimate of the largest adjacency eigenvalue magnitude.
/// Returns 0 for an edgeless graph.
double spectral_radius_estimate(const Graph& g, int iters = 100);

/// min(0.9 / spectral_radius_estimate, 0.1); safe for Katz on this graph.
double default_katz_alpha(const Graph& g);

/// Dispatch on cfg.kind with per-kind defaults for an unset alpha.
Eigen::VectorXd centrality(const Graph& g, const CentralityConfig& cfg);

}  // namespace gradalign
