#include "gradalign/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

namespace gradalign {

Eigen::VectorXd khop_centrality(const Graph& g, int k, double alpha) {
    if (k < 1) throw std::invalid_argument("k-hop centrality requires k >= 1");
    if (alpha < 1.0) throw std::invalid_argument("k-hop centrality requires alpha >= 1");

    const int n = g.node_count();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    std::vector<int> dist(n);
    std::vector<int> frontier, next;
    for (int i = 0; i < n; ++i) {
        // BFS layers out to depth k; n_l is cumulative and excludes i itself.
        std::fill(dist.begin(), dist.end(), -1);
        dist[i] = 0;
        frontier.assign(1, i);
        int within = 0;
        double ci = 0.0;
        double penalty = 1.0;
        for (int l = 1; l <= k; ++l) {
            next.clear();
            for (int u : frontier) {
                for (int v : g.neighbors(u)) {
                    if (dist[v] < 0) {
                        dist[v] = l;
                        next.push_back(v);
                    }
                }
            }
            within += static_cast<int>(next.size());
            ci += static_cast<double>(within) / penalty;
            penalty *= alpha;
            frontier.swap(next);
            if (frontier.empty()) {
                // component exhausted; remaining layers repeat the same count
                for (int rest = l + 1; rest <= k; ++rest) {
                    ci += static_cast<double>(within) / penalty;
                    penalty *= alpha;
                }
                break;
            }
        }
        c(i) = ci;
    }
    return c;
}

namespace {

Eigen::VectorXd adjacency_times(const Graph& g, const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(g.node_count());
    for (const auto& [u, v] : g.edges()) {
        y(u) += x(v);
        y(v) += x(u);
    }
    return y;
}

}  // namespace

double spectral_radius_estimate(const Graph& g, int iters) {
    if (iters < 1) throw std::invalid_argument("spectral radius estimate requires iters >= 1");
    const int n = g.node_count();
    if (n == 0 || g.edge_count() == 0) return 0.0;

    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> unif(0.5, 1.5);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = unif(rng);
    x /= x.norm();

    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd y = adjacency_times(g, x);
        const double norm = y.norm();
        if (norm == 0.0) return 0.0;
        estimate = norm;
        x = y / norm;
    }
    return estimate;
}

double default_katz_alpha(const Graph& g) {
    const double radius = spectral_radius_estimate(g);
    if (radius <= 0.0) return 0.1;
    return std::min(0.9 / radius, 0.1);
}

Eigen::VectorXd katz_centrality(const Graph& g, double alpha, double beta,
                                double tol, int max_iter) {
    if (alpha <= 0.0) throw std::invalid_argument("Katz centrality requires alpha > 0");
    if (beta <= 0.0) throw std::invalid_argument("Katz centrality requires beta > 0");
    if (tol <= 0.0) throw std::invalid_argument("Katz centrality requires tol > 0");
    if (max_iter < 1) throw std::invalid_argument("Katz centrality requires max_iter >= 1");

    const double radius = spectral_radius_estimate(g);
    if (alpha * radius >= 1.0) {
        throw std::runtime_error(
            "Katz iteration cannot converge: alpha * spectral_radius = " +
            std::to_string(alpha * radius) + " >= 1 (spectral radius estimate " +
            std::to_string(radius) + ")");
    }

    const int n = g.node_count();
    Eigen::VectorXd c = Eigen::VectorXd::Constant(n, beta);
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd next = alpha * adjacency_times(g, c);
        next.array() += beta;
        const double delta = (next - c).cwiseAbs().maxCoeff();
        c = next;
        if (!c.allFinite()) {
            throw std::runtime_error(
                "Katz iteration diverged at step " + std::to_string(it) +
                " (spectral radius estimate " + std::to_string(radius) + ")");
        }
        if (delta <= tol) return c;
    }
    throw std::runtime_error(
        "Katz iteration did not reach tolerance within " + std::to_string(max_iter) +
        " steps (spectral radius estimate " + std::to_string(radius) + ")");
}

Eigen::VectorXd centrality(const Graph& g, const CentralityConfig& cfg) {
    switch (cfg.kind) {
        case CentralityKind::KHop:
            return khop_centrality(g, cfg.k, cfg.alpha.value_or(2.0));
        case CentralityKind::Katz: {
            const double alpha = cfg.alpha ? *cfg.alpha : default_katz_alpha(g);
            return katz_centrality(g, alpha, cfg.beta, cfg.tol, cfg.max_iter);
        }
    }
    throw std::logic_error("unknown centrality kind");
}

}  // namespace gradalign
