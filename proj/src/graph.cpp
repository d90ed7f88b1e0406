#include "gradalign/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace gradalign {

Graph::Graph(int node_count, const std::vector<NodePair>& edge_list,
             std::optional<Eigen::MatrixXd> attributes)
    : node_count_(node_count), attributes_(std::move(attributes)) {
    if (node_count < 0) {
        throw std::invalid_argument("node_count must be non-negative");
    }
    std::set<NodePair> canonical;
    for (const auto& [u, v] : edge_list) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
            throw std::invalid_argument("edge endpoint out of range: (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        if (u == v) continue;  // self-loops re-enter only via A + I
        canonical.insert({std::min(u, v), std::max(u, v)});
    }
    edges_.assign(canonical.begin(), canonical.end());
    adjacency_.resize(static_cast<std::size_t>(node_count));
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    if (attributes_ && attributes_->rows() != node_count) {
        throw std::invalid_argument("attribute matrix has " +
                                    std::to_string(attributes_->rows()) +
                                    " rows, expected " + std::to_string(node_count));
    }
}

void Graph::check_node(int i) const {
    if (i < 0 || i >= node_count_) {
        throw std::invalid_argument("node id out of range: " + std::to_string(i));
    }
}

const std::vector<int>& Graph::neighbors(int i) const {
    check_node(i);
    return adjacency_[static_cast<std::size_t>(i)];
}

int Graph::degree(int i) const {
    check_node(i);
    return static_cast<int>(adjacency_[static_cast<std::size_t>(i)].size());
}

bool Graph::has_edge(int i, int j) const {
    check_node(i);
    check_node(j);
    const auto& nbrs = adjacency_[static_cast<std::size_t>(i)];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

Eigen::MatrixXd Graph::dense_adjacency() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(node_count_, node_count_);
    for (const auto& [u, v] : edges_) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

Graph build_graph(int node_count, const std::vector<NodePair>& edge_list,
                  std::optional<Eigen::MatrixXd> attributes) {
    return Graph(node_count, edge_list, std::move(attributes));
}

Eigen::MatrixXd normalized_adjacency(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd a_tilde = g.dense_adjacency();
    a_tilde.diagonal().array() += 1.0;
    Eigen::VectorXd d_inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        d_inv_sqrt(i) = 1.0 / std::sqrt(static_cast<double>(g.degree(i)) + 1.0);
    }
    return d_inv_sqrt.asDiagonal() * a_tilde * d_inv_sqrt.asDiagonal();
}

void Mapping::insert(int u, int v) {
    if (forward_.count(u)) {
        throw std::invalid_argument("source node already matched: " + std::to_string(u));
    }
    if (backward_.count(v)) {
        throw std::invalid_argument("target node already matched: " + std::to_string(v));
    }
    forward_.emplace(u, v);
    backward_.emplace(v, u);
    pairs_.emplace_back(u, v);
}

std::optional<int> Mapping::target_of(int u) const {
    auto it = forward_.find(u);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Mapping::source_of(int v) const {
    auto it = backward_.find(v);
    if (it == backward_.end()) return std::nullopt;
    return it->second;
}

AlignmentProblem make_problem(Graph source, Graph target,
                              std::vector<NodePair> ground_truth,
                              std::vector<NodePair> seed_anchors) {
    std::set<int> seen_u, seen_v;
    std::set<NodePair> truth_set;
    for (const auto& [u, v] : ground_truth) {
        if (u < 0 || u >= source.node_count() || v < 0 || v >= target.node_count()) {
            throw std::invalid_argument("ground-truth pair out of range: (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        if (!seen_u.insert(u).second || !seen_v.insert(v).second) {
            throw std::invalid_argument("ground truth is not one-to-one at (" +
                                        std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        truth_set.insert({u, v});
    }
    for (const auto& p : seed_anchors) {
        if (!truth_set.count(p)) {
            throw std::invalid_argument("seed anchor (" + std::to_string(p.first) + ", " +
                                        std::to_string(p.second) + ") is not in the ground truth");
        }
    }
    return AlignmentProblem{std::move(source), std::move(target),
                            std::move(ground_truth), std::move(seed_anchors)};
}

}  // namespace gradalign
