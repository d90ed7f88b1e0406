#pragma once

#include <Eigen/Dense>

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gradalign {

using NodePair = std::pair<int, int>;

/// Immutable undirected graph over dense node ids 0..n-1.
///
/// Input edges may repeat, be given in either direction or contain
/// self-loops; construction canonicalizes to a sorted, duplicate-free
/// edge set with u < v and no self-loops. Safe to share across threads.
class Graph {
public:
    Graph() = default;
    Graph(int node_count, const std::vector<NodePair>& edge_list,
          std::optional<Eigen::MatrixXd> attributes = std::nullopt);

    int node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Canonical edge list: u < v, lexicographically sorted.
    const std::vector<NodePair>& edges() const { return edges_; }

    /// Sorted, duplicate-free neighbor list. Throws on out-of-range id.
    const std::vector<int>& neighbors(int i) const;

    int degree(int i) const;
    bool has_edge(int i, int j) const;

    const std::optional<Eigen::MatrixXd>& attributes() const { return attributes_; }

    /// Dense symmetric 0/1 adjacency with zero diagonal.
    Eigen::MatrixXd dense_adjacency() const;

private:
    void check_node(int i) const;

    int node_count_ = 0;
    std::vector<NodePair> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::optional<Eigen::MatrixXd> attributes_;
};

Graph build_graph(int node_count, const std::vector<NodePair>& edge_list,
                  std::optional<Eigen::MatrixXd> attributes = std::nullopt);

/// GCN propagation operator D^{-1/2} (A + I) D^{-1/2}, where D is the
/// degree matrix of A + I. Symmetric; an isolated node keeps a unit
/// self-entry.
Eigen::MatrixXd normalized_adjacency(const Graph& g);

/// Growing one-to-one partial correspondence between source and target
/// node ids, in insertion order. Owned by a single thread of control.
class Mapping {
public:
    /// Throws std::invalid_argument if u or v is already matched.
    void insert(int u, int v);

    bool contains_source(int u) const { return forward_.count(u) > 0; }
    bool contains_target(int v) const { return backward_.count(v) > 0; }
    std::optional<int> target_of(int u) const;
    std::optional<int> source_of(int v) const;

    std::size_t size() const { return pairs_.size(); }
    const std::vector<NodePair>& pairs() const { return pairs_; }

private:
    std::vector<NodePair> pairs_;
    std::unordered_map<int, int> forward_;
    std::unordered_map<int, int> backward_;
};

/// A pair of networks with ground-truth correspondences and the subset
/// of them given as prior anchors.
struct AlignmentProblem {
    Graph source;
    Graph target;
    std::vector<NodePair> ground_truth;
    std::vector<NodePair> seed_anchors;
};

/// Validates: ground truth one-to-one in both coordinates, endpoints in
/// range, seed_anchors a subset of ground_truth.
AlignmentProblem make_problem(Graph source, Graph target,
                              std::vector<NodePair> ground_truth,
                              std::vector<NodePair> seed_anchors = {});

}  // namespace gradalign
