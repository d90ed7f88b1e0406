#include "gradalign/similarity.hpp"

#include "gradalign/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gradalign {

Eigen::MatrixXd embedding_similarity(const LayerEmbeddings& emb_s,
                                     const LayerEmbeddings& emb_t,
                                     const LayerEmbeddings& aug_emb_s,
                                     const LayerEmbeddings& aug_emb_t,
                                     double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (emb_s.size() != emb_t.size()) {
        throw std::invalid_argument("original-channel layer counts differ");
    }
    if (aug_emb_s.size() != aug_emb_t.size()) {
        throw std::invalid_argument("augmented-channel layer counts differ");
    }
    if (aug_emb_s.empty()) {
        throw std::invalid_argument("augmented channel must have at least one layer");
    }

    const Eigen::Index n_s = aug_emb_s.front().rows();
    const Eigen::Index n_t = aug_emb_t.front().rows();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_s, n_t);

    const bool has_original = !emb_s.empty();
    for (std::size_t l = 0; l < emb_s.size(); ++l) {
        s += row_unit_normalized(emb_s[l]) * row_unit_normalized(emb_t[l]).transpose();
    }
    const double aug_weight = has_original ? lambda : 1.0;
    for (std::size_t l = 0; l < aug_emb_s.size(); ++l) {
        s += aug_weight *
             (row_unit_normalized(aug_emb_s[l]) * row_unit_normalized(aug_emb_t[l]).transpose());
    }
    return s;
}

Eigen::MatrixXi acn_counts(const Graph& g_s, const Graph& g_t, const Mapping& mapping) {
    AcnCounter counter(g_s, g_t);
    for (const auto& [u, v] : mapping.pairs()) counter.add_pair(u, v);
    return counter.counts();
}

AcnCounter::AcnCounter(const Graph& g_s, const Graph& g_t)
    : g_s_(&g_s), g_t_(&g_t),
      counts_(Eigen::MatrixXi::Zero(g_s.node_count(), g_t.node_count())) {}

void AcnCounter::add_pair(int u, int v) {
    for (int nu : g_s_->neighbors(u)) {
        for (int nv : g_t_->neighbors(v)) counts_(nu, nv) += 1;
    }
}

Eigen::MatrixXd acn_similarity(const Eigen::MatrixXi& counts, double p) {
    if (p <= 0.0) throw std::invalid_argument("ACN exponent p must be positive");
    Eigen::MatrixXd s(counts.rows(), counts.cols());
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        s.data()[i] = std::pow(static_cast<double>(counts.data()[i]) + 1.0, p);
    }
    return s;
}

Eigen::MatrixXd combined_similarity(const Eigen::MatrixXd& s_emb,
                                    const Eigen::MatrixXd& s_acn) {
    if (s_emb.rows() != s_acn.rows() || s_emb.cols() != s_acn.cols()) {
        throw std::invalid_argument("similarity shapes differ: " +
                                    std::to_string(s_emb.rows()) + "x" +
                                    std::to_string(s_emb.cols()) + " vs " +
                                    std::to_string(s_acn.rows()) + "x" +
                                    std::to_string(s_acn.cols()));
    }
    return s_emb.cwiseProduct(s_acn);
}

}  // namespace gradalign
