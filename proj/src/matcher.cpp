#include "gradalign/matcher.hpp"

#include "gradalign/similarity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gradalign {

namespace {

// Repeated global max over unmatched pairs. The row-major scan order makes
// the first-seen maximum the lexicographic tie-winner.
template <typename Value>
std::vector<NodePair> greedy_commit_impl(int n_s, int n_t, Value&& value, int budget,
                                         std::vector<char>& matched_s,
                                         std::vector<char>& matched_t) {
    std::vector<NodePair> committed;
    for (int pick = 0; pick < budget; ++pick) {
        double best = -std::numeric_limits<double>::infinity();
        int best_u = -1, best_v = -1;
        for (int u = 0; u < n_s; ++u) {
            if (matched_s[static_cast<std::size_t>(u)]) continue;
            for (int v = 0; v < n_t; ++v) {
                if (matched_t[static_cast<std::size_t>(v)]) continue;
                const double s = value(u, v);
                if (s > best) {
                    best = s;
                    best_u = u;
                    best_v = v;
                }
            }
        }
        if (best_u < 0) break;  // candidates exhausted
        matched_s[static_cast<std::size_t>(best_u)] = 1;
        matched_t[static_cast<std::size_t>(best_v)] = 1;
        committed.emplace_back(best_u, best_v);
    }
    return committed;
}

}  // namespace

std::vector<NodePair> greedy_commit(const Eigen::MatrixXd& s, int budget,
                                    const std::vector<char>& matched_s,
                                    const std::vector<char>& matched_t) {
    if (budget < 1) throw std::invalid_argument("greedy commit budget must be >= 1");
    if (static_cast<Eigen::Index>(matched_s.size()) != s.rows() ||
        static_cast<Eigen::Index>(matched_t.size()) != s.cols()) {
        throw std::invalid_argument("matched-set sizes do not match the similarity matrix");
    }
    std::vector<char> ms = matched_s;
    std::vector<char> mt = matched_t;
    return greedy_commit_impl(
        static_cast<int>(s.rows()), static_cast<int>(s.cols()),
        [&s](int u, int v) { return s(u, v); }, budget, ms, mt);
}

Mapping gradual_align(const AlignmentProblem& problem, const ChannelEmbeddings& emb,
                      const MatchConfig& cfg, std::vector<IterationTrace>* trace) {
    if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

    const int n_s = problem.source.node_count();
    const int n_t = problem.target.node_count();
    const int n_min = std::min(n_s, n_t);

    Mapping mapping;
    AcnCounter counter(problem.source, problem.target);
    std::vector<char> matched_s(static_cast<std::size_t>(n_s), 0);
    std::vector<char> matched_t(static_cast<std::size_t>(n_t), 0);
    for (const auto& [u, v] : problem.seed_anchors) {
        mapping.insert(u, v);  // rejects one-to-one violations
        counter.add_pair(u, v);
        matched_s[static_cast<std::size_t>(u)] = 1;
        matched_t[static_cast<std::size_t>(v)] = 1;
    }

    const int total = n_min - static_cast<int>(mapping.size());
    if (total <= 0) return mapping;
    const int budget = (total + cfg.iterations - 1) / cfg.iterations;

    const Eigen::MatrixXd s_emb = embedding_similarity(
        emb.source, emb.target, emb.aug_source, emb.aug_target, cfg.lambda);

    // ACN counts are small integers; cache (c + 1)^p per distinct count so
    // the scan stays a multiply and a lookup.
    std::vector<double> pow_cache{1.0};
    const auto& counts = counter.counts();
    auto combined = [&](int u, int v) {
        const int c = counts(u, v);
        while (static_cast<int>(pow_cache.size()) <= c) {
            pow_cache.push_back(std::pow(static_cast<double>(pow_cache.size()) + 1.0, cfg.p));
        }
        return s_emb(u, v) * pow_cache[static_cast<std::size_t>(c)];
    };

    int iteration = 0;
    while (static_cast<int>(mapping.size()) < n_min) {
        ++iteration;
        const int want = std::min(budget, n_min - static_cast<int>(mapping.size()));
        const auto picks =
            greedy_commit_impl(n_s, n_t, combined, want, matched_s, matched_t);
        if (picks.empty()) break;
        if (trace) {
            IterationTrace record;
            record.iteration = iteration;
            record.committed = static_cast<int>(picks.size());
            record.max_similarity = combined(picks.front().first, picks.front().second);
            record.min_similarity = combined(picks.back().first, picks.back().second);
            trace->push_back(record);
        }
        // Counts stay frozen during the iteration's scan; fold the new
        // pairs in afterwards.
        for (const auto& [u, v] : picks) {
            mapping.insert(u, v);
            counter.add_pair(u, v);
        }
    }
    return mapping;
}

}  // namespace gradalign
