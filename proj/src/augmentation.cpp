#include "gradalign/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gradalign {

std::vector<int> bin_assign(const Eigen::VectorXd& c, double width, double c_max) {
    if (width <= 0.0) throw std::invalid_argument("binning width must be positive");
    if (c.size() > 0 && c_max < c.maxCoeff()) {
        throw std::invalid_argument("c_max must dominate every centrality value");
    }
    const int num_bins = std::max(1, static_cast<int>(std::ceil(c_max / width)));
    std::vector<int> bins(static_cast<std::size_t>(c.size()));
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        int b = static_cast<int>(std::ceil(c(i) / width));
        bins[static_cast<std::size_t>(i)] = std::clamp(b, 1, num_bins);
    }
    return bins;
}

namespace {

// Katz attenuation must be shared across the pair, otherwise the two
// centrality scales are not comparable and the shared bin grid is
// meaningless.
CentralityConfig resolve_for_pair(const AlignmentProblem& problem,
                                  const CentralityConfig& cfg) {
    CentralityConfig resolved = cfg;
    if (resolved.kind == CentralityKind::Katz && !resolved.alpha) {
        const double radius = std::max(spectral_radius_estimate(problem.source),
                                       spectral_radius_estimate(problem.target));
        resolved.alpha = radius > 0.0 ? std::min(0.9 / radius, 0.1) : 0.1;
    }
    return resolved;
}

Eigen::MatrixXd one_hot(const std::vector<int>& bins, int num_bins) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bins.size()), num_bins);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        m(static_cast<Eigen::Index>(i), bins[i] - 1) = 1.0;
    }
    return m;
}

}  // namespace

AugmentedAttributes augment(const AlignmentProblem& problem, const AugmentConfig& cfg) {
    if (cfg.width.has_value() == cfg.target_dim.has_value()) {
        throw std::invalid_argument("exactly one of width / target_dim must be given");
    }
    if (cfg.width && *cfg.width <= 0.0) {
        throw std::invalid_argument("binning width must be positive");
    }
    if (cfg.target_dim && *cfg.target_dim < 1) {
        throw std::invalid_argument("target_dim must be at least 1");
    }

    const CentralityConfig ccfg = resolve_for_pair(problem, cfg.centrality);
    const Eigen::VectorXd c_s = centrality(problem.source, ccfg);
    const Eigen::VectorXd c_t = centrality(problem.target, ccfg);

    double c_max = 0.0;
    if (c_s.size() > 0) c_max = std::max(c_max, c_s.maxCoeff());
    if (c_t.size() > 0) c_max = std::max(c_max, c_t.maxCoeff());

    double width;
    if (cfg.width) {
        width = *cfg.width;
    } else {
        // d = ceil(c_max / w) inverted for the requested dimension.
        width = c_max > 0.0 ? c_max / static_cast<double>(*cfg.target_dim) : 1.0;
    }

    const std::vector<int> bins_s = bin_assign(c_s, width, c_max);
    const std::vector<int> bins_t = bin_assign(c_t, width, c_max);
    const int raw_dim = std::max(1, static_cast<int>(std::ceil(c_max / width)));

    std::vector<int> usage(static_cast<std::size_t>(raw_dim), 0);
    for (int b : bins_s) usage[static_cast<std::size_t>(b - 1)]++;
    for (int b : bins_t) usage[static_cast<std::size_t>(b - 1)]++;

    // Drop bins never assigned over the two networks, preserving order.
    std::vector<int> remap(static_cast<std::size_t>(raw_dim), -1);
    std::vector<double> edges;
    int kept = 0;
    for (int b = 0; b < raw_dim; ++b) {
        if (usage[static_cast<std::size_t>(b)] > 0) {
            remap[static_cast<std::size_t>(b)] = ++kept;
            edges.push_back(static_cast<double>(b + 1) * width);
        }
    }

    auto remap_bins = [&](std::vector<int> bins) {
        for (int& b : bins) b = remap[static_cast<std::size_t>(b - 1)];
        return bins;
    };

    AugmentedAttributes out;
    out.source = one_hot(remap_bins(bins_s), kept);
    out.target = one_hot(remap_bins(bins_t), kept);
    out.bin_edges = std::move(edges);
    return out;
}

}  // namespace gradalign
