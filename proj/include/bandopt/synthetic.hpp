#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "bandopt/dense.hpp"
#include "bandopt/rng.hpp"
#include "bandopt/sparse.hpp"

namespace bandopt::synth {

// Gaussian blobs: k centers with iid N(0, center_spread^2) coordinates,
// points scattered N(0, point_std^2) around their center (round-robin
// assignment, so cluster sizes are balanced).
struct BlobsFixture {
    DenseMatrix data;
    std::vector<int> labels;
    DenseMatrix centers;
};

inline BlobsFixture gen_blobs(std::int64_t n, std::int64_t d, std::int64_t k,
                              double center_spread, double point_std, std::uint64_t seed) {
    if (n < 1 || d < 1 || k < 1 || k > n) throw std::invalid_argument("gen_blobs: bad shape");
    Rng rng(seed);
    BlobsFixture fx{DenseMatrix(n, d), std::vector<int>(static_cast<std::size_t>(n)),
                    DenseMatrix(k, d)};
    for (std::int64_t c = 0; c < k; ++c)
        for (std::int64_t j = 0; j < d; ++j) fx.centers(c, j) = center_spread * rng.normal();
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t c = i % k;
        fx.labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
        for (std::int64_t j = 0; j < d; ++j)
            fx.data(i, j) = fx.centers(c, j) + point_std * rng.normal();
    }
    return fx;
}

// Bandit fixture with exactly known arm means and per-pull noise: row 0 is
// the all-zero query; arm i's coordinate-wise squared differences take the
// two values mean_i +/- sigma in equal balanced counts, so the exact mean is
// mean_i, the per-pull standard deviation is exactly sigma, and samples are
// sigma-sub-Gaussian (bounded). Requires even d and base >= sigma.
struct GapGaussianFixture {
    DenseMatrix data;               // (1 + #gaps) rows; row 0 is the query
    std::vector<double> true_means; // per arm, arm i = data row i+1
    double sigma = 0.0;
};

inline GapGaussianFixture gen_gap_gaussian(std::int64_t d, double base,
                                           std::span<const double> gaps, double sigma,
                                           std::uint64_t seed) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("gen_gap_gaussian: d must be even");
    if (base < sigma) throw std::invalid_argument("gen_gap_gaussian: need base >= sigma");
    Rng rng(seed);
    const std::int64_t n_arms = static_cast<std::int64_t>(gaps.size()) + 1;
    GapGaussianFixture fx{DenseMatrix(n_arms + 1, d), {}, sigma};
    fx.true_means.reserve(static_cast<std::size_t>(n_arms));
    std::vector<double> signs(static_cast<std::size_t>(d));
    for (std::int64_t t = 0; t < d; ++t) signs[static_cast<std::size_t>(t)] = t < d / 2 ? 1.0 : -1.0;
    for (std::int64_t i = 0; i < n_arms; ++i) {
        const double mean = i == 0 ? base : base + gaps[static_cast<std::size_t>(i - 1)];
        fx.true_means.push_back(mean);
        rng.shuffle(signs);
        for (std::int64_t t = 0; t < d; ++t)
            fx.data(i + 1, t) = std::sqrt(mean + sigma * signs[static_cast<std::size_t>(t)]);
    }
    return fx;
}

// Gap list drawn per the N(gamma,1) regularity model, clamped positive.
inline std::vector<double> draw_gaps(std::int64_t count, double gamma, std::uint64_t seed,
                                     double min_gap = 0.05) {
    Rng rng(seed);
    std::vector<double> gaps(static_cast<std::size_t>(count));
    for (auto& g : gaps) {
        g = gamma + rng.normal();
        if (g < min_gap) g = min_gap;
    }
    return gaps;
}

// Feature-selection fixture: iid N(0,1) feature columns, target equals the
// planted column plus N(0, noise^2).
struct MmiFixture {
    DenseMatrix x;
    std::vector<double> target;
    std::int64_t planted = 0;
};

inline MmiFixture gen_mmi_planted(std::int64_t n, std::int64_t d, std::int64_t planted,
                                  double noise, std::uint64_t seed) {
    if (planted < 0 || planted >= d) throw std::invalid_argument("gen_mmi_planted: bad index");
    Rng rng(seed);
    MmiFixture fx{DenseMatrix(n, d), std::vector<double>(static_cast<std::size_t>(n)), planted};
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < d; ++j) fx.x(i, j) = rng.normal();
    for (std::int64_t i = 0; i < n; ++i)
        fx.target[static_cast<std::size_t>(i)] = fx.x(i, planted) + noise * rng.normal();
    return fx;
}

// Sparse blobs: every coordinate is independently nonzero with probability
// `density`; nonzero values follow the assigned center's +/-1 profile plus
// noise, which separates the clusters without densifying the vectors.
struct SparseBlobsFixture {
    std::vector<SparseVector> data;
    std::vector<int> labels;
};

inline SparseBlobsFixture gen_sparse_blobs(std::int64_t n, std::int64_t d, std::int64_t k,
                                           double density, std::uint64_t seed) {
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("gen_sparse_blobs: density");
    Rng rng(seed);
    std::vector<std::vector<double>> profiles(static_cast<std::size_t>(k),
                                              std::vector<double>(static_cast<std::size_t>(d)));
    for (auto& profile : profiles)
        for (auto& v : profile) v = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    SparseBlobsFixture fx;
    fx.data.reserve(static_cast<std::size_t>(n));
    fx.labels.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t c = i % k;
        fx.labels.push_back(static_cast<int>(c));
        std::vector<std::pair<std::int64_t, double>> pairs;
        for (std::int64_t t = 0; t < d; ++t) {
            if (rng.uniform01() >= density) continue;
            const double v = profiles[static_cast<std::size_t>(c)][static_cast<std::size_t>(t)] +
                             0.3 * rng.normal();
            if (v != 0.0) pairs.emplace_back(t, v);
        }
        fx.data.push_back(SparseVector::from_pairs(d, pairs));
    }
    return fx;
}

}  // namespace bandopt::synth
