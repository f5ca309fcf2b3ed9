#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bandopt/dendrogram.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/mmi_estimator.hpp"
#include "bandopt/sparse.hpp"

// Brute-force exact references for every application, plus the accuracy
// metrics used to score the adaptive algorithms against them. Everything
// here is deterministic, seed-free full computation.
namespace bandopt::oracle {

struct AccuracyReport {
    std::string application;
    double score = 0.0;
    std::int64_t trials = 0;
    std::vector<double> per_trial;
};

// k smallest mean-squared distances per point, ties to the lower id.
inline std::vector<std::vector<std::int64_t>> brute_knn(const DenseMatrix& data, std::int64_t k) {
    const std::int64_t n = data.rows();
    if (k < 1 || k >= n) throw std::invalid_argument("brute_knn: need 1 <= k < n");
    std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n));
    std::vector<std::pair<double, std::int64_t>> cand;
    for (std::int64_t i = 0; i < n; ++i) {
        cand.clear();
        for (std::int64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cand.emplace_back(exact_mean(data.row(i), data.row(j)), j);
        }
        std::sort(cand.begin(), cand.end());
        auto& nb = out[static_cast<std::size_t>(i)];
        nb.reserve(static_cast<std::size_t>(k));
        for (std::int64_t t = 0; t < k; ++t) nb.push_back(cand[static_cast<std::size_t>(t)].second);
    }
    return out;
}

inline std::vector<std::vector<std::int64_t>> brute_knn_sparse(
    std::span<const SparseVector> data, std::int64_t k) {
    const std::int64_t n = static_cast<std::int64_t>(data.size());
    if (k < 1 || k >= n) throw std::invalid_argument("brute_knn_sparse: need 1 <= k < n");
    std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n));
    std::vector<std::pair<double, std::int64_t>> cand;
    for (std::int64_t i = 0; i < n; ++i) {
        cand.clear();
        for (std::int64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            cand.emplace_back(sparse_exact(data[static_cast<std::size_t>(i)],
                                           data[static_cast<std::size_t>(j)]),
                              j);
        }
        std::sort(cand.begin(), cand.end());
        auto& nb = out[static_cast<std::size_t>(i)];
        for (std::int64_t t = 0; t < k; ++t) nb.push_back(cand[static_cast<std::size_t>(t)].second);
    }
    return out;
}

// Nearest centroid per point (ties to the lower centroid id) and the total
// within-cluster squared distance.
struct BruteAssignment {
    std::vector<int> labels;
    double inertia = 0.0;
};

inline BruteAssignment brute_assign(const DenseMatrix& data, const DenseMatrix& centroids) {
    if (data.cols() != centroids.cols())
        throw std::invalid_argument("brute_assign: dimension mismatch");
    BruteAssignment out;
    out.labels.resize(static_cast<std::size_t>(data.rows()));
    for (std::int64_t i = 0; i < data.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::int64_t c = 0; c < centroids.rows(); ++c) {
            const double dist = sq_l2_distance(data.row(i), centroids.row(c));
            if (dist < best) {
                best = dist;
                arg = static_cast<int>(c);
            }
        }
        out.labels[static_cast<std::size_t>(i)] = arg;
        out.inertia += best;
    }
    return out;
}

enum class MedoidMetric { l1, l2sq };

inline std::int64_t brute_medoid(const DenseMatrix& data, MedoidMetric metric) {
    const std::int64_t n = data.rows();
    if (n < 2) throw std::invalid_argument("brute_medoid: need n >= 2");
    double best = std::numeric_limits<double>::infinity();
    std::int64_t arg = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum += metric == MedoidMetric::l1 ? l1_distance(data.row(i), data.row(j))
                                              : sq_l2_distance(data.row(i), data.row(j));
        }
        const double avg = sum / static_cast<double>(n - 1);
        if (avg < best) {
            best = avg;
            arg = i;
        }
    }
    return arg;
}

// Full-data Kozachenko-Leonenko mutual information per feature; returns the
// argmax feature and all scores.
struct BruteMmi {
    std::int64_t feature = 0;
    std::vector<double> scores;
};

inline BruteMmi brute_mmi(const DenseMatrix& x, std::span<const double> target,
                          const MmiOptions& opts = {}) {
    if (x.rows() != static_cast<std::int64_t>(target.size()))
        throw std::invalid_argument("brute_mmi: target length mismatch");
    BruteMmi out;
    out.scores.resize(static_cast<std::size_t>(x.cols()));
    std::vector<double> col(static_cast<std::size_t>(x.rows()));
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < x.cols(); ++j) {
        for (std::int64_t i = 0; i < x.rows(); ++i) col[static_cast<std::size_t>(i)] = x(i, j);
        const double mi = kl_entropy(col, opts) + kl_entropy(target, opts) -
                          kl_entropy_2d(col, target, opts);
        out.scores[static_cast<std::size_t>(j)] = mi;
        if (mi > best) {
            best = mi;
            out.feature = j;
        }
    }
    return out;
}

// Exact average-linkage agglomeration (values are mean squared coordinate
// differences, matching the adaptive algorithm's scale). O(n^2 d) distance
// table plus the convex-combination update per merge.
inline Dendrogram brute_hier(const DenseMatrix& data) {
    const std::int64_t n = data.rows();
    if (n < 2) throw std::invalid_argument("brute_hier: need n >= 2");
    struct Cluster {
        std::int64_t id;
        std::int64_t size;
    };
    std::vector<Cluster> alive;
    std::map<std::pair<std::int64_t, std::int64_t>, double> mean;
    for (std::int64_t i = 0; i < n; ++i) alive.push_back({i, 1});
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j)
            mean[{i, j}] = exact_mean(data.row(i), data.row(j));

    Dendrogram tree;
    tree.n_leaves = n;
    std::int64_t next_id = n;
    const auto key = [](std::int64_t a, std::int64_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    while (alive.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::pair<std::int64_t, std::int64_t> arg{-1, -1};
        for (std::size_t p = 0; p < alive.size(); ++p)
            for (std::size_t q = p + 1; q < alive.size(); ++q) {
                const auto k = key(alive[p].id, alive[q].id);
                const double v = mean.at(k);
                if (v < best || (v == best && k < arg)) {
                    best = v;
                    arg = k;
                }
            }
        const auto [a, b] = arg;
        const auto size_of = [&](std::int64_t id) {
            for (const auto& c : alive)
                if (c.id == id) return c.size;
            throw std::logic_error("brute_hier: dead cluster");
        };
        const std::int64_t sa = size_of(a);
        const std::int64_t sb = size_of(b);
        // average linkage of the merged cluster to each survivor is the
        // size-weighted convex combination of the parents' linkages
        for (const auto& c : alive) {
            if (c.id == a || c.id == b) continue;
            const double va = mean.at(key(a, c.id));
            const double vb = mean.at(key(b, c.id));
            mean[key(next_id, c.id)] =
                (static_cast<double>(sa) * va + static_cast<double>(sb) * vb) /
                static_cast<double>(sa + sb);
        }
        std::erase_if(alive, [&](const Cluster& c) { return c.id == a || c.id == b; });
        alive.push_back({next_id, sa + sb});
        tree.merges.push_back({a, b, next_id, best, true});
        ++next_id;
    }
    return tree;
}

// Exact Lloyd iterations from an explicit init (shared with the adaptive
// variant for like-for-like comparisons). Empty clusters are re-seeded at
// the point farthest from its assigned centroid.
struct BruteLloydResult {
    std::vector<int> labels;
    DenseMatrix centroids;
    double inertia = 0.0;
    int iters = 0;
};

inline BruteLloydResult brute_lloyd(const DenseMatrix& data, const DenseMatrix& init,
                                    int max_iters) {
    const std::int64_t k = init.rows();
    BruteLloydResult res{{}, init, 0.0, 0};
    BruteAssignment cur = brute_assign(data, res.centroids);
    for (int it = 0; it < max_iters; ++it) {
        DenseMatrix next(k, data.cols());
        std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
        for (std::int64_t i = 0; i < data.rows(); ++i) {
            const auto c = static_cast<std::int64_t>(cur.labels[static_cast<std::size_t>(i)]);
            ++counts[static_cast<std::size_t>(c)];
            for (std::int64_t j = 0; j < data.cols(); ++j) next(c, j) += data(i, j);
        }
        for (std::int64_t c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) {
                // farthest point from its assigned centroid
                double worst = -1.0;
                std::int64_t pick = 0;
                for (std::int64_t i = 0; i < data.rows(); ++i) {
                    const auto ci = static_cast<std::int64_t>(cur.labels[static_cast<std::size_t>(i)]);
                    const double dist = sq_l2_distance(data.row(i), res.centroids.row(ci));
                    if (dist > worst) {
                        worst = dist;
                        pick = i;
                    }
                }
                for (std::int64_t j = 0; j < data.cols(); ++j) next(c, j) = data(pick, j);
            } else {
                for (std::int64_t j = 0; j < data.cols(); ++j)
                    next(c, j) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
            }
        }
        res.centroids = std::move(next);
        BruteAssignment stepped = brute_assign(data, res.centroids);
        res.iters = it + 1;
        const bool stable = stepped.labels == cur.labels;
        cur = std::move(stepped);
        if (stable) break;
    }
    res.labels = cur.labels;
    res.inertia = cur.inertia;
    return res;
}

// Fraction of points whose neighbor sets match exactly (order ignored).
inline double knn_accuracy(const std::vector<std::vector<std::int64_t>>& exact,
                           const std::vector<std::vector<std::int64_t>>& approx) {
    if (exact.size() != approx.size()) throw std::invalid_argument("knn_accuracy: size mismatch");
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        auto a = exact[i];
        auto b = approx[i];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(exact.size());
}

inline double kmeans_accuracy(const std::vector<int>& exact, const std::vector<int>& approx) {
    if (exact.size() != approx.size()) throw std::invalid_argument("kmeans_accuracy: size mismatch");
    std::int64_t hits = 0;
    for (std::size_t i = 0; i < exact.size(); ++i)
        if (exact[i] == approx[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(exact.size());
}

inline double mmi_accuracy(std::int64_t exact_feature, std::int64_t approx_feature) {
    return exact_feature == approx_feature ? 1.0 : 0.0;
}

// 1 - (sum of |tree-distance| deviations vs exact) / (same vs uniformly
// random trees, averaged over random_trees draws). 1 means identical leaf
// path lengths, ~0 means no better than random.
inline double tree_accuracy(const Dendrogram& exact, const Dendrogram& approx,
                            std::int64_t random_trees = 32, std::uint64_t seed = 0) {
    if (exact.n_leaves != approx.n_leaves)
        throw std::invalid_argument("tree_accuracy: leaf sets differ");
    const auto de = leaf_distances(exact);
    const auto da = leaf_distances(approx);
    double num = 0.0;
    for (std::size_t p = 0; p < de.size(); ++p) num += std::abs(de[p] - da[p]);
    Rng rng(seed);
    double denom = 0.0;
    for (std::int64_t t = 0; t < random_trees; ++t) {
        const auto dr = leaf_distances(random_tree(exact.n_leaves, rng));
        for (std::size_t p = 0; p < de.size(); ++p) denom += std::abs(de[p] - dr[p]);
    }
    denom /= static_cast<double>(random_trees);
    if (denom == 0.0) return num == 0.0 ? 1.0 : 0.0;
    return 1.0 - num / denom;
}

}  // namespace bandopt::oracle
