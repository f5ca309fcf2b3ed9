#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bandopt/config.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/engine.hpp"
#include "bandopt/ledger.hpp"
#include "bandopt/sparse.hpp"
#include "bandopt/welford_arms.hpp"

namespace bandopt {

namespace detail {

// Run fn(i) for i in [0, n); items are independent and write disjoint slots,
// so scheduling order cannot affect results.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    const auto worker = [&] {
        while (true) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::int64_t>(threads, n));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Coordinate picker honoring the replacement mode; the without-replacement
// permutation is materialized per arm on first use.
class CoordSampler {
public:
    CoordSampler(std::int64_t n_arms, std::int64_t d, Replacement mode, std::uint64_t seed)
        : d_(d), mode_(mode), seed_(seed) {
        if (mode_ == Replacement::without_replacement) {
            perms_.resize(static_cast<std::size_t>(n_arms));
            pos_.assign(static_cast<std::size_t>(n_arms), 0);
        }
    }

    std::int64_t next(std::int64_t arm, Rng& rng) {
        if (mode_ == Replacement::with_replacement) return rng.below(d_);
        auto& perm = perms_[static_cast<std::size_t>(arm)];
        if (perm.empty()) {
            perm.resize(static_cast<std::size_t>(d_));
            std::iota(perm.begin(), perm.end(), std::int64_t{0});
            Rng arm_rng(Rng::mix(seed_, static_cast<std::uint64_t>(arm)));
            arm_rng.shuffle(perm);
        }
        auto& p = pos_[static_cast<std::size_t>(arm)];
        if (p >= d_) throw std::logic_error("CoordSampler: coordinates exhausted");
        return perm[static_cast<std::size_t>(p++)];
    }

private:
    std::int64_t d_;
    Replacement mode_;
    std::uint64_t seed_;
    std::vector<std::vector<std::int64_t>> perms_;
    std::vector<std::int64_t> pos_;
};

}  // namespace detail

struct KnnResult {
    std::vector<std::vector<std::int64_t>> neighbors;  // per point, nearest first
    EvalLedger ledger;
};

// k-NN graph via one best-k bandit per point over the other n-1 points;
// pulls are coordinate-wise squared differences with MAX_PULLS = d. The
// per-point bandits are independent and run in parallel with seeds derived
// from (seed, point), so results do not depend on the thread count.
inline KnnResult knn_graph(const DenseMatrix& data, std::int64_t k, const BanditConfig& cfg,
                           int threads = 1) {
    const std::int64_t n = data.rows();
    const std::int64_t d = data.cols();
    if (n < k + 1) throw std::invalid_argument("knn_graph: need n >= k+1");
    cfg.validate();

    KnnResult out;
    out.neighbors.resize(static_cast<std::size_t>(n));
    std::vector<EvalLedger> ledgers(static_cast<std::size_t>(n));

    detail::parallel_for(n, threads, [&](std::int64_t i) {
        const auto self = data.row(i);
        const auto to_point = [&](std::int64_t a) { return a < i ? a : a + 1; };
        BanditConfig local = cfg;
        local.seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(i));
        detail::CoordSampler coords(n - 1, d, cfg.replacement, local.seed);
        const auto pull = [&](std::int64_t a, Rng& rng) {
            const std::int64_t t = coords.next(a, rng);
            return sample_sq_coord(self, data.row(to_point(a)), t);
        };
        const auto exact = [&](std::int64_t a) {
            return exact_mean(self, data.row(to_point(a)));
        };
        std::vector<ArmSpec> specs(static_cast<std::size_t>(n - 1), ArmSpec{d, d, 1});
        WelfordArms<decltype(pull), decltype(exact)> arms(std::move(specs), local, pull, exact);
        EngineResult res = run_best_k(arms, k, local);
        auto& nb = out.neighbors[static_cast<std::size_t>(i)];
        nb.reserve(static_cast<std::size_t>(k));
        for (const std::int64_t a : res.best) nb.push_back(to_point(a));
        ledgers[static_cast<std::size_t>(i)] = std::move(res.ledger);
    });
    for (auto& lg : ledgers) out.ledger.merge(lg);
    return out;
}

// Sparse variant: pulls are d-tilde draws costing two nonzero touches; the
// per-pair ceiling and denominator come from the support sizes.
inline KnnResult knn_graph(std::span<const SparseVector> data, std::int64_t k,
                           const BanditConfig& cfg, int threads = 1) {
    const std::int64_t n = static_cast<std::int64_t>(data.size());
    if (n < k + 1) throw std::invalid_argument("knn_graph: need n >= k+1");
    cfg.validate();

    KnnResult out;
    out.neighbors.resize(static_cast<std::size_t>(n));
    std::vector<EvalLedger> ledgers(static_cast<std::size_t>(n));

    detail::parallel_for(n, threads, [&](std::int64_t i) {
        const auto& self = data[static_cast<std::size_t>(i)];
        const auto to_point = [&](std::int64_t a) { return a < i ? a : a + 1; };
        BanditConfig local = cfg;
        local.seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(i));
        const auto pull = [&](std::int64_t a, Rng& rng) {
            return sparse_sample(self, data[static_cast<std::size_t>(to_point(a))], rng);
        };
        const auto exact = [&](std::int64_t a) {
            return sparse_exact(self, data[static_cast<std::size_t>(to_point(a))]);
        };
        std::vector<ArmSpec> specs;
        specs.reserve(static_cast<std::size_t>(n - 1));
        for (std::int64_t a = 0; a < n - 1; ++a) {
            const auto& other = data[static_cast<std::size_t>(to_point(a))];
            const std::int64_t denom = std::max<std::int64_t>(self.nnz() + other.nnz(), 1);
            specs.push_back(ArmSpec{sparse_max_pulls(self, other), denom, 2});
        }
        WelfordArms<decltype(pull), decltype(exact)> arms(std::move(specs), local, pull, exact);
        EngineResult res = run_best_k(arms, k, local);
        auto& nb = out.neighbors[static_cast<std::size_t>(i)];
        for (const std::int64_t a : res.best) nb.push_back(to_point(a));
        ledgers[static_cast<std::size_t>(i)] = std::move(res.ledger);
    });
    for (auto& lg : ledgers) out.ledger.merge(lg);
    return out;
}

struct Assignment {
    std::vector<int> labels;
    DenseMatrix centroids;
    double inertia = 0.0;  // exact within-cluster squared distance (diagnostic)
    EvalLedger ledger;
    int iters = 0;
};

// Assignment step: per point, a best-1 bandit over the k centroid arms.
inline Assignment assign_step(const DenseMatrix& data, const DenseMatrix& centroids,
                              const BanditConfig& cfg, int threads = 1) {
    if (centroids.rows() < 1) throw std::invalid_argument("assign_step: need k >= 1");
    if (data.cols() != centroids.cols())
        throw std::invalid_argument("assign_step: centroid dimension mismatch");
    cfg.validate();
    const std::int64_t n = data.rows();
    const std::int64_t d = data.cols();
    const std::int64_t k = centroids.rows();

    Assignment out;
    out.labels.resize(static_cast<std::size_t>(n));
    out.centroids = centroids;
    std::vector<EvalLedger> ledgers(static_cast<std::size_t>(n));

    detail::parallel_for(n, threads, [&](std::int64_t i) {
        const auto self = data.row(i);
        BanditConfig local = cfg;
        local.seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(i));
        detail::CoordSampler coords(k, d, cfg.replacement, local.seed);
        const auto pull = [&](std::int64_t c, Rng& rng) {
            const std::int64_t t = coords.next(c, rng);
            return sample_sq_coord(self, centroids.row(c), t);
        };
        const auto exact = [&](std::int64_t c) { return exact_mean(self, centroids.row(c)); };
        std::vector<ArmSpec> specs(static_cast<std::size_t>(k), ArmSpec{d, d, 1});
        WelfordArms<decltype(pull), decltype(exact)> arms(std::move(specs), local, pull, exact);
        EngineResult res = run_best_k(arms, 1, local);
        out.labels[static_cast<std::size_t>(i)] = static_cast<int>(res.best.front());
        ledgers[static_cast<std::size_t>(i)] = std::move(res.ledger);
    });
    for (auto& lg : ledgers) out.ledger.merge(lg);
    for (std::int64_t i = 0; i < n; ++i)
        out.inertia += sq_l2_distance(
            data.row(i), centroids.row(out.labels[static_cast<std::size_t>(i)]));
    return out;
}

// Lloyd iterations with the adaptive assignment step and exact centroid
// updates. Stops when labels stabilize or after max_iters update rounds;
// max_iters = 0 returns the assignment under the initial centroids.
inline Assignment lloyd(const DenseMatrix& data, std::int64_t k, int max_iters,
                        const BanditConfig& cfg, int threads = 1,
                        std::optional<DenseMatrix> init = std::nullopt) {
    const std::int64_t n = data.rows();
    if (k < 1 || k > n) throw std::invalid_argument("lloyd: need 1 <= k <= n");
    cfg.validate();

    DenseMatrix centroids;
    if (init) {
        if (init->rows() != k || init->cols() != data.cols())
            throw std::invalid_argument("lloyd: init shape mismatch");
        centroids = *init;
    } else {
        // seeded choice of k distinct points
        Rng rng(Rng::mix(cfg.seed, 0x6c6c6f7964ull));
        std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
        std::iota(ids.begin(), ids.end(), std::int64_t{0});
        rng.shuffle(ids);
        centroids = DenseMatrix(k, data.cols());
        for (std::int64_t c = 0; c < k; ++c)
            for (std::int64_t j = 0; j < data.cols(); ++j)
                centroids(c, j) = data(ids[static_cast<std::size_t>(c)], j);
    }

    BanditConfig step_cfg = cfg;
    step_cfg.seed = Rng::mix(cfg.seed, 0);
    Assignment cur = assign_step(data, centroids, step_cfg, threads);
    EvalLedger total = cur.ledger;
    for (int it = 0; it < max_iters; ++it) {
        DenseMatrix next(k, data.cols());
        std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
        for (std::int64_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::int64_t>(cur.labels[static_cast<std::size_t>(i)]);
            ++counts[static_cast<std::size_t>(c)];
            for (std::int64_t j = 0; j < data.cols(); ++j) next(c, j) += data(i, j);
        }
        for (std::int64_t c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) {
                double worst = -1.0;
                std::int64_t pick = 0;
                for (std::int64_t i = 0; i < n; ++i) {
                    const auto ci =
                        static_cast<std::int64_t>(cur.labels[static_cast<std::size_t>(i)]);
                    const double dist = sq_l2_distance(data.row(i), centroids.row(ci));
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
        centroids = std::move(next);
        step_cfg.seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(it + 1));
        Assignment stepped = assign_step(data, centroids, step_cfg, threads);
        total.merge(stepped.ledger);
        const bool stable = stepped.labels == cur.labels;
        cur = std::move(stepped);
        cur.iters = it + 1;
        if (stable) break;
    }
    cur.ledger = std::move(total);
    return cur;
}

enum class Metric {
    l1,    // sum of absolute coordinate differences
    l2sq,  // squared euclidean
    l2,    // sqrt of the mean squared distance via the delta-method wrap
};

struct MedoidResult {
    std::int64_t id = 0;
    EvalLedger ledger;
};

struct MedoidOptions {
    // |g''| bound handed to the delta-method interval in Metric::l2 mode;
    // valid while arm means stay >= (1/(4 kappa))^(2/3).
    double curvature_bound = 0.25;
};

// Medoid as a best-1 bandit over the n points; one pull is one full-row
// distance to a uniformly chosen other point, MAX_PULLS = n-1.
template <typename LogFn = decltype(detail::no_log)>
MedoidResult medoid(const DenseMatrix& data, const BanditConfig& cfg, Metric metric = Metric::l1,
                    MedoidOptions opts = {}, LogFn&& log = detail::no_log) {
    const std::int64_t n = data.rows();
    if (n < 2) throw std::invalid_argument("medoid: need n >= 2");
    cfg.validate();

    const auto row_dist = [&](std::int64_t i, std::int64_t j) {
        return metric == Metric::l1 ? l1_distance(data.row(i), data.row(j))
                                    : sq_l2_distance(data.row(i), data.row(j));
    };
    const auto pull = [&](std::int64_t i, Rng& rng) {
        std::int64_t j = rng.below(n - 1);
        if (j >= i) ++j;
        return row_dist(i, j);
    };
    const auto exact = [&](std::int64_t i) {
        double sum = 0.0;
        for (std::int64_t j = 0; j < n; ++j)
            if (j != i) sum += row_dist(i, j);
        return sum / static_cast<double>(n - 1);
    };

    SmoothWrap sqrt_wrap{[](double v) { return std::sqrt(std::max(v, 0.0)); },
                         [](double v) { return 0.5 / std::sqrt(std::max(v, 1e-12)); },
                         0.5 / std::sqrt(1e-12), opts.curvature_bound};
    std::vector<ArmSpec> specs(static_cast<std::size_t>(n), ArmSpec{n - 1, n - 1, 1});
    WelfordArms<decltype(pull), decltype(exact)> arms(
        std::move(specs), cfg, pull, exact, metric == Metric::l2 ? &sqrt_wrap : nullptr);
    EngineResult res = run_best_k(arms, 1, cfg, std::forward<LogFn>(log));
    return {res.best.front(), std::move(res.ledger)};
}

}  // namespace bandopt
