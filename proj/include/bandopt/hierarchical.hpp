#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bandopt/config.hpp"
#include "bandopt/dendrogram.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/engine.hpp"
#include "bandopt/ledger.hpp"
#include "bandopt/welford_arms.hpp"

namespace bandopt {

// Unordered cluster pair, stored (low, high).
using ClusterPair = std::pair<std::int64_t, std::int64_t>;

inline ClusterPair make_pair_key(std::int64_t a, std::int64_t b) {
    return a < b ? ClusterPair{a, b} : ClusterPair{b, a};
}

struct ArmSetDelta {
    std::vector<ClusterPair> deleted;
    std::vector<ClusterPair> added;
};

// Arm algebra of one merge: every arm touching the winner's clusters leaves
// the system, and the merged cluster is paired with each survivor. With
// n-t+1 clusters in play this deletes 2(n-t)-1 arms and adds n-t-1.
inline ArmSetDelta arm_set_update(std::span<const ClusterPair> active_arms, ClusterPair winner,
                                  std::int64_t new_id) {
    bool winner_active = false;
    for (const auto& arm : active_arms)
        if (arm == winner) {
            winner_active = true;
            break;
        }
    if (!winner_active) throw std::logic_error("arm_set_update: winner is not an active arm");

    ArmSetDelta delta;
    std::vector<std::int64_t> survivors;
    for (const auto& arm : active_arms) {
        const bool touches_winner = arm.first == winner.first || arm.first == winner.second ||
                                    arm.second == winner.first || arm.second == winner.second;
        if (touches_winner) delta.deleted.push_back(arm);
        survivors.push_back(arm.first);
        survivors.push_back(arm.second);
    }
    std::sort(survivors.begin(), survivors.end());
    survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
    std::erase_if(survivors,
                  [&](std::int64_t c) { return c == winner.first || c == winner.second; });
    delta.added.reserve(survivors.size());
    for (const std::int64_t c : survivors) delta.added.push_back(make_pair_key(new_id, c));
    return delta;
}

// One sample of a cluster-pair arm: random point from each cluster, random
// coordinate, squared difference. Its expectation is the average-linkage
// squared distance divided by d.
inline double pair_sample(const DenseMatrix& data, std::span<const std::int64_t> cluster_a,
                          std::span<const std::int64_t> cluster_b, Rng& rng) {
    if (cluster_a.empty() || cluster_b.empty())
        throw std::invalid_argument("pair_sample: empty cluster");
    const std::int64_t xi = rng.below(static_cast<std::int64_t>(cluster_a.size()));
    const std::int64_t yi = rng.below(static_cast<std::int64_t>(cluster_b.size()));
    const std::int64_t t = rng.below(data.cols());
    return sample_sq_coord(data.row(cluster_a[static_cast<std::size_t>(xi)]),
                           data.row(cluster_b[static_cast<std::size_t>(yi)]), t);
}

struct HierOptions {
    // Seed fresh arms from the deleted pair's pooled samples instead of
    // starting cold (justified by the convex-combination identity).
    bool pooled_init = false;
};

struct HierResult {
    Dendrogram tree;
    EvalLedger ledger;
};

namespace detail {

struct PairArm {
    RunningEstimate est;
    std::int64_t touches = 0;
    std::int64_t max_pulls = 1;  // d * |C| * |C'|
    bool exact = false;
    double exact_value = 0.0;
    bool paid_exact = false;  // false when exactness was inherited by pooling
};

// Engine view over the persistent arm pool for one merge step.
class HierSource {
public:
    HierSource(const DenseMatrix& data, const std::vector<std::vector<std::int64_t>>& members,
               std::vector<ClusterPair> keys, std::vector<PairArm*> arms,
               const BanditConfig& cfg)
        : data_(data),
          members_(members),
          keys_(std::move(keys)),
          arms_(std::move(arms)),
          log_term_(std::log(2.0 / cfg.delta)),
          fixed_sigma_(cfg.sigma_mode == SigmaMode::fixed ? cfg.sigma_fixed : -1.0) {}

    std::int64_t arm_count() const { return static_cast<std::int64_t>(arms_.size()); }
    std::int64_t max_pulls(std::int64_t i) const { return arms_[idx(i)]->max_pulls; }
    std::int64_t eval_denom(std::int64_t i) const { return arms_[idx(i)]->max_pulls; }
    std::int64_t pulls(std::int64_t i) const { return arms_[idx(i)]->est.count(); }
    std::int64_t touches(std::int64_t i) const { return arms_[idx(i)]->touches; }
    bool is_exact(std::int64_t i) const { return arms_[idx(i)]->exact; }
    double second_moment(std::int64_t i) const { return arms_[idx(i)]->est.m2(); }

    double estimate(std::int64_t i) const {
        const PairArm& a = *arms_[idx(i)];
        return a.exact ? a.exact_value : a.est.mean();
    }

    double half_width(std::int64_t i) const {
        const PairArm& a = *arms_[idx(i)];
        if (a.exact) return 0.0;
        if (fixed_sigma_ <= 0.0 && a.est.m2() == 0.0)
            return std::numeric_limits<double>::infinity();
        constexpr double floor = 1e-12;
        const double sigma =
            fixed_sigma_ > 0.0 ? fixed_sigma_ : std::max(a.est.sigma_hat(), floor);
        return std::sqrt(2.0 * sigma * sigma * log_term_ / static_cast<double>(a.est.count()));
    }

    double pull(std::int64_t i, Rng& rng) {
        PairArm& a = *arms_[idx(i)];
        const double sample =
            pair_sample(data_, members_[static_cast<std::size_t>(keys_[idx(i)].first)],
                        members_[static_cast<std::size_t>(keys_[idx(i)].second)], rng);
        a.est.add(sample);
        a.touches += 1;
        return sample;
    }

    double make_exact(std::int64_t i) {
        PairArm& a = *arms_[idx(i)];
        const auto& ca = members_[static_cast<std::size_t>(keys_[idx(i)].first)];
        const auto& cb = members_[static_cast<std::size_t>(keys_[idx(i)].second)];
        double sum = 0.0;
        for (const std::int64_t x : ca)
            for (const std::int64_t y : cb) sum += exact_mean(data_.row(x), data_.row(y));
        a.exact_value = sum / static_cast<double>(ca.size() * cb.size());
        a.exact = true;
        a.paid_exact = true;
        a.touches += a.max_pulls;
        return a.exact_value;
    }

private:
    static std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

    const DenseMatrix& data_;
    const std::vector<std::vector<std::int64_t>>& members_;
    std::vector<ClusterPair> keys_;
    std::vector<PairArm*> arms_;
    double log_term_;
    double fixed_sigma_;
};

}  // namespace detail

// Average-linkage agglomeration with a best-1 bandit per merge step and arm
// estimates carried across steps. Arm set evolution follows arm_set_update;
// the recorded merge value is the winning arm's current estimate, exact only
// when that arm hit its ceiling. Merge ties resolve to the lexicographically
// lowest cluster pair.
inline HierResult cluster(const DenseMatrix& data, const BanditConfig& cfg,
                          HierOptions opts = {}) {
    const std::int64_t n = data.rows();
    if (n < 2) throw std::invalid_argument("cluster: need n >= 2");
    cfg.validate();
    const std::int64_t d = data.cols();

    std::vector<std::vector<std::int64_t>> members(static_cast<std::size_t>(2 * n - 1));
    for (std::int64_t i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = {i};

    std::map<ClusterPair, detail::PairArm> pool;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) pool[{i, j}].max_pulls = d;

    HierResult out;
    out.tree.n_leaves = n;

    for (std::int64_t t = 0; t < n - 1; ++t) {
        std::vector<ClusterPair> keys;
        std::vector<detail::PairArm*> arms;
        keys.reserve(pool.size());
        arms.reserve(pool.size());
        for (auto& [key, arm] : pool) {
            keys.push_back(key);
            arms.push_back(&arm);
        }
        BanditConfig step_cfg = cfg;
        step_cfg.seed = Rng::mix(cfg.seed, static_cast<std::uint64_t>(t));
        detail::HierSource src(data, members, keys, std::move(arms), step_cfg);
        EngineResult res = run_best_k(src, 1, step_cfg);

        const ClusterPair winner = keys[static_cast<std::size_t>(res.best.front())];
        const detail::PairArm& won = pool.at(winner);
        const std::int64_t new_id = n + t;
        out.tree.merges.push_back({winner.first, winner.second, new_id,
                                   won.exact ? won.exact_value : won.est.mean(), won.exact});

        const ArmSetDelta delta = arm_set_update(keys, winner, new_id);
        for (const auto& key : delta.deleted) {
            const detail::PairArm& a = pool.at(key);
            out.ledger.add_pair(a.touches, a.max_pulls, a.paid_exact, /*keep_detail=*/false);
        }
        const std::int64_t merged_size =
            static_cast<std::int64_t>(members[static_cast<std::size_t>(winner.first)].size() +
                                      members[static_cast<std::size_t>(winner.second)].size());
        for (const auto& key : delta.added) {
            const std::int64_t other = key.first == new_id ? key.second : key.first;
            detail::PairArm fresh;
            fresh.max_pulls =
                d * merged_size *
                static_cast<std::int64_t>(members[static_cast<std::size_t>(other)].size());
            if (opts.pooled_init) {
                const detail::PairArm& pa = pool.at(make_pair_key(winner.first, other));
                const detail::PairArm& pb = pool.at(make_pair_key(winner.second, other));
                fresh.est = RunningEstimate::merged(pa.est, pb.est);
                if (pa.exact && pb.exact) {
                    const auto wa = static_cast<double>(
                        members[static_cast<std::size_t>(winner.first)].size());
                    const auto wb = static_cast<double>(
                        members[static_cast<std::size_t>(winner.second)].size());
                    fresh.exact = true;
                    fresh.exact_value = (wa * pa.exact_value + wb * pb.exact_value) / (wa + wb);
                }
            }
            pool[key] = fresh;
        }
        for (const auto& key : delta.deleted) pool.erase(key);

        auto& merged = members[static_cast<std::size_t>(new_id)];
        merged = members[static_cast<std::size_t>(winner.first)];
        merged.insert(merged.end(), members[static_cast<std::size_t>(winner.second)].begin(),
                      members[static_cast<std::size_t>(winner.second)].end());
    }
    return out;
}

}  // namespace bandopt
