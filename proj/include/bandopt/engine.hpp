#pragma once

#include <cassert>
#include <concepts>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "bandopt/confidence.hpp"
#include "bandopt/config.hpp"
#include "bandopt/ledger.hpp"
#include "bandopt/rng.hpp"
#include "bandopt/running_estimate.hpp"

namespace bandopt {

// Snapshot of one arm after a run.
struct ArmState {
    std::int64_t id = 0;
    std::int64_t pulls = 0;
    double mean = 0.0;
    double m2 = 0.0;
    bool exact = false;
    std::int64_t max_pulls = 0;
};

// What the engine needs from an application's arm set. pull() advances the
// arm's estimator by one step and returns the sample; make_exact() switches
// the arm to its brute-force value (zero-width interval). The source owns
// pull counts and touch accounting so state can persist across runs (used by
// the hierarchical clustering carry-over).
template <typename S>
concept ArmSource = requires(S s, const S cs, std::int64_t i, Rng& rng) {
    { cs.arm_count() } -> std::convertible_to<std::int64_t>;
    { cs.max_pulls(i) } -> std::convertible_to<std::int64_t>;
    { cs.eval_denom(i) } -> std::convertible_to<std::int64_t>;
    { cs.pulls(i) } -> std::convertible_to<std::int64_t>;
    { cs.touches(i) } -> std::convertible_to<std::int64_t>;
    { cs.is_exact(i) } -> std::convertible_to<bool>;
    { cs.estimate(i) } -> std::convertible_to<double>;
    { cs.half_width(i) } -> std::convertible_to<double>;
    { cs.second_moment(i) } -> std::convertible_to<double>;
    { s.pull(i, rng) } -> std::convertible_to<double>;
    { s.make_exact(i) } -> std::convertible_to<double>;
};

// One line per engine event for replay checks; exact evaluations and
// emissions log sample = the arm's value.
struct PullRecord {
    enum class Kind { pull, exact_eval, emit };
    std::int64_t step = 0;
    std::int64_t arm = 0;
    double sample = 0.0;
    double lcb = 0.0;
    double ucb = 0.0;
    Kind kind = Kind::pull;
};

struct EngineResult {
    std::vector<std::int64_t> best;     // certified arm ids, best first
    std::vector<ArmState> arms;         // final state per arm index
    std::vector<std::int64_t> touches;  // raw touches per arm index
    EvalLedger ledger;
    std::int64_t total_pulls = 0;       // estimator steps this run
};

namespace detail {

inline void no_log(const PullRecord&) {}

// Selection key and certification value under the configured objective.
// Minimize: select by least LCB, certify when UCB beats the rest's LCBs.
// Maximize is the mirror image (negate and swap bounds).
template <ArmSource S>
inline double sel_key(const S& src, std::int64_t i, Objective obj) {
    const double m = src.estimate(i);
    const double h = src.half_width(i);
    return obj == Objective::minimize ? m - h : -(m + h);
}

template <ArmSource S>
inline double cert_val(const S& src, std::int64_t i, Objective obj) {
    const double m = src.estimate(i);
    const double h = src.half_width(i);
    return obj == Objective::minimize ? m + h : -(m - h);
}

}  // namespace detail

// Generic best-k identification (modified UCB with exact-evaluation
// fallback). Arms are pulled in least-LCB-first order; an arm is emitted
// once its upper bound beats the lower bound of every arm still under
// consideration. Arms pulled max_pulls times are evaluated exactly and get
// zero-width intervals. With epsilon > 0 the current best arm is also
// emitted as soon as its interval width drops below epsilon times its
// optimistic bound ((1+epsilon)-approximate mode).
template <ArmSource S, typename LogFn = decltype(detail::no_log)>
EngineResult run_best_k(S& src, std::int64_t k, const BanditConfig& cfg,
                        LogFn&& log = detail::no_log) {
    cfg.validate();
    const std::int64_t m = src.arm_count();
    if (k < 1 || k > m) throw std::invalid_argument("run_best_k: need 1 <= k <= #arms");

    Rng rng(cfg.seed);
    EngineResult res;
    res.best.reserve(static_cast<std::size_t>(k));
    std::int64_t step = 0;

    const auto advance = [&](std::int64_t i) {
        PullRecord rec;
        rec.arm = i;
        if (src.pulls(i) < src.max_pulls(i)) {
            rec.sample = src.pull(i, rng);
            ++res.total_pulls;
        } else {
            rec.sample = src.make_exact(i);
            rec.kind = PullRecord::Kind::exact_eval;
        }
        rec.step = step++;
        const double est = src.estimate(i);
        const double h = src.half_width(i);
        rec.lcb = est - h;
        rec.ucb = est + h;
        log(rec);
    };

    // Warm-up: bring every arm to warmup pulls (arms that cannot afford that
    // many go straight to the exact fallback). Pre-warmed arms from a
    // persistent source are left alone.
    const std::int64_t warmup = cfg.effective_warmup(m);
    for (std::int64_t i = 0; i < m; ++i) {
        while (!src.is_exact(i) && src.pulls(i) < warmup) {
            advance(i);
            if (src.pulls(i) >= src.max_pulls(i) && !src.is_exact(i)) advance(i);  // exactify
        }
    }

    // Lazy priority queue over selection keys; stale entries are skipped via
    // per-arm version stamps.
    struct Entry {
        double key;
        std::int64_t id;
        std::uint32_t version;
        bool operator>(const Entry& o) const {
            if (key != o.key) return key > o.key;
            return id > o.id;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    std::vector<std::uint32_t> version(static_cast<std::size_t>(m), 0);
    std::vector<char> active(static_cast<std::size_t>(m), 1);
    std::int64_t n_active = m;

    const auto push = [&](std::int64_t i) {
        pq.push({detail::sel_key(src, i, cfg.objective), i, version[static_cast<std::size_t>(i)]});
    };
    for (std::int64_t i = 0; i < m; ++i) push(i);

    const auto pop_valid = [&]() -> std::int64_t {
        while (!pq.empty()) {
            const Entry e = pq.top();
            if (!active[static_cast<std::size_t>(e.id)] ||
                e.version != version[static_cast<std::size_t>(e.id)]) {
                pq.pop();
                continue;
            }
            pq.pop();
            return e.id;
        }
        return -1;
    };

    const auto peek_valid = [&]() -> std::int64_t {
        while (!pq.empty()) {
            const Entry e = pq.top();
            if (!active[static_cast<std::size_t>(e.id)] ||
                e.version != version[static_cast<std::size_t>(e.id)]) {
                pq.pop();
                continue;
            }
            return e.id;
        }
        return -1;
    };

    // Equal-bound certification: allowed only when every contender tied at
    // the boundary is exact and has a higher id (deterministic resolution of
    // degenerate fixtures; strict inequality is the normal path).
    const auto tie_ok = [&](std::int64_t a, double boundary) {
        if (!src.is_exact(a)) return false;
        for (std::int64_t i = 0; i < m; ++i) {
            if (i == a || !active[static_cast<std::size_t>(i)]) continue;
            if (detail::sel_key(src, i, cfg.objective) == boundary) {
                if (!src.is_exact(i) || i < a) return false;
            }
        }
        return true;
    };

    const auto emit = [&](std::int64_t a) {
        res.best.push_back(a);
        active[static_cast<std::size_t>(a)] = 0;
        --n_active;
        PullRecord rec;
        rec.step = step++;
        rec.arm = a;
        rec.sample = src.estimate(a);
        const double h = src.half_width(a);
        rec.lcb = rec.sample - h;
        rec.ucb = rec.sample + h;
        rec.kind = PullRecord::Kind::emit;
        log(rec);
    };

    while (static_cast<std::int64_t>(res.best.size()) < k) {
        const std::int64_t a = pop_valid();
        assert(a >= 0);
        if (n_active == 1) {  // no contenders left
            emit(a);
            continue;
        }
        const std::int64_t b = peek_valid();
        const double rest_best = detail::sel_key(src, b, cfg.objective);
        const double a_val = detail::cert_val(src, a, cfg.objective);
        if (a_val < rest_best || (a_val == rest_best && tie_ok(a, a_val))) {
            emit(a);
            continue;
        }
        if (cfg.epsilon > 0.0) {
            const double est = src.estimate(a);
            const double h = src.half_width(a);
            const double guard = cfg.objective == Objective::minimize
                                     ? std::abs(est + h)
                                     : std::abs(est - h);
            if (std::isfinite(h) && 2.0 * h <= cfg.epsilon * guard) {
                emit(a);
                continue;
            }
        }
        // Not separable yet: advance the selected arm, or the best non-exact
        // arm when the selected one is already exact (progress on ties).
        std::int64_t target = a;
        if (src.is_exact(a)) {
            target = -1;
            double best_key = std::numeric_limits<double>::infinity();
            for (std::int64_t i = 0; i < m; ++i) {
                if (!active[static_cast<std::size_t>(i)] || src.is_exact(i)) continue;
                const double kk = detail::sel_key(src, i, cfg.objective);
                if (kk < best_key) {
                    best_key = kk;
                    target = i;
                }
            }
            if (target < 0)
                throw std::logic_error("run_best_k: all arms exact but none certifiable");
        }
        advance(target);
        if (src.pulls(target) >= src.max_pulls(target) && !src.is_exact(target)) advance(target);
        ++version[static_cast<std::size_t>(target)];
        push(target);
        if (target != a) push(a);  // a's entry was consumed but a is unchanged
    }

    res.arms.reserve(static_cast<std::size_t>(m));
    res.touches.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        res.arms.push_back({i, src.pulls(i), src.estimate(i), src.second_moment(i),
                            src.is_exact(i), src.max_pulls(i)});
        const std::int64_t t = src.touches(i);
        res.touches.push_back(t);
        res.ledger.add_pair(t, src.eval_denom(i), src.is_exact(i));
    }
    return res;
}

// Single-arm (1+epsilon)-approximate variant; epsilon == 0 reduces to
// run_best_k with k = 1.
template <ArmSource S, typename LogFn = decltype(detail::no_log)>
EngineResult run_best_approx(S& src, const BanditConfig& cfg, LogFn&& log = detail::no_log) {
    return run_best_k(src, 1, cfg, std::forward<LogFn>(log));
}

// Standalone selection rule: least LCB under minimize, greatest UCB under
// maximize, ties to the lowest arm id.
inline std::int64_t select_next(std::span<const ConfidenceBound> bounds, Objective obj) {
    if (bounds.empty()) throw std::logic_error("select_next: no active arms");
    std::int64_t best = 0;
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(bounds.size()); ++i) {
        const double cur = obj == Objective::minimize ? bounds[static_cast<std::size_t>(i)].lcb
                                                      : -bounds[static_cast<std::size_t>(i)].ucb;
        const double so_far = obj == Objective::minimize
                                  ? bounds[static_cast<std::size_t>(best)].lcb
                                  : -bounds[static_cast<std::size_t>(best)].ucb;
        if (cur < so_far) best = i;
    }
    return best;
}

}  // namespace bandopt
