#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "bandopt/confidence.hpp"
#include "bandopt/config.hpp"
#include "bandopt/dense.hpp"
#include "bandopt/engine.hpp"
#include "bandopt/mmi_estimator.hpp"

namespace bandopt {

// Arm source for maximum-mutual-information feature selection: arm i is
// feature column i, a pull consumes one more data row (without replacement,
// in a per-arm seeded order) and updates the incremental estimator. An arm
// that exhausts all n rows is exact: its estimate is the full-data value.
// Confidence intervals are the CLT plug-in z_{1-delta/2} * s / sqrt(l).
class MmiArms {
public:
    MmiArms(const DenseMatrix& x, std::span<const double> y, const BanditConfig& cfg,
            MmiOptions opts = {})
        : x_(x),
          y_(y),
          opts_(opts),
          z_crit_(normal_quantile(1.0 - cfg.delta / 2.0)),
          seed_(cfg.seed),
          states_(static_cast<std::size_t>(x.cols()), MIArmState(opts)),
          perm_pos_(static_cast<std::size_t>(x.cols()), 0),
          perms_(static_cast<std::size_t>(x.cols())),
          exact_(static_cast<std::size_t>(x.cols()), 0) {}

    std::int64_t arm_count() const { return x_.cols(); }
    std::int64_t max_pulls(std::int64_t) const { return x_.rows(); }
    std::int64_t eval_denom(std::int64_t) const { return x_.rows(); }
    std::int64_t pulls(std::int64_t i) const { return states_[idx(i)].count(); }
    std::int64_t touches(std::int64_t i) const { return states_[idx(i)].count(); }
    bool is_exact(std::int64_t i) const { return exact_[idx(i)] != 0; }
    double second_moment(std::int64_t) const { return 0.0; }

    double estimate(std::int64_t i) const {
        const auto& st = states_[idx(i)];
        return st.count() < 2 ? 0.0 : st.mi();
    }

    double half_width(std::int64_t i) const {
        const auto& st = states_[idx(i)];
        if (is_exact(i)) return 0.0;
        // at l = 2 the two contributions are identical by construction
        // (mutual nearest neighbors), so the spread is informative only
        // from three rows on
        if (st.count() < 3) return std::numeric_limits<double>::infinity();
        return z_crit_ * st.contribution_std() / std::sqrt(static_cast<double>(st.count()));
    }

    double pull(std::int64_t i, Rng&) {
        consume(i);
        if (states_[idx(i)].count() >= max_pulls(i)) exact_[idx(i)] = 1;
        return estimate(i);
    }

    double make_exact(std::int64_t i) {
        while (states_[idx(i)].count() < max_pulls(i)) consume(i);
        exact_[idx(i)] = 1;
        return estimate(i);
    }

    const MIArmState& state(std::int64_t i) const { return states_[idx(i)]; }

private:
    static std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

    // Rows arrive in a per-arm seeded shuffle so a feature's sample sequence
    // does not depend on how pulls interleave across arms.
    void consume(std::int64_t i) {
        auto& perm = perms_[idx(i)];
        if (perm.empty()) {
            perm.resize(static_cast<std::size_t>(x_.rows()));
            std::iota(perm.begin(), perm.end(), std::int64_t{0});
            Rng arm_rng(Rng::mix(seed_, static_cast<std::uint64_t>(i)));
            arm_rng.shuffle(perm);
        }
        auto& pos = perm_pos_[idx(i)];
        if (pos >= x_.rows()) throw std::logic_error("MmiArms: rows exhausted");
        const std::int64_t r = perm[static_cast<std::size_t>(pos++)];
        states_[idx(i)].add_row(r, x_(r, i), y_[static_cast<std::size_t>(r)]);
    }

    const DenseMatrix& x_;
    std::span<const double> y_;
    MmiOptions opts_;
    double z_crit_;
    std::uint64_t seed_;
    std::vector<MIArmState> states_;
    std::vector<std::int64_t> perm_pos_;
    std::vector<std::vector<std::int64_t>> perms_;
    std::vector<char> exact_;
};

struct MmiResult {
    std::int64_t feature = 0;
    EvalLedger ledger;
    std::vector<double> final_mi;        // per feature, NaN below 2 rows
    std::vector<std::int64_t> rows_used; // per feature
};

// Best-1 maximize bandit over the d feature arms.
inline MmiResult select_feature(const DenseMatrix& x, std::span<const double> y,
                                const BanditConfig& cfg, MmiOptions opts = {}) {
    if (x.cols() < 1 || x.rows() < 2) throw std::invalid_argument("select_feature: empty data");
    if (x.rows() != static_cast<std::int64_t>(y.size()))
        throw std::invalid_argument("select_feature: target length mismatch");
    const double first = y.front();
    bool constant = true;
    for (const double v : y)
        if (v != first) {
            constant = false;
            break;
        }
    if (constant)
        throw std::invalid_argument(
            "select_feature: target is constant, mutual information is degenerate for every "
            "feature");

    BanditConfig run_cfg = cfg;
    run_cfg.objective = Objective::maximize;
    run_cfg.warmup_pulls =
        std::min<std::int64_t>(std::max<std::int64_t>(3, cfg.effective_warmup(x.cols())), x.rows());

    MmiArms arms(x, y, run_cfg, opts);
    EngineResult er = run_best_k(arms, 1, run_cfg);

    MmiResult out;
    out.feature = er.best.front();
    out.ledger = std::move(er.ledger);
    out.final_mi.reserve(static_cast<std::size_t>(x.cols()));
    out.rows_used.reserve(static_cast<std::size_t>(x.cols()));
    for (std::int64_t i = 0; i < x.cols(); ++i) {
        const auto& st = arms.state(i);
        out.final_mi.push_back(st.count() >= 2 ? st.mi()
                                               : std::numeric_limits<double>::quiet_NaN());
        out.rows_used.push_back(st.count());
    }
    return out;
}

}  // namespace bandopt
