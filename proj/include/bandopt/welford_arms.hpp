#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bandopt/confidence.hpp"
#include "bandopt/config.hpp"
#include "bandopt/engine.hpp"
#include "bandopt/running_estimate.hpp"

namespace bandopt {

struct ArmSpec {
    std::int64_t max_pulls = 1;
    std::int64_t denom = 1;      // touches equivalent to one exact evaluation
    std::int64_t pull_cost = 1;  // touches per estimator step
};

// Arm source for additive estimators: each pull is an unbiased sample of the
// arm's mean, tracked by a Welford accumulator, with sub-Gaussian intervals.
// PullFn(arm, rng) -> sample; ExactFn(arm) -> exact mean. An optional
// SmoothWrap maps estimates and intervals through g (delta method).
template <typename PullFn, typename ExactFn>
class WelfordArms {
public:
    WelfordArms(std::vector<ArmSpec> specs, const BanditConfig& cfg, PullFn pull, ExactFn exact,
                const SmoothWrap* wrap = nullptr)
        : specs_(std::move(specs)),
          slots_(specs_.size()),
          mode_(cfg.sigma_mode),
          fixed_sigma_(cfg.sigma_fixed),
          log_term_(std::log(2.0 / cfg.delta)),
          wrap_(wrap),
          pull_fn_(std::move(pull)),
          exact_fn_(std::move(exact)) {}

    std::int64_t arm_count() const { return static_cast<std::int64_t>(specs_.size()); }
    std::int64_t max_pulls(std::int64_t i) const { return specs_[idx(i)].max_pulls; }
    std::int64_t eval_denom(std::int64_t i) const { return specs_[idx(i)].denom; }
    std::int64_t pulls(std::int64_t i) const { return slots_[idx(i)].est.count(); }
    std::int64_t touches(std::int64_t i) const { return slots_[idx(i)].touches; }
    bool is_exact(std::int64_t i) const { return slots_[idx(i)].exact; }
    double second_moment(std::int64_t i) const { return slots_[idx(i)].est.m2(); }

    double estimate(std::int64_t i) const {
        const Slot& s = slots_[idx(i)];
        const double v = s.exact ? s.exact_value : s.est.mean();
        return wrap_ ? wrap_->g(v) : v;
    }

    double half_width(std::int64_t i) const {
        const Slot& s = slots_[idx(i)];
        if (s.exact) return 0.0;
        // all samples identical so far: no variance information, so the arm
        // cannot certify or be certified against until it differs or falls
        // back to the exact evaluation (degenerate ties resolve there)
        if (mode_ != SigmaMode::fixed && second_moment_for(i) == 0.0)
            return std::numeric_limits<double>::infinity();
        const double sigma = resolve_sigma(i);
        const double c =
            std::sqrt(2.0 * sigma * sigma * log_term_ / static_cast<double>(s.est.count()));
        if (!wrap_) return c;
        return std::abs(wrap_->g_prime(s.est.mean())) * c +
               0.5 * wrap_->g_second_bound * c * c;
    }

    double pull(std::int64_t i, Rng& rng) {
        Slot& s = slots_[idx(i)];
        const double sample = pull_fn_(i, rng);
        const double old_m2 = s.est.m2();
        if (s.est.count() >= 1) ++pooled_dof_;
        s.est.add(sample);
        pooled_m2_ += s.est.m2() - old_m2;
        s.touches += specs_[idx(i)].pull_cost;
        return sample;
    }

    double make_exact(std::int64_t i) {
        Slot& s = slots_[idx(i)];
        s.exact_value = exact_fn_(i);
        s.exact = true;
        s.touches += specs_[idx(i)].denom;
        return wrap_ ? wrap_->g(s.exact_value) : s.exact_value;
    }

    const RunningEstimate& running(std::int64_t i) const { return slots_[idx(i)].est; }

private:
    struct Slot {
        RunningEstimate est;
        std::int64_t touches = 0;
        bool exact = false;
        double exact_value = 0.0;
    };

    static std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

    double second_moment_for(std::int64_t i) const {
        return mode_ == SigmaMode::global ? pooled_m2_ : slots_[idx(i)].est.m2();
    }

    double resolve_sigma(std::int64_t i) const {
        constexpr double floor = 1e-12;
        switch (mode_) {
            case SigmaMode::fixed:
                return fixed_sigma_;
            case SigmaMode::global: {
                const double dof = static_cast<double>(pooled_dof_ > 0 ? pooled_dof_ : 1);
                const double s = std::sqrt(std::max(pooled_m2_, 0.0) / dof);
                return s > floor ? s : floor;
            }
            case SigmaMode::per_arm:
            default: {
                const double s = slots_[idx(i)].est.sigma_hat();
                return s > floor ? s : floor;
            }
        }
    }

    std::vector<ArmSpec> specs_;
    std::vector<Slot> slots_;
    SigmaMode mode_;
    double fixed_sigma_;
    double log_term_;
    double pooled_m2_ = 0.0;
    std::int64_t pooled_dof_ = 0;
    const SmoothWrap* wrap_;
    PullFn pull_fn_;
    ExactFn exact_fn_;
};

// Convenience form of the spec'd operation: build a Welford arm set from
// uniform specs and run best-k with the supplied callbacks.
template <typename PullFn, typename ExactFn>
EngineResult run_best_k(std::int64_t n_arms, ArmSpec spec, std::int64_t k,
                        const BanditConfig& cfg, PullFn&& pull, ExactFn&& exact) {
    std::vector<ArmSpec> specs(static_cast<std::size_t>(n_arms), spec);
    WelfordArms<std::decay_t<PullFn>, std::decay_t<ExactFn>> arms(
        std::move(specs), cfg, std::forward<PullFn>(pull), std::forward<ExactFn>(exact));
    return run_best_k(arms, k, cfg);
}

}  // namespace bandopt
