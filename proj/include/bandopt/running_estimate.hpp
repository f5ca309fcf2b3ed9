#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace bandopt {

// Running mean / second-moment accumulator (Welford). One instance per arm;
// the engine reads mean() for the estimate and sigma_hat() for the
// confidence-interval scale.
class RunningEstimate {
public:
    // O(1) incremental update: mean after l updates equals the batch mean of
    // all samples seen so far.
    void add(double sample) {
        ++count_;
        const double delta = sample - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (sample - mean_);
    }

    std::int64_t count() const { return count_; }
    double mean() const { return mean_; }
    double m2() const { return m2_; }

    // sqrt(m2 / max(l-1, 1)); zero until two samples disagree
    double sigma_hat() const {
        const auto dof = std::max<std::int64_t>(count_ - 1, 1);
        return std::sqrt(std::max(m2_, 0.0) / static_cast<double>(dof));
    }

    // Pool two estimates as if their sample streams were concatenated
    // (Chan et al. parallel-variance combination). Used by the hierarchical
    // pooled-init mode.
    static RunningEstimate merged(const RunningEstimate& a, const RunningEstimate& b) {
        RunningEstimate out;
        out.count_ = a.count_ + b.count_;
        if (out.count_ == 0) return out;
        const double na = static_cast<double>(a.count_);
        const double nb = static_cast<double>(b.count_);
        const double delta = b.mean_ - a.mean_;
        out.mean_ = a.mean_ + delta * nb / (na + nb);
        out.m2_ = a.m2_ + b.m2_ + delta * delta * na * nb / (na + nb);
        return out;
    }

private:
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace bandopt
