#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace bandopt {

enum class SigmaMode { per_arm, global, fixed };
enum class Replacement { with_replacement, without_replacement };
enum class Objective { minimize, maximize };

struct BanditConfig {
    double delta = 0.01;       // CI failure probability, in (0,1)
    double epsilon = 0.0;      // 0 = exact best-k; >0 enables the approximate stop
    std::optional<std::int64_t> warmup_pulls;  // unset = ceil(log2(#arms)), min 1
    SigmaMode sigma_mode = SigmaMode::per_arm;
    double sigma_fixed = 1.0;  // used only with SigmaMode::fixed
    Replacement replacement = Replacement::with_replacement;
    std::uint64_t seed = 0;
    Objective objective = Objective::minimize;

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta outside (0,1)");
        if (epsilon < 0.0) throw std::invalid_argument("epsilon < 0");
        if (warmup_pulls && *warmup_pulls < 1) throw std::invalid_argument("warmup_pulls < 1");
        if (sigma_mode == SigmaMode::fixed && !(sigma_fixed > 0.0))
            throw std::invalid_argument("fixed sigma must be > 0");
    }

    // ceil(log2(#arms)) estimator steps per arm, but at least 2 so the
    // per-arm sigma estimate has a degree of freedom before any selection.
    std::int64_t effective_warmup(std::int64_t n_arms) const {
        if (warmup_pulls) return *warmup_pulls;
        if (n_arms <= 1) return 1;
        const auto w = static_cast<std::int64_t>(
            std::ceil(std::log2(static_cast<double>(n_arms))));
        return w < 2 ? 2 : w;
    }
};

// delta = 2/(n^3 d), the theory setting; the experimental default is 0.01.
inline double theory_delta(std::int64_t n, std::int64_t d) {
    const double nn = static_cast<double>(n);
    return 2.0 / (nn * nn * nn * static_cast<double>(d));
}

}  // namespace bandopt
