#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace bandopt {

// Effective-evaluation accounting. Each arm stands for one pair of objects
// whose exact evaluation costs `denom` elementary touches (coordinates for
// dense pairs, nonzeros for sparse pairs, rows for sample-based arms) and
// counts as exactly 1 effective evaluation. A partially sampled pair counts
// the capped fraction touches/denom, so effective_total never exceeds the
// brute-force total of pairs * 1.
struct PairCost {
    std::int64_t touches = 0;
    std::int64_t denom = 1;
};

struct EvalLedger {
    std::int64_t coord_touches = 0;   // raw elementary evaluations
    double effective_total = 0.0;     // sum over pairs of min(1, touches/denom)
    std::int64_t pairs = 0;           // pairs accounted; brute force = pairs * 1
    std::int64_t exact_evals = 0;     // exact-fallback count
    std::vector<PairCost> detail;     // per-pair costs (single-bandit runs only)

    void add_pair(std::int64_t touches, std::int64_t denom, bool exact, bool keep_detail = true) {
        coord_touches += touches;
        effective_total += std::min(1.0, static_cast<double>(touches) / static_cast<double>(denom));
        pairs += 1;
        if (exact) exact_evals += 1;
        if (keep_detail) detail.push_back({touches, denom});
    }

    // Fold another ledger into this one; per-pair detail is dropped on merge
    // (aggregates over many bandits keep totals only).
    void merge(const EvalLedger& other) {
        coord_touches += other.coord_touches;
        effective_total += other.effective_total;
        pairs += other.pairs;
        exact_evals += other.exact_evals;
        detail.clear();
        detail.shrink_to_fit();
    }

    // brute-force cost over adaptive cost, in effective evaluations
    double gain() const {
        if (effective_total <= 0.0) return 0.0;
        return static_cast<double>(pairs) / effective_total;
    }
};

}  // namespace bandopt
