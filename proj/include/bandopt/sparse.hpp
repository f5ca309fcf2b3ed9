#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bandopt/rng.hpp"

namespace bandopt {

// Sparse vector as a value list plus coordinate->slot dictionary, giving
// O(1) membership probes and O(1) uniform sampling of nonzero coordinates.
class SparseVector {
public:
    SparseVector() = default;

    // Zero-valued entries are dropped (a zeroed coordinate is absent);
    // duplicates and out-of-range coordinates are rejected.
    static SparseVector from_pairs(std::int64_t dim,
                                   const std::vector<std::pair<std::int64_t, double>>& pairs) {
        SparseVector v;
        v.dim_ = dim;
        for (const auto& [coord, value] : pairs) {
            if (coord < 0 || coord >= dim)
                throw std::invalid_argument("SparseVector: coordinate out of range");
            if (value == 0.0) continue;
            if (v.index_.count(coord)) throw std::invalid_argument("SparseVector: duplicate coordinate");
            v.index_.emplace(coord, static_cast<std::int64_t>(v.entries_.size()));
            v.entries_.emplace_back(coord, value);
        }
        return v;
    }

    std::int64_t dim() const { return dim_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(entries_.size()); }

    // (present, value); absent coordinates read as zero
    std::pair<bool, double> membership(std::int64_t t) const {
        if (t < 0 || t >= dim_) throw std::invalid_argument("SparseVector: coordinate out of range");
        const auto it = index_.find(t);
        if (it == index_.end()) return {false, 0.0};
        return {true, entries_[static_cast<std::size_t>(it->second)].second};
    }

    std::int64_t sample_nonzero(Rng& rng) const {
        if (entries_.empty()) throw std::invalid_argument("SparseVector: sampling an all-zero vector");
        return entries_[static_cast<std::size_t>(rng.below(nnz()))].first;
    }

    const std::pair<std::int64_t, double>& entry(std::int64_t slot) const {
        return entries_[static_cast<std::size_t>(slot)];
    }

private:
    std::int64_t dim_ = 0;
    std::vector<std::pair<std::int64_t, double>> entries_;
    std::unordered_map<std::int64_t, std::int64_t> index_;
};

// Operation counts of one estimator draw, for the O(1)-cost checks.
struct SparseSampleTrace {
    std::int64_t probes = 0;
    std::int64_t draws = 0;
};

namespace detail {

// One side of d-tilde: the sampled entry (t, v) comes from `own`'s support;
// the only dictionary work is the membership probe against `other`. The
// indicator doubles the term when t is absent from `other`, and when `own`
// is the only nonempty vector that doubling is exactly what keeps the
// one-sided estimator unbiased for the union sum.
inline double sparse_term(const SparseVector& own, const SparseVector& other, std::int64_t t,
                          double v, SparseSampleTrace* trace) {
    const auto [present, other_v] = other.membership(t);
    if (trace) ++trace->probes;
    const double diff = v - other_v;
    const double scale = static_cast<double>(own.nnz()) / (2.0 * static_cast<double>(own.dim()));
    return scale * diff * diff * (present ? 1.0 : 2.0);
}

}  // namespace detail

// d-tilde evaluated at given sampled coordinates (t0 from x0's support, t1
// from x1's support; pass -1 for an empty side). Deterministic core shared
// by the random draw and the exhaustive-enumeration tests.
inline double sparse_sample_at(const SparseVector& x0, const SparseVector& x1, std::int64_t t0,
                               std::int64_t t1, SparseSampleTrace* trace = nullptr) {
    double total = 0.0;
    if (t0 >= 0) total += detail::sparse_term(x0, x1, t0, x0.membership(t0).second, trace);
    if (t1 >= 0) total += detail::sparse_term(x1, x0, t1, x1.membership(t1).second, trace);
    return total;
}

// One draw of the sparse squared-distance estimator: two uniform nonzero
// draws and two membership probes, never touching the support union.
inline double sparse_sample(const SparseVector& x0, const SparseVector& x1, Rng& rng,
                            SparseSampleTrace* trace = nullptr) {
    if (x0.dim() != x1.dim()) throw std::invalid_argument("sparse_sample: dimension mismatch");
    if (x0.nnz() == 0 && x1.nnz() == 0) return 0.0;
    double total = 0.0;
    if (x0.nnz() > 0) {
        const auto& [t0, v0] = x0.entry(rng.below(x0.nnz()));
        if (trace) ++trace->draws;
        total += detail::sparse_term(x0, x1, t0, v0, trace);
    }
    if (x1.nnz() > 0) {
        const auto& [t1, v1] = x1.entry(rng.below(x1.nnz()));
        if (trace) ++trace->draws;
        total += detail::sparse_term(x1, x0, t1, v1, trace);
    }
    return total;
}

// (1/d) sum over the support union of squared differences, via an O(n0+n1)
// walk. This is the exact value the estimator targets.
inline double sparse_exact(const SparseVector& x0, const SparseVector& x1) {
    if (x0.dim() != x1.dim()) throw std::invalid_argument("sparse_exact: dimension mismatch");
    double sum = 0.0;
    for (std::int64_t s = 0; s < x0.nnz(); ++s) {
        const auto& [coord, v0] = x0.entry(s);
        const double v1 = x1.membership(coord).second;
        const double diff = v0 - v1;
        sum += diff * diff;
    }
    for (std::int64_t s = 0; s < x1.nnz(); ++s) {
        const auto& [coord, v1] = x1.entry(s);
        if (x0.membership(coord).first) continue;  // already counted from x0's side
        sum += v1 * v1;
    }
    return sum / static_cast<double>(x0.dim());
}

// Pull count at which the exact union walk becomes the cheaper option.
inline std::int64_t sparse_max_pulls(const SparseVector& x0, const SparseVector& x1) {
    const std::int64_t total = x0.nnz() + x1.nnz();
    const std::int64_t ceil_half = (total + 1) / 2;
    return ceil_half > 1 ? ceil_half : 1;
}

}  // namespace bandopt
