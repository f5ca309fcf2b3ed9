#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bandopt {

// Row-major n x d matrix of finite reals.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::int64_t n, std::int64_t d)
        : n_(n), d_(d), values_(static_cast<std::size_t>(n * d), 0.0) {}
    DenseMatrix(std::int64_t n, std::int64_t d, std::vector<double> values)
        : n_(n), d_(d), values_(std::move(values)) {
        if (static_cast<std::int64_t>(values_.size()) != n_ * d_)
            throw std::invalid_argument("DenseMatrix: value count != n*d");
    }

    std::int64_t rows() const { return n_; }
    std::int64_t cols() const { return d_; }

    std::span<const double> row(std::int64_t i) const {
        return {values_.data() + i * d_, static_cast<std::size_t>(d_)};
    }
    std::span<double> row(std::int64_t i) {
        return {values_.data() + i * d_, static_cast<std::size_t>(d_)};
    }

    double operator()(std::int64_t i, std::int64_t j) const {
        return values_[static_cast<std::size_t>(i * d_ + j)];
    }
    double& operator()(std::int64_t i, std::int64_t j) {
        return values_[static_cast<std::size_t>(i * d_ + j)];
    }

    const std::vector<double>& values() const { return values_; }

private:
    std::int64_t n_ = 0;
    std::int64_t d_ = 0;
    std::vector<double> values_;
};

// One coordinate-wise squared-difference sample, the per-pull unit of the
// dense distance estimator.
inline double sample_sq_coord(std::span<const double> x, std::span<const double> y,
                              std::int64_t t) {
    if (t < 0 || t >= static_cast<std::int64_t>(x.size()) || x.size() != y.size())
        throw std::out_of_range("sample_sq_coord: coordinate out of range");
    const double diff = x[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t)];
    return diff * diff;
}

// (1/d) sum_t (x_t - y_t)^2 — the brute-force arm mean; one full effective
// evaluation of the pair.
inline double exact_mean(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("exact_mean: dimension mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double diff = x[t] - y[t];
        sum += diff * diff;
    }
    return sum / static_cast<double>(x.size());
}

// Full-row distances used by the medoid arms (one pull = one row).
inline double l1_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("l1_distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) sum += std::abs(x[t] - y[t]);
    return sum;
}

inline double sq_l2_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("sq_l2_distance: dimension mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double diff = x[t] - y[t];
        sum += diff * diff;
    }
    return sum;
}

// Per-coordinate |x_t - y_t|^p term; p = 1 and p = 2 cover the shipped
// metrics, other p values ride on the same additive estimator.
inline double sample_abs_pow_coord(std::span<const double> x, std::span<const double> y,
                                   std::int64_t t, double p) {
    if (t < 0 || t >= static_cast<std::int64_t>(x.size()) || x.size() != y.size())
        throw std::out_of_range("sample_abs_pow_coord: coordinate out of range");
    return std::pow(std::abs(x[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t)]), p);
}

}  // namespace bandopt
