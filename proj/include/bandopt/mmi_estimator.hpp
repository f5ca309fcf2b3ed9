#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bandopt {

struct MmiOptions {
    double r_floor = 1e-12;  // NN distances are floored here before log (duplicate rows)
    double c1_offset = 0.0;  // shift on the 1-D entropy constant
    double c2_offset = 0.0;  // shift on the 2-D entropy constant
};

namespace detail {
constexpr double kEulerGamma = 0.5772156649015328606065;
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace detail

// Nearest-neighbor entropy constant c_d(dim, l) = log(l-1) + gamma + log V_d
// with unit-ball volumes V_1 = 2, V_2 = pi (classical 1-NN form).
inline double kl_constant(int dim, std::int64_t count, const MmiOptions& opts = {}) {
    const double base =
        std::log(static_cast<double>(count - 1)) + detail::kEulerGamma;
    if (dim == 1) return base + std::log(2.0) + opts.c1_offset;
    if (dim == 2) return base + std::log(detail::kPi) + opts.c2_offset;
    throw std::invalid_argument("kl_constant: only dims 1 and 2 are used here");
}

// Kozachenko-Leonenko differential entropy from 1-D samples:
// (1/k) sum log R_i + c_1, R_i the distance to the nearest other sample.
inline double kl_entropy(std::span<const double> samples, const MmiOptions& opts = {}) {
    const std::int64_t k = static_cast<std::int64_t>(samples.size());
    if (k < 2) throw std::invalid_argument("kl_entropy: need at least 2 samples");
    double sum = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
        double r = std::numeric_limits<double>::infinity();
        for (std::int64_t j = 0; j < k; ++j) {
            if (j == i) continue;
            const double dij = std::abs(samples[static_cast<std::size_t>(j)] -
                                        samples[static_cast<std::size_t>(i)]);
            if (dij < r) r = dij;
        }
        sum += std::log(std::max(r, opts.r_floor));
    }
    return sum / static_cast<double>(k) + kl_constant(1, k, opts);
}

// Same estimator over 2-D samples (w_i, z_i) with euclidean NN distances.
inline double kl_entropy_2d(std::span<const double> w, std::span<const double> z,
                            const MmiOptions& opts = {}) {
    if (w.size() != z.size()) throw std::invalid_argument("kl_entropy_2d: length mismatch");
    const std::int64_t k = static_cast<std::int64_t>(w.size());
    if (k < 2) throw std::invalid_argument("kl_entropy_2d: need at least 2 samples");
    double sum = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
        double r2 = std::numeric_limits<double>::infinity();
        for (std::int64_t j = 0; j < k; ++j) {
            if (j == i) continue;
            const double dw = w[static_cast<std::size_t>(j)] - w[static_cast<std::size_t>(i)];
            const double dz = z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(i)];
            const double dij = dw * dw + dz * dz;
            if (dij < r2) r2 = dij;
        }
        sum += std::log(std::max(std::sqrt(r2), opts.r_floor));
    }
    return sum / static_cast<double>(k) + kl_constant(2, k, opts);
}

// Incremental mutual-information arm: keeps per-sample nearest-neighbor
// distances in the feature marginal, target marginal, and joint 2-D space,
// plus running sums of the combined per-sample contribution
// c_i = log R_i^W + log R_i^Z - log R_i^J, so that adding a row costs O(l)
// and the estimate and its spread come from cached sums.
class MIArmState {
public:
    explicit MIArmState(MmiOptions opts = {}) : opts_(opts) {}

    std::int64_t count() const { return static_cast<std::int64_t>(rows_.size()); }

    void add_row(std::int64_t row_id, double w, double z) {
        const std::int64_t l = count();
        double best_w = std::numeric_limits<double>::infinity();
        double best_z = best_w;
        double best_j = best_w;
        for (std::int64_t i = 0; i < l; ++i) {
            const std::size_t ii = static_cast<std::size_t>(i);
            const double dw = std::abs(w_[ii] - w);
            const double dz = std::abs(z_[ii] - z);
            const double dj = std::sqrt(dw * dw + dz * dz);
            if (dw < nn_w_[ii]) set_component(ii, nn_w_, lw_, logsum_w_, dw);
            if (dz < nn_z_[ii]) set_component(ii, nn_z_, lz_, logsum_z_, dz);
            if (dj < nn_j_[ii]) set_component(ii, nn_j_, lj_, logsum_j_, dj);
            if (dw < best_w) best_w = dw;
            if (dz < best_z) best_z = dz;
            if (dj < best_j) best_j = dj;
        }
        rows_.push_back(row_id);
        w_.push_back(w);
        z_.push_back(z);
        nn_w_.push_back(best_w);
        nn_z_.push_back(best_z);
        nn_j_.push_back(best_j);
        // placeholders until a neighbor exists (l == 0); fixed by the next add
        const double plw = l == 0 ? 0.0 : flog(best_w);
        const double plz = l == 0 ? 0.0 : flog(best_z);
        const double plj = l == 0 ? 0.0 : flog(best_j);
        lw_.push_back(plw);
        lz_.push_back(plz);
        lj_.push_back(plj);
        logsum_w_ += plw;
        logsum_z_ += plz;
        logsum_j_ += plj;
        c_.push_back(0.0);
        refresh_c(static_cast<std::size_t>(l));
    }

    // I-hat = h(W) + h(Z) - h(W,Z); the per-sample mean of c_i plus the
    // count-dependent constant (the log(l-1)+gamma parts combine to one copy).
    double mi() const {
        const std::int64_t l = count();
        if (l < 2) throw std::logic_error("MIArmState: need at least 2 rows");
        const double constant = std::log(static_cast<double>(l - 1)) + detail::kEulerGamma +
                                2.0 * (std::log(2.0) + opts_.c1_offset) -
                                (std::log(detail::kPi) + opts_.c2_offset);
        return sum_c_ / static_cast<double>(l) + constant;
    }

    // empirical std of the c_i, the CLT plug-in scale
    double contribution_std() const {
        const std::int64_t l = count();
        if (l < 2) throw std::logic_error("MIArmState: need at least 2 rows");
        const double var =
            (sumsq_c_ - sum_c_ * sum_c_ / static_cast<double>(l)) / static_cast<double>(l - 1);
        const double s = std::sqrt(std::max(var, 0.0));
        return s > 1e-12 ? s : 1e-12;
    }

    double entropy_w() const { return marginal_entropy(logsum_w_, 1); }
    double entropy_z() const { return marginal_entropy(logsum_z_, 1); }
    double entropy_joint() const { return marginal_entropy(logsum_j_, 2); }

    std::span<const std::int64_t> rows() const { return rows_; }
    std::span<const double> w_values() const { return w_; }
    std::span<const double> z_values() const { return z_; }
    std::span<const double> nn_w() const { return nn_w_; }
    std::span<const double> nn_z() const { return nn_z_; }
    std::span<const double> nn_joint() const { return nn_j_; }
    double logsum_w() const { return logsum_w_; }
    double logsum_z() const { return logsum_z_; }
    double logsum_joint() const { return logsum_j_; }
    const MmiOptions& options() const { return opts_; }

private:
    double flog(double r) const { return std::log(std::max(r, opts_.r_floor)); }

    void set_component(std::size_t i, std::vector<double>& nn, std::vector<double>& lg,
                       double& logsum, double dist) {
        nn[i] = dist;
        const double nl = flog(dist);
        logsum += nl - lg[i];
        lg[i] = nl;
        refresh_c(i);
    }

    void refresh_c(std::size_t i) {
        const double cn = lw_[i] + lz_[i] - lj_[i];
        sum_c_ += cn - c_[i];
        sumsq_c_ += cn * cn - c_[i] * c_[i];
        c_[i] = cn;
    }

    double marginal_entropy(double logsum, int dim) const {
        const std::int64_t l = count();
        if (l < 2) throw std::logic_error("MIArmState: need at least 2 rows");
        return logsum / static_cast<double>(l) + kl_constant(dim, l, opts_);
    }

    MmiOptions opts_;
    std::vector<std::int64_t> rows_;
    std::vector<double> w_, z_;
    std::vector<double> nn_w_, nn_z_, nn_j_;
    std::vector<double> lw_, lz_, lj_;
    std::vector<double> c_;
    double logsum_w_ = 0.0, logsum_z_ = 0.0, logsum_j_ = 0.0;
    double sum_c_ = 0.0;
    double sumsq_c_ = 0.0;
};

}  // namespace bandopt
