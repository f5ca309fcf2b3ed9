#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bandopt {

// Deterministic random source. Wraps std::mt19937_64 (whose output sequence
// is fixed by the standard) and hand-rolls the distributions, because the
// std:: distribution implementations are not portable across toolchains and
// reproducibility of runs is part of the library contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix(seed, 0x9e3779b97f4a7c15ull)) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform integer in [0, n)
    std::int64_t below(std::int64_t n) {
        const auto un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % un;
        std::uint64_t r;
        do {
            r = gen_();
        } while (r >= limit);
        return static_cast<std::int64_t>(r % un);
    }

    // uniform in [0, 1)
    double uniform01() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

    // standard normal via Box-Muller; caches the paired variate
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Fisher-Yates shuffle of an index-like container
    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::int64_t i = static_cast<std::int64_t>(v.size()) - 1; i > 0; --i) {
            const std::int64_t j = below(i + 1);
            std::swap(v[i], v[j]);
        }
    }

    // splitmix64-style combiner for deriving independent child seeds
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bandopt
