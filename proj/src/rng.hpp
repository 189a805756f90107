#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "error.hpp"

namespace fairclust {

// Derives an independent stream seed from a master seed. splitmix64 finalizer,
// so nearby (seed, stream) pairs land far apart in state space.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled draw helpers. std::uniform_*_distribution is
// implementation-defined, which would break cross-platform replay; these
// helpers pin the exact value sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform index in [0, n) via rejection sampling, bias-free.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) raise(errc::invalid_argument, "uniform_index: empty range");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    // Index drawn with probability weights[i] / sum(weights). All-zero weights
    // fall back to uniform.
    std::size_t weighted_index(const std::vector<double>& weights) {
        if (weights.empty()) raise(errc::invalid_argument, "weighted_index: empty weights");
        double total = 0.0;
        for (double w : weights) total += w;
        if (total <= 0.0) return uniform_index(weights.size());
        double r = next_double() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (r < acc) return i;
        }
        return weights.size() - 1;
    }

    // Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(6.283185307179586477 * u2);
        have_spare_ = true;
        return mag * std::cos(6.283185307179586477 * u2);
    }

    // First m elements of a partial Fisher-Yates shuffle of 0..n-1.
    std::vector<int> sample_without_replacement(int n, int m) {
        if (m > n) raise(errc::invalid_argument, "sample_without_replacement: m > n");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < m; ++i) {
            std::size_t j = i + uniform_index(static_cast<std::size_t>(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(m);
        return pool;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fairclust
