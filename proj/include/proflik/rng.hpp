#pragma once

#include <cstdint>
#include <random>

namespace proflik {

// splitmix64 step; the usual finalizer used to expand one 64-bit seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based substream derivation: (master, counter) -> independent seed.
// Replicates, chain draws and scan cells get decorrelated streams that do not
// depend on evaluation order, so parallel execution stays deterministic.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (counter + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Thin wrapper around mt19937_64 plus the handful of variate types used here.
// std::gamma_distribution is rejection-based (exact), which the conjugate
// Gibbs validation relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

    double normal(double mean = 0.0, double sd = 1.0) {
        return std::normal_distribution<double>(mean, sd)(gen_);
    }

    // shape/scale parameterization, density x^{k-1} e^{-x/theta}
    double gamma(double shape, double scale) {
        return std::gamma_distribution<double>(shape, scale)(gen_);
    }

    double chi_squared(double df) { return gamma(0.5 * df, 2.0); }

    // Inverse-Gamma(shape a, scale b): reciprocal of a Gamma(a, 1/b) variate.
    double inverse_gamma(double shape, double scale) { return 1.0 / gamma(shape, 1.0 / scale); }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace proflik
