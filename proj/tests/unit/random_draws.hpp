#pragma once

#include <random>

// Deterministic parameter draws for property tests.
struct TlsDraw {
    double omega;
    double gamma;
    double n;
};

class TlsSampler {
public:
    explicit TlsSampler(unsigned long long seed) : rng_(seed) {}

    TlsDraw next() {
        return {log_uniform(0.05, 20.0), log_uniform(0.05, 20.0), uniform(0.0, 5.0)};
    }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

private:
    std::mt19937_64 rng_;
};
