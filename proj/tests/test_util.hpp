// Shared helpers for the test suites: seeded draws and relative comparison.

#pragma once

#include <cmath>
#include <random>

namespace sqz::test {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int integer(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }
};

inline double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

}  // namespace sqz::test
