#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "cgsp/types.hpp"

namespace cgsp {

// splitmix64 finalizer; used to hash seed components together.
std::uint64_t mix64(std::uint64_t x);

// Order-sensitive hash of (master, parts...) for reproducible sub-stream seeds.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

// mt19937_64 with hand-rolled output transforms. The standard fixes the engine
// sequence but not the distributions, so uniform/normal are implemented here to
// keep results bit-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform on {0, ..., n-1} via rejection sampling; n > 0.
    int uniform_int(int n);

    // Standard normal via Box-Muller (second value cached).
    double normal();

    // Circularly symmetric complex normal with unit total variance:
    // re, im independent N(0, 1/2).
    Complex complex_normal();

    // m distinct indices from {0, ..., n-1} in draw order (partial Fisher-Yates).
    IndexSet sample_without_replacement(int n, int m);

  private:
    std::mt19937_64 gen_;
    bool has_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace cgsp
