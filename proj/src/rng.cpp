#include "cgsp/rng.hpp"

#include <cmath>
#include <numbers>

namespace cgsp {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t p : parts) {
        h = mix64(h ^ mix64(p));
    }
    return h;
}

double Rng::uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int n) {
    if (n <= 0) throw_error(ErrorCode::OutOfDomain, "uniform_int requires n > 0");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
        x = gen_();
    } while (x >= limit);
    return static_cast<int>(x % un);
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0);
}

IndexSet Rng::sample_without_replacement(int n, int m) {
    if (m < 0 || m > n) throw_error(ErrorCode::IndexOutOfRange, "sample size out of range");
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    IndexSet out(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int j = i + uniform_int(n - i);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace cgsp
