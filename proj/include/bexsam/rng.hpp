#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bexsam {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 wrapper with fixed draw semantics. The std distribution objects
// are not bit-stable across standard libraries, so the conversions below are
// spelled out and must not change: results are part of the seeded outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // decorrelated stream for trial `index` under a master seed
    static Rng for_trial(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(master ^ splitmix64(index + 1)));
    }

    std::uint64_t next() { return eng_(); }

    // uniform in [0,1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // uniform in [0, bound) via 128-bit multiply, bound > 0
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Fisher-Yates, one below() call per step
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t k = v.size(); k > 1; --k) {
            std::size_t j = static_cast<std::size_t>(below(k));
            std::swap(v[k - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace bexsam
