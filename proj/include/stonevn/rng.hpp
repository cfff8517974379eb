#pragma once

#include <cstdint>
#include <random>

#include "stonevn/errors.hpp"

namespace stonevn {

// Splitmix-style mixer, used to derive independent child seeds so that the
// verification pipeline stays deterministic regardless of the order in which
// its stages run.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded generator. Every draw goes through the helpers below instead of
// <random> distributions, which are not byte-portable across standard
// library implementations; mt19937_64 itself is fully specified.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n).
    std::size_t below(std::size_t n) {
        if (n == 0) throw ContractError("Rng::below: empty range");
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform integer in [lo, hi], inclusive.
    long long int_in(long long lo, long long hi) {
        if (lo > hi) throw ContractError("Rng::int_in: empty range");
        const auto span = static_cast<unsigned long long>(hi - lo);
        return lo + static_cast<long long>(
            (static_cast<unsigned __int128>(next()) * (span + 1)) >> 64);
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1) != 0; }

    // True with probability num/den.
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

    Rng derive(std::uint64_t salt) { return Rng(mix_seed(next(), salt)); }

private:
    std::mt19937_64 engine_;
};

} // namespace stonevn
