#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace knotspec {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stable (platform-independent) hash of a label, FNV-1a.
constexpr std::uint64_t label_hash(std::string_view label)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Derive a child seed from a parent seed, a label and a list of indices.
/// Every random stream in the toolkit is obtained this way from the single
/// top-level seed, so results never depend on scheduling.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::initializer_list<std::uint64_t> indices = {});

/// Thin wrapper over mt19937_64 with portable real conversions (the
/// std distributions are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

} // namespace knotspec
