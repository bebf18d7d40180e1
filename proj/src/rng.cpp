#include "knotspec/rng.hpp"

namespace knotspec {

std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::initializer_list<std::uint64_t> indices)
{
    std::uint64_t h = mix64(parent ^ label_hash(label));
    for (std::uint64_t i : indices) h = mix64(h ^ mix64(i + 0x632be59bd9b4e019ULL));
    return h;
}

std::uint64_t Rng::below(std::uint64_t n)
{
    // Lemire-style rejection keeps this unbiased and portable.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

} // namespace knotspec
