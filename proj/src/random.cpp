#include "kmedian/random.hpp"

#include <utility>

#include "kmedian/errors.hpp"

namespace kmedian {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SubsetSampler::SubsetSampler(std::size_t n) : perm_(n) {
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = static_cast<Vertex>(i);
}

void SubsetSampler::draw(std::size_t k, Rng &rng, std::vector<Vertex> &out) {
    const auto n = perm_.size();
    if (k == 0 || k > n)
        throw ArgumentError("subset size must be in [1, n]");
    out.resize(k);
    swaps_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        swaps_[i] = j;
        std::swap(perm_[i], perm_[j]);
        out[i] = perm_[i];
    }
    for (std::size_t i = k; i-- > 0;)
        std::swap(perm_[i], perm_[swaps_[i]]);
}

} // namespace kmedian
