#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kmedian/graph.hpp"

namespace kmedian {

/**
 * Seeded 64-bit generator with a platform-independent output sequence.
 *
 * The engine is std::mt19937_64, whose output is fixed by the C++ standard.
 * Library distributions are implementation-defined, so bounded draws use
 * rejection on the raw 64-bit words instead: with t = 2^64 mod bound, words
 * below t are discarded and the rest are reduced modulo bound.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold)
                return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (seed, stream); gives independent per-k streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Draws uniform k-subsets of 0..n-1 by partial Fisher-Yates shuffle.
 *
 * Draw i swaps position i with a uniform position in [i, n). The permutation
 * buffer is restored after every draw, so each draw costs O(k) and equals a
 * fresh dense partial shuffle of the identity.
 */
class SubsetSampler {
public:
    explicit SubsetSampler(std::size_t n);

    void draw(std::size_t k, Rng &rng, std::vector<Vertex> &out);

private:
    std::vector<Vertex> perm_;
    std::vector<std::size_t> swaps_;
};

} // namespace kmedian
