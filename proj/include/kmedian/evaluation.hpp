#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kmedian/graph.hpp"

namespace kmedian {

/// Ordered, duplicate-free, nonempty vertex sequence.
class CandidateSet {
public:
    CandidateSet() = default;
    /// Throws ArgumentError when empty or when a vertex repeats.
    explicit CandidateSet(std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    /// Throws ArgumentError if any id is outside 0..|V|-1.
    void check_against(const Graph &g) const;

private:
    std::vector<Vertex> vertices_;
};

/// Per-vertex hop distance to the nearest member of a set.
using DistanceField = std::vector<std::uint32_t>;

/// sizes[p] = number of vertices at distance exactly p from the set.
struct ShellProfile {
    std::vector<std::uint64_t> sizes;

    friend bool operator==(const ShellProfile &, const ShellProfile &) = default;
};

struct EvaluationResult {
    std::uint64_t farness = 0;
    double avg_distance = 0.0;
    std::size_t k = 0;
};

/**
 * Reusable multi-source BFS state for one graph.
 *
 * Visitation uses an epoch stamp per vertex, so consecutive runs never clear
 * or reallocate. One workspace per thread; the graph itself may be shared.
 */
class BfsWorkspace {
public:
    explicit BfsWorkspace(const Graph &g);

    const Graph &graph() const noexcept { return *graph_; }

    DistanceField distances(const CandidateSet &s);
    std::uint64_t farness(const CandidateSet &s);
    ShellProfile shells(const CandidateSet &s);

private:
    // Level-synchronous sweep; on_level(p, vertices at distance p).
    template <class OnLevel>
    void sweep(const CandidateSet &s, OnLevel &&on_level);

    const Graph *graph_;
    std::vector<std::uint32_t> stamp_;
    std::vector<Vertex> queue_;
    std::uint32_t epoch_ = 0;
};

DistanceField multi_source_bfs(const Graph &g, const CandidateSet &s);

/// Sum of d(v, S) over v outside S.
std::uint64_t farness(const Graph &g, const CandidateSet &s);

/// F(S) / (|V| - k). Throws DegenerateSetError when S = V.
double avg_distance(const Graph &g, const CandidateSet &s);

EvaluationResult evaluate(const Graph &g, const CandidateSet &s);
EvaluationResult evaluate(BfsWorkspace &ws, const CandidateSet &s);

/// Stops at the eccentricity of S; the last entry is always nonzero.
ShellProfile shell_profile(const Graph &g, const CandidateSet &s);

/// Sum of p * sizes[p].
std::uint64_t farness_from_shells(const ShellProfile &p);

} // namespace kmedian
