#include "kmedian/evaluation.hpp"

#include <algorithm>
#include <string>

#include "kmedian/errors.hpp"

namespace kmedian {

CandidateSet::CandidateSet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty())
        throw ArgumentError("candidate set must not be empty");
    std::vector<Vertex> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ArgumentError("candidate set contains a repeated vertex");
}

void CandidateSet::check_against(const Graph &g) const {
    for (Vertex v : vertices_)
        if (v >= g.vertex_count())
            throw ArgumentError("vertex " + std::to_string(v) + " out of range for graph with " +
                                std::to_string(g.vertex_count()) + " vertices");
}

BfsWorkspace::BfsWorkspace(const Graph &g)
    : graph_(&g), stamp_(g.vertex_count(), 0), queue_(g.vertex_count()) {}

template <class OnLevel>
void BfsWorkspace::sweep(const CandidateSet &s, OnLevel &&on_level) {
    s.check_against(*graph_);
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    const auto epoch = epoch_;
    std::size_t tail = 0;
    for (Vertex v : s.vertices()) {
        stamp_[v] = epoch;
        queue_[tail++] = v;
    }
    std::size_t level_begin = 0;
    std::uint32_t level = 0;
    while (level_begin < tail) {
        const std::size_t level_end = tail;
        on_level(level, std::span<const Vertex>(queue_.data() + level_begin, level_end - level_begin));
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Vertex w : graph_->neighbors(queue_[i]))
                if (stamp_[w] != epoch) {
                    stamp_[w] = epoch;
                    queue_[tail++] = w;
                }
        level_begin = level_end;
        ++level;
    }
}

DistanceField BfsWorkspace::distances(const CandidateSet &s) {
    DistanceField dist(graph_->vertex_count(), 0);
    sweep(s, [&](std::uint32_t p, std::span<const Vertex> shell) {
        for (Vertex v : shell)
            dist[v] = p;
    });
    return dist;
}

std::uint64_t BfsWorkspace::farness(const CandidateSet &s) {
    std::uint64_t total = 0;
    sweep(s, [&](std::uint32_t p, std::span<const Vertex> shell) { total += std::uint64_t{p} * shell.size(); });
    return total;
}

ShellProfile BfsWorkspace::shells(const CandidateSet &s) {
    ShellProfile profile;
    sweep(s, [&](std::uint32_t, std::span<const Vertex> shell) { profile.sizes.push_back(shell.size()); });
    return profile;
}

DistanceField multi_source_bfs(const Graph &g, const CandidateSet &s) {
    BfsWorkspace ws(g);
    return ws.distances(s);
}

std::uint64_t farness(const Graph &g, const CandidateSet &s) {
    BfsWorkspace ws(g);
    return ws.farness(s);
}

EvaluationResult evaluate(BfsWorkspace &ws, const CandidateSet &s) {
    const Graph &g = ws.graph();
    s.check_against(g);
    if (s.size() >= g.vertex_count())
        throw DegenerateSetError("average distance undefined when the set covers every vertex");
    EvaluationResult r;
    r.k = s.size();
    r.farness = ws.farness(s);
    r.avg_distance = static_cast<double>(r.farness) / static_cast<double>(g.vertex_count() - r.k);
    return r;
}

EvaluationResult evaluate(const Graph &g, const CandidateSet &s) {
    BfsWorkspace ws(g);
    return evaluate(ws, s);
}

double avg_distance(const Graph &g, const CandidateSet &s) { return evaluate(g, s).avg_distance; }

ShellProfile shell_profile(const Graph &g, const CandidateSet &s) {
    BfsWorkspace ws(g);
    return ws.shells(s);
}

std::uint64_t farness_from_shells(const ShellProfile &p) {
    std::uint64_t total = 0;
    for (std::size_t d = 0; d < p.sizes.size(); ++d)
        total += d * p.sizes[d];
    return total;
}

} // namespace kmedian
