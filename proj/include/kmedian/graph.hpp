#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kmedian {

using Vertex = std::uint32_t;
using OriginalId = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

/// Edge pairs exactly as read from a file: may hold duplicates, reversed
/// duplicates, self-loops and gaps in the id space.
struct RawEdgeList {
    std::vector<std::pair<OriginalId, OriginalId>> edges;
    std::size_t source_line_count = 0;
};

/**
 * Parses a whitespace-separated edge list.
 *
 * Blank lines and lines starting with `#` (SNAP) or `%` (Konect, MatrixMarket)
 * are skipped. Only the first two tokens of a data line are read, so weighted
 * or timestamped files load as plain edge lists. LF and CRLF both work.
 *
 * Throws ParseError naming the 1-based line when either of the first two
 * tokens is missing or not a non-negative integer.
 */
RawEdgeList parse_edge_list(std::istream &in);
RawEdgeList parse_edge_list(std::string_view text);
RawEdgeList read_edge_list_file(const std::filesystem::path &path);

/**
 * Immutable simple undirected graph over vertices 0..n-1.
 *
 * Adjacency lives in one contiguous pool indexed by per-vertex offsets;
 * every neighbor list is strictly increasing and symmetric.
 */
class Graph {
public:
    Graph() = default;

    /// Builds from undirected pairs over 0..vertex_count-1. Each pair is made
    /// bidirectional; self-loops and repeated pairs are dropped.
    static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    /// Every edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
};

/// Bijection between the ids of a source (file ids, or another graph's
/// vertices) and the compact ids 0..n-1 of a built graph.
class VertexMapping {
public:
    VertexMapping() = default;
    /// `originals[c]` is the source id of compact vertex c. Ids must be distinct.
    explicit VertexMapping(std::vector<OriginalId> originals);

    static VertexMapping identity(std::size_t n);

    std::size_t size() const noexcept { return reverse_.size(); }
    std::optional<Vertex> find(OriginalId id) const;
    /// Throws ArgumentError for ids that were not retained.
    Vertex to_compact(OriginalId id) const;
    OriginalId to_original(Vertex v) const { return reverse_.at(v); }
    std::span<const OriginalId> originals() const noexcept { return reverse_; }

    /// Mapping from this mapping's source ids to `inner`'s compact ids, where
    /// `inner` maps from this mapping's compact ids.
    VertexMapping then(const VertexMapping &inner) const;

private:
    std::unordered_map<OriginalId, Vertex> forward_;
    std::vector<OriginalId> reverse_;
};

struct MappedGraph {
    Graph graph;
    VertexMapping mapping;
};

/// Symmetrizes, drops self-loops and duplicates, and compacts ids in order of
/// first appearance. The result may be disconnected. Throws EmptyGraphError
/// when no edge survives.
MappedGraph build_simple_graph(const RawEdgeList &raw);

/// Largest component renumbered to 0..m-1 keeping the relative order of ids.
/// Equal-size components are resolved toward the one holding the smallest id.
/// The mapping's source ids are vertex ids of `g`.
MappedGraph largest_connected_component(const Graph &g);

/// parse + build_simple_graph + largest_connected_component, with the mapping
/// composed back to file ids.
MappedGraph normalize(const RawEdgeList &raw);
MappedGraph load_network(const std::filesystem::path &path);

struct DegreeStats {
    double avg_degree = 0.0;
    std::size_t max_degree = 0;
    double max_to_avg_ratio = 0.0;
};

DegreeStats degree_stats(const Graph &g);

bool is_connected(const Graph &g);

/// One "u v" line per edge (u < v) in compact ids, sorted, LF endings.
void write_edge_list(std::ostream &out, const Graph &g);

} // namespace kmedian
