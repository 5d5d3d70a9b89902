#include "kmedian/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kmedian/errors.hpp"

namespace kmedian {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Next whitespace-delimited token starting at pos; empty when the line is exhausted.
std::string_view next_token(std::string_view line, std::size_t &pos) {
    while (pos < line.size() && is_blank(line[pos]))
        ++pos;
    const auto start = pos;
    while (pos < line.size() && !is_blank(line[pos]))
        ++pos;
    return line.substr(start, pos - start);
}

OriginalId parse_id(std::string_view token, std::size_t line_no) {
    if (token.empty())
        throw ParseError(line_no, "expected two vertex ids");
    OriginalId value = 0;
    const auto *end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(line_no, "invalid vertex id '" + std::string(token) + "'");
    return value;
}

} // namespace

RawEdgeList parse_edge_list(std::istream &in) {
    RawEdgeList raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        std::size_t pos = 0;
        const auto first = next_token(view, pos);
        if (first.empty() || first.front() == '#' || first.front() == '%')
            continue;
        const auto second = next_token(view, pos);
        raw.edges.emplace_back(parse_id(first, line_no), parse_id(second, line_no));
    }
    raw.source_line_count = line_no;
    return raw;
}

RawEdgeList parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

RawEdgeList read_edge_list_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DatasetError("cannot open " + path.string());
    return parse_edge_list(in);
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= vertex_count || v >= vertex_count)
            throw ArgumentError("edge endpoint out of range");
        if (u == v)
            continue;
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.offsets_.assign(vertex_count + 1, 0);
    for (auto [u, v] : arcs)
        ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < vertex_count; ++i)
        g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.reserve(arcs.size());
    for (auto [u, v] : arcs)
        g.adjacency_.push_back(v);
    return g;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

VertexMapping::VertexMapping(std::vector<OriginalId> originals) : reverse_(std::move(originals)) {
    forward_.reserve(reverse_.size());
    for (std::size_t c = 0; c < reverse_.size(); ++c) {
        if (!forward_.emplace(reverse_[c], static_cast<Vertex>(c)).second)
            throw ArgumentError("duplicate id in vertex mapping");
    }
}

VertexMapping VertexMapping::identity(std::size_t n) {
    std::vector<OriginalId> ids(n);
    for (std::size_t i = 0; i < n; ++i)
        ids[i] = i;
    return VertexMapping(std::move(ids));
}

std::optional<Vertex> VertexMapping::find(OriginalId id) const {
    auto it = forward_.find(id);
    if (it == forward_.end())
        return std::nullopt;
    return it->second;
}

Vertex VertexMapping::to_compact(OriginalId id) const {
    if (auto v = find(id))
        return *v;
    throw ArgumentError("vertex " + std::to_string(id) + " is not in the graph");
}

VertexMapping VertexMapping::then(const VertexMapping &inner) const {
    std::vector<OriginalId> ids;
    ids.reserve(inner.size());
    for (OriginalId mid : inner.originals())
        ids.push_back(reverse_.at(mid));
    return VertexMapping(std::move(ids));
}

MappedGraph build_simple_graph(const RawEdgeList &raw) {
    std::unordered_map<OriginalId, Vertex> compact;
    std::vector<OriginalId> originals;
    std::vector<Edge> edges;
    edges.reserve(raw.edges.size());
    auto intern = [&](OriginalId id) {
        auto [it, inserted] = compact.emplace(id, static_cast<Vertex>(originals.size()));
        if (inserted)
            originals.push_back(id);
        return it->second;
    };
    for (auto [a, b] : raw.edges) {
        if (a == b)
            continue;
        const Vertex u = intern(a);
        const Vertex v = intern(b);
        edges.emplace_back(u, v);
    }
    if (edges.empty())
        throw EmptyGraphError("edge list has no edges after dropping self-loops");
    MappedGraph out;
    out.graph = Graph::from_edges(originals.size(), edges);
    out.mapping = VertexMapping(std::move(originals));
    return out;
}

MappedGraph largest_connected_component(const Graph &g) {
    const auto n = g.vertex_count();
    if (n == 0)
        throw EmptyGraphError("graph has no vertices");

    constexpr Vertex unassigned = ~Vertex{0};
    std::vector<Vertex> component(n, unassigned);
    std::vector<Vertex> queue;
    queue.reserve(n);
    Vertex best_component = 0;
    std::size_t best_size = 0;
    Vertex label = 0;
    for (Vertex root = 0; root < n; ++root) {
        if (component[root] != unassigned)
            continue;
        queue.clear();
        queue.push_back(root);
        component[root] = label;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (Vertex w : g.neighbors(queue[head]))
                if (component[w] == unassigned) {
                    component[w] = label;
                    queue.push_back(w);
                }
        // roots are visited in increasing id order, so strict > keeps the
        // component with the smallest member on ties
        if (queue.size() > best_size) {
            best_size = queue.size();
            best_component = label;
        }
        ++label;
    }

    std::vector<OriginalId> kept;
    kept.reserve(best_size);
    std::vector<Vertex> renumber(n, unassigned);
    for (Vertex v = 0; v < n; ++v)
        if (component[v] == best_component) {
            renumber[v] = static_cast<Vertex>(kept.size());
            kept.push_back(v);
        }

    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (OriginalId old : kept)
        for (Vertex w : g.neighbors(static_cast<Vertex>(old)))
            if (old < w)
                edges.emplace_back(renumber[old], renumber[w]);

    MappedGraph out;
    out.graph = Graph::from_edges(kept.size(), edges);
    out.mapping = VertexMapping(std::move(kept));
    return out;
}

MappedGraph normalize(const RawEdgeList &raw) {
    auto simple = build_simple_graph(raw);
    auto lcc = largest_connected_component(simple.graph);
    lcc.mapping = simple.mapping.then(lcc.mapping);
    return lcc;
}

MappedGraph load_network(const std::filesystem::path &path) { return normalize(read_edge_list_file(path)); }

DegreeStats degree_stats(const Graph &g) {
    DegreeStats stats;
    const auto n = g.vertex_count();
    if (n == 0)
        return stats;
    for (Vertex v = 0; v < n; ++v)
        stats.max_degree = std::max(stats.max_degree, g.degree(v));
    stats.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    if (stats.avg_degree > 0.0)
        stats.max_to_avg_ratio = static_cast<double>(stats.max_degree) / stats.avg_degree;
    return stats;
}

bool is_connected(const Graph &g) {
    const auto n = g.vertex_count();
    if (n == 0)
        return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (Vertex w : g.neighbors(queue[head]))
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    return queue.size() == n;
}

void write_edge_list(std::ostream &out, const Graph &g) {
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

} // namespace kmedian
