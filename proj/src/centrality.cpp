#include "kmedian/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "kmedian/errors.hpp"
#include "kmedian/random.hpp"

namespace kmedian {

namespace {

void check_k(const Graph &g, std::size_t k) {
    if (k == 0 || k > g.vertex_count())
        throw ArgumentError("k must be in [1, " + std::to_string(g.vertex_count()) + "], got " + std::to_string(k));
}

template <class Value>
ScoreVector neighbor_sums(const Graph &g, std::span<const Value> values) {
    ScoreVector out(g.vertex_count(), 0.0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double sum = 0.0;
        for (Vertex u : g.neighbors(v))
            sum += static_cast<double>(values[u]);
        out[v] = sum;
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

} // namespace

std::string_view method_name(Method m) {
    switch (m) {
    case Method::degree:
        return "degree";
    case Method::degree_plus:
        return "degree+";
    case Method::prank:
        return "prank";
    case Method::vrank:
        return "vrank";
    case Method::core:
        return "core";
    case Method::core_plus:
        return "core+";
    case Method::hindex:
        return "hindex";
    case Method::random:
        return "random";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : all_methods)
        if (iequals(name, method_name(m)))
            return m;
    if (iequals(name, "h-index"))
        return Method::hindex;
    return std::nullopt;
}

std::vector<Vertex> top_k(std::span<const double> scores, std::size_t k) {
    if (k == 0 || k > scores.size())
        throw ArgumentError("k must be in [1, " + std::to_string(scores.size()) + "]");
    std::vector<Vertex> order(scores.size());
    std::iota(order.begin(), order.end(), Vertex{0});
    auto better = [&](Vertex a, Vertex b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), better);
    order.resize(k);
    return order;
}

ScoreVector degree_scores(const Graph &g) {
    ScoreVector out(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        out[v] = static_cast<double>(g.degree(v));
    return out;
}

ScoreVector extended_degree_scores(const Graph &g) {
    const auto degrees = degree_scores(g);
    return neighbor_sums<double>(g, degrees);
}

ScoreVector pagerank_scores(const Graph &g, const PageRankOptions &options) {
    if (!(options.damping >= 0.0 && options.damping < 1.0))
        throw ArgumentError("damping must be in [0, 1)");
    const auto n = g.vertex_count();
    ScoreVector rank(n, 1.0);
    ScoreVector next(n);
    std::vector<double> share(n);
    const double base = 1.0 - options.damping;
    double residual = 0.0;
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        for (Vertex u = 0; u < n; ++u)
            share[u] = g.degree(u) ? rank[u] / static_cast<double>(g.degree(u)) : 0.0;
        residual = 0.0;
        for (Vertex v = 0; v < n; ++v) {
            double sum = 0.0;
            for (Vertex u : g.neighbors(v))
                sum += share[u];
            next[v] = base + options.damping * sum;
            residual = std::max(residual, std::abs(next[v] - rank[v]));
        }
        rank.swap(next);
        if (residual < options.tolerance)
            return rank;
    }
    throw ConvergenceError("pagerank did not converge in " + std::to_string(options.max_iterations) +
                               " iterations (residual " + std::to_string(residual) + ")",
                           residual);
}

VoteRanker::VoteRanker(const Graph &g, std::optional<double> suppression)
    : graph_(&g), incoming_(g.vertex_count(), 0.0), power_(g.vertex_count(), 1.0), taken_(g.vertex_count(), 0) {
    if (suppression) {
        suppression_ = *suppression;
    } else {
        const double avg = degree_stats(g).avg_degree;
        suppression_ = avg > 0.0 ? 1.0 / avg : 0.0;
    }
}

Vertex VoteRanker::select_next() {
    const auto n = graph_->vertex_count();
    if (order_.size() >= n)
        throw ArgumentError("every vertex has already been selected");
    Vertex winner = 0;
    double best = -1.0;
    for (Vertex v = 0; v < n; ++v) {
        if (taken_[v])
            continue;
        double votes = 0.0;
        for (Vertex u : graph_->neighbors(v))
            votes += power_[u];
        incoming_[v] = votes;
        if (votes > best) {
            best = votes;
            winner = v;
        }
    }
    taken_[winner] = 1;
    incoming_[winner] = 0.0;
    power_[winner] = 0.0;
    for (Vertex u : graph_->neighbors(winner))
        power_[u] = std::max(0.0, power_[u] - suppression_);
    order_.push_back(winner);
    return winner;
}

std::vector<Vertex> voterank(const Graph &g, std::size_t k, std::optional<double> suppression) {
    check_k(g, k);
    VoteRanker ranker(g, suppression);
    std::vector<Vertex> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(ranker.select_next());
    return out;
}

std::vector<std::uint32_t> core_numbers(const Graph &g) {
    // Batagelj-Zaversnik: vertices kept sorted by current degree in `order`,
    // with bin_start[d] the first slot holding degree d.
    const auto n = g.vertex_count();
    std::vector<std::uint32_t> deg(n);
    std::size_t max_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = static_cast<std::uint32_t>(g.degree(v));
        max_deg = std::max<std::size_t>(max_deg, deg[v]);
    }
    std::vector<std::size_t> bin_start(max_deg + 2, 0);
    for (Vertex v = 0; v < n; ++v)
        ++bin_start[deg[v] + 1];
    for (std::size_t d = 1; d < bin_start.size(); ++d)
        bin_start[d] += bin_start[d - 1];
    std::vector<Vertex> order(n);
    std::vector<std::size_t> slot(n);
    {
        auto fill = bin_start;
        for (Vertex v = 0; v < n; ++v) {
            slot[v] = fill[deg[v]]++;
            order[slot[v]] = v;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = order[i];
        for (Vertex u : g.neighbors(v)) {
            if (deg[u] <= deg[v])
                continue;
            // move u to the front of its bin, then shrink the bin by one
            const std::size_t front = bin_start[deg[u]];
            const Vertex w = order[front];
            if (w != u) {
                std::swap(order[front], order[slot[u]]);
                slot[w] = slot[u];
                slot[u] = front;
            }
            ++bin_start[deg[u]];
            --deg[u];
        }
    }
    return deg;
}

ScoreVector coreness_scores(const Graph &g) {
    const auto cores = core_numbers(g);
    return neighbor_sums<std::uint32_t>(g, cores);
}

ScoreVector extended_coreness_scores(const Graph &g) {
    const auto coreness = coreness_scores(g);
    return neighbor_sums<double>(g, coreness);
}

std::size_t h_index(std::vector<std::size_t> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    std::size_t h = 0;
    while (h < values.size() && values[h] >= h + 1)
        ++h;
    return h;
}

ScoreVector h_index_scores(const Graph &g) {
    ScoreVector out(g.vertex_count());
    std::vector<std::size_t> degrees;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        degrees.clear();
        for (Vertex u : g.neighbors(v))
            degrees.push_back(g.degree(u));
        out[v] = static_cast<double>(h_index(degrees));
    }
    return out;
}

CandidateSet random_candidate(const Graph &g, std::size_t k, std::uint64_t seed) {
    check_k(g, k);
    Rng rng(seed);
    SubsetSampler sampler(g.vertex_count());
    std::vector<Vertex> out;
    sampler.draw(k, rng, out);
    return CandidateSet(std::move(out));
}

ScoreVector method_scores(const Graph &g, Method m) {
    switch (m) {
    case Method::degree:
        return degree_scores(g);
    case Method::degree_plus:
        return extended_degree_scores(g);
    case Method::prank:
        return pagerank_scores(g);
    case Method::core:
        return coreness_scores(g);
    case Method::core_plus:
        return extended_coreness_scores(g);
    case Method::hindex:
        return h_index_scores(g);
    case Method::vrank:
    case Method::random:
        break;
    }
    throw ArgumentError(std::string(method_name(m)) + " does not produce a score vector");
}

RankedList rank_vertices(const Graph &g, Method m, std::size_t k, std::uint64_t seed) {
    check_k(g, k);
    RankedList out;
    out.method = m;
    if (m == Method::vrank) {
        out.vertices = voterank(g, k);
    } else if (m == Method::random) {
        const auto set = random_candidate(g, k, seed);
        out.vertices.assign(set.vertices().begin(), set.vertices().end());
    } else {
        const auto scores = method_scores(g, m);
        out.vertices = top_k(scores, k);
    }
    return out;
}

} // namespace kmedian
