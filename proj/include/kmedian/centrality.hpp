#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kmedian/evaluation.hpp"
#include "kmedian/graph.hpp"

namespace kmedian {

/// The eight selection heuristics. Declaration order is the canonical
/// enumeration order used for table columns and rank tie-breaks.
enum class Method : std::uint8_t { degree, degree_plus, prank, vrank, core, core_plus, hindex, random };

inline constexpr std::array<Method, 8> all_methods{Method::degree, Method::degree_plus, Method::prank,
                                                   Method::vrank,  Method::core,        Method::core_plus,
                                                   Method::hindex, Method::random};

inline constexpr std::array<Method, 7> deterministic_methods{Method::degree, Method::degree_plus, Method::prank,
                                                             Method::vrank,  Method::core,        Method::core_plus,
                                                             Method::hindex};

/// "degree", "degree+", "prank", "vrank", "core", "core+", "hindex", "random".
std::string_view method_name(Method m);

/// Accepts the canonical names case-insensitively plus the display spellings
/// "PRank", "VRank" and "H-index".
std::optional<Method> parse_method(std::string_view name);

using ScoreVector = std::vector<double>;

struct RankedList {
    Method method = Method::degree;
    std::vector<Vertex> vertices;
};

/// The k highest scores, non-increasing; equal scores by ascending vertex id.
std::vector<Vertex> top_k(std::span<const double> scores, std::size_t k);

ScoreVector degree_scores(const Graph &g);

/// deg+(v): sum of neighbor degrees.
ScoreVector extended_degree_scores(const Graph &g);

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 200;
};

/**
 * Unnormalized PageRank: the fixed point of
 *   PR(v) = (1 - d) + d * sum_{u in N(v)} PR(u) / deg(u)
 * by synchronous sweeps from PR = 1. Stops once the largest per-vertex change
 * drops below `tolerance`; throws ConvergenceError after `max_iterations`.
 */
ScoreVector pagerank_scores(const Graph &g, const PageRankOptions &options = {});

/**
 * Round-by-round VoteRank selection.
 *
 * Every vertex starts with voting power 1. A round recomputes each
 * unselected vertex's incoming votes as the sum of its neighbors' power,
 * elects the maximum (lowest id on ties), zeroes the winner's votes and
 * power, and lowers each neighbor's power by f, never below zero.
 * f defaults to 1 / <d> and stays fixed for the whole run.
 */
class VoteRanker {
public:
    explicit VoteRanker(const Graph &g, std::optional<double> suppression = std::nullopt);

    /// Runs one round. Throws ArgumentError once every vertex is selected.
    Vertex select_next();

    std::span<const double> incoming() const noexcept { return incoming_; }
    std::span<const double> voting_power() const noexcept { return power_; }
    double suppression() const noexcept { return suppression_; }
    std::span<const Vertex> selected() const noexcept { return order_; }

private:
    const Graph *graph_;
    std::vector<double> incoming_;
    std::vector<double> power_;
    std::vector<char> taken_;
    std::vector<Vertex> order_;
    double suppression_;
};

std::vector<Vertex> voterank(const Graph &g, std::size_t k, std::optional<double> suppression = std::nullopt);

/// k-core number of every vertex (bucket peeling).
std::vector<std::uint32_t> core_numbers(const Graph &g);

/// C(v): sum of neighbor core numbers.
ScoreVector coreness_scores(const Graph &g);

/// C+(v): sum of neighbor C values.
ScoreVector extended_coreness_scores(const Graph &g);

/// Largest n such that at least n of the values are >= n.
std::size_t h_index(std::vector<std::size_t> values);

ScoreVector h_index_scores(const Graph &g);

/// k distinct vertices, uniform without replacement, from Rng(seed).
CandidateSet random_candidate(const Graph &g, std::size_t k, std::uint64_t seed);

/// Scores for the score-based methods. Throws ArgumentError for vrank and random.
ScoreVector method_scores(const Graph &g, Method m);

/// Length-k selection for any method. `seed` is only read by random.
RankedList rank_vertices(const Graph &g, Method m, std::size_t k, std::uint64_t seed = 0);

} // namespace kmedian
