#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kmedian/graph.hpp"

namespace kmedian {

/// All-pairs hop distances as a dense |V| x |V| matrix of 16-bit entries.
class DistanceMatrix {
public:
    static constexpr std::size_t max_vertices = 5000;

    /// One BFS per vertex. Throws BudgetExceededError above max_vertices and
    /// ArgumentError for disconnected graphs.
    explicit DistanceMatrix(const Graph &g);

    std::size_t size() const noexcept { return n_; }
    std::uint16_t at(Vertex u, Vertex v) const noexcept { return data_[std::size_t{u} * n_ + v]; }
    std::span<const std::uint16_t> row(Vertex u) const noexcept { return {data_.data() + std::size_t{u} * n_, n_}; }
    std::uint16_t max_distance() const noexcept { return diameter_; }

private:
    std::size_t n_ = 0;
    std::uint16_t diameter_ = 0;
    std::vector<std::uint16_t> data_;
};

struct ExactOptions {
    /// Largest C(|V|, k) enumerated before refusing.
    std::uint64_t budget = 2'000'000'000;
    /// Optimal sets kept, lexicographically smallest first.
    std::size_t max_optimal_sets = 1000;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct ExactResult {
    std::size_t k = 0;
    double optimal_value = 0.0;
    std::uint64_t optimal_farness = 0;
    std::vector<std::vector<Vertex>> optimal_sets;
    /// Number of optimal sets found, which can exceed optimal_sets.size().
    std::uint64_t optimal_set_count = 0;
    std::uint64_t subsets_examined = 0;
};

struct SampleEstimate {
    double mean = 0.0;
    std::size_t count = 0;
    double stddev = 0.0;
    double standard_error = 0.0;
};

struct ExpectedValue {
    std::size_t k = 0;
    std::optional<double> exact;
    std::optional<SampleEstimate> sampled;
};

/// Distribution of A(S) over every k-subset as (value, count) bins.
struct DistributionHistogram {
    std::size_t k = 0;
    /// True when every distinct A(S) value has its own bin; otherwise bins are
    /// [lo, lo + bin_width) keyed by their lower edge.
    bool exact_bins = true;
    double bin_width = 0.0;
    std::vector<std::pair<double, std::uint64_t>> bins;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/**
 * Exhaustive k-median by lexicographic enumeration of all k-subsets.
 *
 * Each recursion level keeps the running per-vertex minimum distance to the
 * chosen prefix, so a leaf costs one O(|V|) min-and-sum pass. Work is split
 * across threads by the first element of the subset; results do not depend
 * on the thread count.
 */
ExactResult brute_force_kmedian(const Graph &g, std::size_t k, const ExactOptions &options = {});
ExactResult brute_force_kmedian(const DistanceMatrix &d, std::size_t k, const ExactOptions &options = {});

/// Mean of A(S) over all k-subsets, exactly (integer farness total).
ExpectedValue exact_expected_value(const Graph &g, std::size_t k, const ExactOptions &options = {});
ExpectedValue exact_expected_value(const DistanceMatrix &d, std::size_t k, const ExactOptions &options = {});

/// Mean of A(S_i) over `samples` uniform k-subsets from Rng(seed). The
/// standard deviation uses the n - 1 denominator and is 0 for one sample.
ExpectedValue sampled_expected_value(const Graph &g, std::size_t k, std::size_t samples = 100, std::uint64_t seed = 0);

/// Optimum and exact mean from a single enumeration pass.
struct ExhaustiveSummary {
    ExactResult optimum;
    ExpectedValue expected;
};

ExhaustiveSummary exhaustive_summary(const DistanceMatrix &d, std::size_t k, const ExactOptions &options = {});

/// Distinct A(S) values up to this count get exact bins.
inline constexpr std::size_t max_exact_bins = 1'000'000;

DistributionHistogram distribution_histogram(const Graph &g, std::size_t k, double bin_width,
                                             const ExactOptions &options = {});
DistributionHistogram distribution_histogram(const DistanceMatrix &d, std::size_t k, double bin_width,
                                             const ExactOptions &options = {});

/// "value count" per line, 6 significant digits, LF endings.
void write_plot_data(std::ostream &out, const DistributionHistogram &h);

} // namespace kmedian
