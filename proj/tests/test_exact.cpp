#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kmedian/centrality.hpp"
#include "kmedian/errors.hpp"
#include "kmedian/exact.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kmedian;
using namespace kmedian::testing;

using Sets = std::vector<std::vector<Vertex>>;

TEST_CASE("binomial") {
    CHECK(binomial(379, 2) == 71631);
    CHECK(binomial(379, 4) == 846153126);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(1000, 500) == UINT64_MAX);
}

TEST_CASE("distance matrix") {
    const DistanceMatrix d(path_graph(5));
    CHECK(d.size() == 5);
    CHECK(d.at(0, 4) == 4);
    CHECK(d.at(3, 1) == 2);
    CHECK(d.max_distance() == 4);
    CHECK_THROWS_AS(DistanceMatrix(Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}})), ArgumentError);
    CHECK_THROWS_AS(DistanceMatrix(path_graph(DistanceMatrix::max_vertices + 1)), BudgetExceededError);
}

TEST_CASE("brute force on a three-vertex path") {
    const auto r = brute_force_kmedian(path_graph(3), 1);
    CHECK(r.optimal_value == 1.0);
    CHECK(r.optimal_farness == 2);
    CHECK(r.optimal_sets == Sets{{1}});
    CHECK(r.optimal_set_count == 1);
    CHECK(r.subsets_examined == 3);
}

TEST_CASE("exact expected values") {
    CHECK(*exact_expected_value(path_graph(3), 1).exact == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(*exact_expected_value(star_graph(4), 1).exact == doctest::Approx(1.6).epsilon(1e-15));
    CHECK_FALSE(exact_expected_value(star_graph(4), 1).sampled.has_value());
}

TEST_CASE("brute force refuses out-of-budget and degenerate requests") {
    ExactOptions small;
    small.budget = 10;
    CHECK_THROWS_AS(brute_force_kmedian(path_graph(6), 3, small), BudgetExceededError);
    CHECK_NOTHROW(brute_force_kmedian(path_graph(5), 2, small));
    CHECK_THROWS_AS(brute_force_kmedian(path_graph(4), 4), ArgumentError);
    CHECK_THROWS_AS(brute_force_kmedian(path_graph(4), 0), ArgumentError);
}

TEST_CASE("incremental enumeration matches the naive per-subset enumerator") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = random_connected_graph(10, seed % 6 + 1, seed);
        const DistanceMatrix d(g);
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto fast = exhaustive_summary(d, k);
            const auto naive = naive_kmedian(g, k);
            CHECK(fast.optimum.optimal_value == naive.value);
            CHECK(fast.optimum.optimal_sets == naive.sets);
            CHECK(fast.optimum.optimal_set_count == naive.sets.size());
            CHECK(fast.optimum.subsets_examined == binomial(10, k));
            CHECK(*fast.expected.exact == doctest::Approx(naive.mean).epsilon(1e-12));
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    const auto g = random_connected_graph(24, 10, 5);
    ExactOptions one, many;
    one.threads = 1;
    many.threads = 7;
    const auto a = brute_force_kmedian(g, 3, one);
    const auto b = brute_force_kmedian(g, 3, many);
    CHECK(a.optimal_value == b.optimal_value);
    CHECK(a.optimal_sets == b.optimal_sets);
    CHECK(*exact_expected_value(g, 3, one).exact == *exact_expected_value(g, 3, many).exact);
}

TEST_CASE("optimal sets are capped but fully counted") {
    ExactOptions opts;
    opts.max_optimal_sets = 3;
    const auto r = brute_force_kmedian(cycle_graph(9), 1, opts);
    CHECK(r.optimal_set_count == 9);
    CHECK(r.optimal_sets == Sets{{0}, {1}, {2}});
}

TEST_CASE("every optimal set evaluates to the optimum") {
    const auto g = petersen_graph();
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto r = brute_force_kmedian(g, k);
        CHECK(r.optimal_sets.size() == r.optimal_set_count);
        for (const auto &s : r.optimal_sets)
            CHECK(avg_distance(g, CandidateSet(s)) == r.optimal_value);
    }
}

TEST_CASE("optimum decreases with k and bounds expectation and heuristics") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_connected_graph(12, seed + 2, 100 + seed);
        const DistanceMatrix d(g);
        double previous = INFINITY;
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto s = exhaustive_summary(d, k);
            CHECK(s.optimum.optimal_value <= previous);
            CHECK(s.optimum.optimal_value <= *s.expected.exact);
            previous = s.optimum.optimal_value;
            for (Method m : all_methods)
                CHECK(avg_distance(g, CandidateSet(rank_vertices(g, m, k, seed).vertices)) >= s.optimum.optimal_value);
        }
    }
}

TEST_CASE("sampled expectation") {
    const auto g = random_connected_graph(30, 20, 8);
    SUBCASE("one sample is that sample's value") {
        const auto e = sampled_expected_value(g, 2, 1, 123);
        const auto &s = *e.sampled;
        CHECK(s.count == 1);
        CHECK(s.stddev == 0.0);
        CHECK(s.standard_error == 0.0);
        CHECK_FALSE(e.exact.has_value());
        CHECK(s.mean > 0.0);
    }
    SUBCASE("same seed gives the same estimate") {
        const auto a = *sampled_expected_value(g, 3, 100, 77).sampled;
        const auto b = *sampled_expected_value(g, 3, 100, 77).sampled;
        CHECK(a.mean == b.mean);
        CHECK(a.stddev == b.stddev);
    }
    SUBCASE("standard error is the deviation over root N") {
        const auto s = *sampled_expected_value(g, 2, 64, 5).sampled;
        CHECK(s.standard_error == doctest::Approx(s.stddev / 8.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(sampled_expected_value(g, 30, 10, 0), ArgumentError);
    CHECK_THROWS_AS(sampled_expected_value(g, 2, 0, 0), ArgumentError);
}

TEST_CASE("sample means land within three standard errors of the exact mean") {
    // A window of 20 seeds has >= 19 hits with probability ~0.998, so a single
    // fixed window can legitimately miss. Check ten disjoint windows instead.
    const auto g = random_connected_graph(40, 30, 12);
    const DistanceMatrix d(g);
    for (std::size_t k = 1; k <= 3; ++k) {
        const double exact = *exact_expected_value(d, k).exact;
        int good_windows = 0;
        for (std::uint64_t window = 0; window < 10; ++window) {
            int inside = 0;
            for (std::uint64_t seed = window * 20; seed < window * 20 + 20; ++seed) {
                const auto s = *sampled_expected_value(g, k, 100, seed).sampled;
                inside += std::abs(s.mean - exact) <= 3.0 * s.standard_error;
            }
            good_windows += inside >= 19;
        }
        CHECK(good_windows >= 9);
    }
}

TEST_CASE("distribution histogram") {
    SUBCASE("three-vertex path") {
        const auto h = distribution_histogram(path_graph(3), 1, 0.0);
        CHECK(h.exact_bins);
        CHECK(h.bins == std::vector<std::pair<double, std::uint64_t>>{{1.0, 1}, {1.5, 2}});
        std::ostringstream out;
        write_plot_data(out, h);
        CHECK(out.str() == "1 1\n1.5 2\n");
    }
    SUBCASE("counts, minimum and mean agree with the exact module") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const auto g = random_connected_graph(14, 6, seed);
            for (std::size_t k = 1; k <= 3; ++k) {
                const auto h = distribution_histogram(g, k, 0.0);
                std::uint64_t total = 0;
                double weighted = 0.0;
                for (auto [value, count] : h.bins) {
                    total += count;
                    weighted += value * static_cast<double>(count);
                }
                CHECK(total == binomial(14, k));
                CHECK(h.bins.front().first == brute_force_kmedian(g, k).optimal_value);
                CHECK(weighted / static_cast<double>(total) ==
                      doctest::Approx(*exact_expected_value(g, k).exact).epsilon(1e-12));
            }
        }
    }
}
