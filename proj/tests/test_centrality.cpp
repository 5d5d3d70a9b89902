#include <doctest.h>

#include <random>
#include <set>

#include "kmedian/centrality.hpp"
#include "kmedian/errors.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kmedian;
using namespace kmedian::testing;

namespace {

std::vector<Graph> assorted_graphs() {
    std::vector<Graph> out{path_graph(3),  path_graph(8),    star_graph(4),          complete_graph(4),
                           cycle_graph(7), cube_graph(),     petersen_graph(),       circulant_graph(15, 6),
                           barabasi_albert_graph(200, 3, 1), barabasi_albert_graph(150, 1, 2)};
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        out.push_back(random_connected_graph(10 + seed * 3, seed * 4, seed));
    return out;
}

using Scores = std::vector<double>;

} // namespace

TEST_CASE("method names round-trip") {
    for (Method m : all_methods)
        CHECK(parse_method(method_name(m)) == m);
    CHECK(parse_method("VRank") == Method::vrank);
    CHECK(parse_method("H-index") == Method::hindex);
    CHECK_FALSE(parse_method("closeness").has_value());
}

TEST_CASE("top_k") {
    CHECK(top_k(Scores{5, 9, 9, 1}, 2) == std::vector<Vertex>{1, 2});
    CHECK(top_k(Scores{5, 9, 9, 1}, 4) == std::vector<Vertex>{1, 2, 0, 3});
    CHECK_THROWS_AS(top_k(Scores{1, 2}, 0), ArgumentError);
    CHECK_THROWS_AS(top_k(Scores{1, 2}, 3), ArgumentError);
}

TEST_CASE("top_k agrees with a full sort and ignores increasing transforms") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 60;
        Scores scores(n);
        for (auto &s : scores)
            s = static_cast<double>(rng() % 8); // plenty of ties
        const std::size_t k = 1 + rng() % n;
        const auto got = top_k(scores, k);
        CHECK(got == sorted_prefix(scores, k));
        Scores transformed = scores;
        for (auto &s : transformed)
            s = 2.0 * s + 1.0;
        CHECK(top_k(transformed, k) == got);
    }
}

TEST_CASE("degree scores") {
    CHECK(degree_scores(star_graph(4)) == Scores{4, 1, 1, 1, 1});
    CHECK(degree_scores(complete_graph(3)) == Scores{2, 2, 2});
}

TEST_CASE("extended degree scores") {
    CHECK(extended_degree_scores(path_graph(3)) == Scores{2, 2, 2});
    CHECK(extended_degree_scores(complete_graph(3)) == Scores{4, 4, 4});
    CHECK(extended_degree_scores(star_graph(4)) == Scores{4, 4, 4, 4, 4});
}

TEST_CASE("pagerank on regular graphs is all ones") {
    for (const auto &g : {cycle_graph(11), cube_graph(), petersen_graph(), complete_graph(6), circulant_graph(20, 6)})
        for (double s : pagerank_scores(g))
            CHECK(std::abs(s - 1.0) < 1e-8);
}

TEST_CASE("pagerank on a four-leaf star solves the two-unknown fixed point") {
    // c = 0.15 + 0.85 * 4 * l,  l = 0.15 + 0.85 * c / 4
    const double leaf = (0.15 + 0.2125 * 0.15) / (1.0 - 0.2125 * 3.4);
    const double center = 0.15 + 3.4 * leaf;
    const auto s = pagerank_scores(star_graph(4));
    CHECK(s[0] == doctest::Approx(center).epsilon(1e-9));
    CHECK(s[0] == doctest::Approx(2.378378).epsilon(1e-6));
    for (Vertex v = 1; v <= 4; ++v)
        CHECK(s[v] == doctest::Approx(leaf).epsilon(1e-9));
    CHECK(s[1] == doctest::Approx(0.655405).epsilon(1e-6));
}

TEST_CASE("pagerank matches a dense linear solve and stays above 1 - damping") {
    for (const auto &g : assorted_graphs()) {
        if (g.vertex_count() > 120)
            continue;
        const auto s = pagerank_scores(g);
        const auto oracle = dense_pagerank(g, 0.85);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            CHECK(s[v] == doctest::Approx(oracle[v]).epsilon(1e-8));
            CHECK(s[v] >= 0.15 - 1e-12);
        }
    }
}

TEST_CASE("pagerank puts the star center first for every size") {
    for (std::size_t leaves = 2; leaves < 30; ++leaves)
        CHECK(top_k(pagerank_scores(star_graph(leaves)), 1).front() == 0);
}

TEST_CASE("pagerank reports non-convergence with its residual") {
    PageRankOptions opts;
    opts.max_iterations = 2;
    try {
        pagerank_scores(star_graph(6), opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError &e) {
        CHECK(e.residual() > opts.tolerance);
    }
    opts.damping = 1.0;
    CHECK_THROWS_AS(pagerank_scores(star_graph(3), opts), ArgumentError);
}

TEST_CASE("voterank first picks") {
    CHECK(voterank(star_graph(4), 1) == std::vector<Vertex>{0});
    CHECK(voterank(path_graph(3), 1) == std::vector<Vertex>{1});
}

TEST_CASE("voterank round state follows the hand trace") {
    const auto g = path_graph(3);
    VoteRanker ranker(g);
    CHECK(ranker.suppression() == doctest::Approx(0.75));
    CHECK(ranker.select_next() == 1);
    CHECK(ranker.incoming()[1] == 0.0);
    CHECK(ranker.voting_power()[1] == 0.0);
    CHECK(ranker.voting_power()[0] == doctest::Approx(0.25));
    CHECK(ranker.voting_power()[2] == doctest::Approx(0.25));
    // both remaining vertices receive votes only from the retired middle
    CHECK(ranker.select_next() == 0);
    CHECK(ranker.incoming()[2] == 0.0);
}

TEST_CASE("voterank keeps power in [0, 1] and retired vertices at zero") {
    for (const auto &g : assorted_graphs()) {
        VoteRanker ranker(g);
        const auto rounds = std::min<std::size_t>(g.vertex_count(), 25);
        for (std::size_t r = 0; r < rounds; ++r) {
            ranker.select_next();
            for (double t : ranker.voting_power())
                CHECK((t >= 0.0 && t <= 1.0));
            for (Vertex w : ranker.selected()) {
                CHECK(ranker.voting_power()[w] == 0.0);
                CHECK(ranker.incoming()[w] == 0.0);
            }
        }
    }
}

TEST_CASE("voterank is prefix-consistent and returns distinct vertices") {
    for (const auto &g : assorted_graphs()) {
        const auto n = g.vertex_count();
        const auto full = voterank(g, n);
        CHECK(std::set<Vertex>(full.begin(), full.end()).size() == n);
        for (std::size_t k : {std::size_t{1}, n / 3 + 1, n / 2 + 1}) {
            const auto part = voterank(g, k);
            CHECK(std::equal(part.begin(), part.end(), full.begin()));
        }
    }
    CHECK_THROWS_AS(voterank(path_graph(3), 4), ArgumentError);
    CHECK_THROWS_AS(voterank(path_graph(3), 0), ArgumentError);
}

TEST_CASE("voterank honors an explicit suppression factor") {
    // with f = 0 the star leaves keep full power and the center is followed
    // by leaves in id order
    CHECK(voterank(star_graph(4), 3, 0.0) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("core numbers") {
    CHECK(core_numbers(complete_graph(3)) == std::vector<std::uint32_t>{2, 2, 2});
    CHECK(core_numbers(star_graph(4)) == std::vector<std::uint32_t>{1, 1, 1, 1, 1});
    CHECK(core_numbers(complete_graph(4)) == std::vector<std::uint32_t>{3, 3, 3, 3});
    CHECK(core_numbers(path_graph(6)) == std::vector<std::uint32_t>(6, 1));
}

TEST_CASE("core numbers match an independent peeling and form valid cores") {
    for (const auto &g : assorted_graphs()) {
        const auto c = core_numbers(g);
        CHECK(c == naive_core_numbers(g));
        // every vertex of the reported i-core has at least i neighbors inside it
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            std::size_t inside = 0;
            for (Vertex u : g.neighbors(v))
                inside += c[u] >= c[v];
            CHECK(inside >= c[v]);
        }
    }
}

TEST_CASE("coreness and extended coreness") {
    CHECK(coreness_scores(complete_graph(3)) == Scores{4, 4, 4});
    CHECK(coreness_scores(star_graph(4)) == Scores{4, 1, 1, 1, 1});
    CHECK(extended_coreness_scores(complete_graph(3)) == Scores{8, 8, 8});
    CHECK(extended_coreness_scores(star_graph(4)) == Scores{4, 4, 4, 4, 4});
    CHECK(coreness_scores(path_graph(3)) == Scores{1, 2, 1});
    CHECK(extended_coreness_scores(path_graph(3)) == Scores{2, 2, 2});
}

TEST_CASE("coreness matches recomputation from the independent peeling") {
    for (const auto &g : assorted_graphs()) {
        const auto c = naive_core_numbers(g);
        const auto scores = coreness_scores(g);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            double sum = 0;
            for (Vertex u : g.neighbors(v))
                sum += c[u];
            CHECK(scores[v] == sum);
        }
    }
}

TEST_CASE("h-index") {
    CHECK(h_index({13, 16, 27, 9, 2}) == 4);
    CHECK(h_index({}) == 0);
    CHECK(h_index({1, 1, 1, 1}) == 1);
    CHECK(h_index({5, 5, 5}) == 3);
    CHECK(h_index_scores(star_graph(4))[0] == 1);
    CHECK(h_index_scores(complete_graph(4)) == Scores{3, 3, 3, 3});
}

TEST_CASE("core number <= h-index <= degree") {
    for (const auto &g : assorted_graphs()) {
        const auto c = core_numbers(g);
        const auto h = h_index_scores(g);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            CHECK(c[v] <= h[v]);
            CHECK(h[v] <= static_cast<double>(g.degree(v)));
        }
    }
}

TEST_CASE("random_candidate") {
    const auto g = path_graph(6);
    const auto all = random_candidate(g, 6, 42);
    std::vector<Vertex> sorted(all.vertices().begin(), all.vertices().end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
    const auto a = random_candidate(g, 3, 9);
    const auto b = random_candidate(g, 3, 9);
    CHECK(std::equal(a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end()));
    CHECK_THROWS_AS(random_candidate(g, 7, 0), ArgumentError);
}

TEST_CASE("random singletons are uniform by a chi-square test") {
    const auto g = cycle_graph(10);
    std::vector<double> counts(10, 0.0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        ++counts[random_candidate(g, 1, static_cast<std::uint64_t>(i)).vertices()[0]];
    const double expected = draws / 10.0;
    double chi2 = 0.0;
    for (double c : counts)
        chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi_square_survival(chi2, 9) > 0.001);
}

TEST_CASE("chi-square survival helper sanity") {
    // 95th percentile with 9 degrees of freedom is 16.919
    CHECK(chi_square_survival(16.919, 9) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(chi_square_survival(2.0, 9) == doctest::Approx(0.99146).epsilon(1e-3));
}

TEST_CASE("score-based rankings are non-increasing along the list") {
    for (const auto &g : assorted_graphs())
        for (Method m : deterministic_methods) {
            if (m == Method::vrank)
                continue;
            const auto scores = method_scores(g, m);
            const auto list = rank_vertices(g, m, g.vertex_count()).vertices;
            for (std::size_t i = 1; i < list.size(); ++i) {
                CHECK(scores[list[i - 1]] >= scores[list[i]]);
                if (scores[list[i - 1]] == scores[list[i]])
                    CHECK(list[i - 1] < list[i]);
            }
        }
}

TEST_CASE("method_scores refuses selection-only methods") {
    CHECK_THROWS_AS(method_scores(path_graph(3), Method::vrank), ArgumentError);
    CHECK_THROWS_AS(method_scores(path_graph(3), Method::random), ArgumentError);
}

TEST_CASE("three-vertex path first picks per method") {
    const auto g = path_graph(3);
    for (Method m : {Method::degree, Method::prank, Method::vrank, Method::core})
        CHECK(rank_vertices(g, m, 1).vertices == std::vector<Vertex>{1});
    // these scores are constant on the path, so the tie goes to vertex 0
    for (Method m : {Method::degree_plus, Method::core_plus, Method::hindex})
        CHECK(rank_vertices(g, m, 1).vertices == std::vector<Vertex>{0});
}
