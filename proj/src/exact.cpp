#include "kmedian/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>

#include "kmedian/errors.hpp"
#include "kmedian/evaluation.hpp"
#include "kmedian/random.hpp"

namespace kmedian {

namespace {

__extension__ typedef unsigned __int128 uint128;

constexpr std::size_t dense_histogram_limit = std::size_t{1} << 22;

/// Per-worker accumulator of one exhaustive pass.
struct ScanState {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::uint64_t best_count = 0;
    std::vector<std::vector<Vertex>> best_sets;
    uint128 total = 0;
    std::uint64_t leaves = 0;
    bool want_histogram = false;
    std::vector<std::uint64_t> dense_hist;
    std::unordered_map<std::uint32_t, std::uint64_t> sparse_hist;
};

class SubsetScanner {
public:
    SubsetScanner(const DistanceMatrix &d, std::size_t k, std::size_t max_sets, ScanState &state)
        : d_(d), n_(d.size()), k_(k), max_sets_(max_sets), state_(state), chosen_(k),
          levels_(k > 1 ? (k - 1) * n_ : 0) {}

    // Every subset whose smallest element is `first`.
    void scan_first(Vertex first) {
        chosen_[0] = first;
        if (k_ == 1) {
            const auto row = d_.row(first);
            std::uint32_t f = 0;
            for (std::size_t v = 0; v < n_; ++v)
                f += row[v];
            visit(f, 1);
            return;
        }
        const auto row = d_.row(first);
        std::copy(row.begin(), row.end(), levels_.begin());
        descend(1, first + 1);
    }

private:
    void descend(std::size_t depth, Vertex start) {
        const std::uint16_t *prefix = levels_.data() + (depth - 1) * n_;
        if (depth == k_ - 1) {
            for (Vertex c = start; c < n_; ++c) {
                const std::uint16_t *row = d_.row(c).data();
                std::uint32_t f = 0;
                for (std::size_t v = 0; v < n_; ++v)
                    f += std::min(prefix[v], row[v]);
                chosen_[depth] = c;
                visit(f, k_);
            }
            return;
        }
        std::uint16_t *next = levels_.data() + depth * n_;
        const auto last = static_cast<Vertex>(n_ - (k_ - depth));
        for (Vertex c = start; c <= last; ++c) {
            const std::uint16_t *row = d_.row(c).data();
            for (std::size_t v = 0; v < n_; ++v)
                next[v] = std::min(prefix[v], row[v]);
            chosen_[depth] = c;
            descend(depth + 1, c + 1);
        }
    }

    void visit(std::uint32_t f, std::size_t size) {
        ++state_.leaves;
        state_.total += f;
        if (state_.want_histogram) {
            if (!state_.dense_hist.empty())
                ++state_.dense_hist[f];
            else
                ++state_.sparse_hist[f];
        }
        if (f > state_.best)
            return;
        if (f < state_.best) {
            state_.best = f;
            state_.best_count = 0;
            state_.best_sets.clear();
        }
        ++state_.best_count;
        if (state_.best_sets.size() < max_sets_)
            state_.best_sets.emplace_back(chosen_.begin(), chosen_.begin() + static_cast<std::ptrdiff_t>(size));
    }

    const DistanceMatrix &d_;
    std::size_t n_;
    std::size_t k_;
    std::size_t max_sets_;
    ScanState &state_;
    std::vector<Vertex> chosen_;
    std::vector<std::uint16_t> levels_;
};

ScanState scan_all_subsets(const DistanceMatrix &d, std::size_t k, const ExactOptions &options, bool want_histogram) {
    const auto n = d.size();
    if (k == 0 || k >= n)
        throw ArgumentError("k must be in [1, " + std::to_string(n - 1) + "] for exhaustive evaluation");
    const auto total = binomial(n, k);
    if (total > options.budget)
        throw BudgetExceededError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") = " +
                                  (total == std::numeric_limits<std::uint64_t>::max() ? std::string("overflow")
                                                                                      : std::to_string(total)) +
                                  " subsets exceeds the enumeration budget of " + std::to_string(options.budget));

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n - k + 1));

    const std::size_t hist_bound = (n - k) * std::size_t{d.max_distance()} + 1;
    std::vector<ScanState> states(threads);
    for (auto &s : states) {
        s.want_histogram = want_histogram;
        if (want_histogram && hist_bound <= dense_histogram_limit)
            s.dense_hist.assign(hist_bound, 0);
    }

    std::atomic<std::size_t> next_first{0};
    auto work = [&](ScanState &state) {
        SubsetScanner scanner(d, k, options.max_optimal_sets, state);
        for (std::size_t first = next_first++; first + k <= n; first = next_first++)
            scanner.scan_first(static_cast<Vertex>(first));
    };
    if (threads == 1) {
        work(states[0]);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] { work(states[t]); });
    }

    ScanState merged = std::move(states[0]);
    for (std::size_t t = 1; t < states.size(); ++t) {
        auto &s = states[t];
        merged.leaves += s.leaves;
        merged.total += s.total;
        if (s.best < merged.best) {
            merged.best = s.best;
            merged.best_count = s.best_count;
            merged.best_sets = std::move(s.best_sets);
        } else if (s.best == merged.best) {
            merged.best_count += s.best_count;
            merged.best_sets.insert(merged.best_sets.end(), s.best_sets.begin(), s.best_sets.end());
        }
        if (want_histogram) {
            if (!merged.dense_hist.empty()) {
                for (std::size_t f = 0; f < s.dense_hist.size(); ++f)
                    merged.dense_hist[f] += s.dense_hist[f];
            } else {
                for (auto [f, c] : s.sparse_hist)
                    merged.sparse_hist[f] += c;
            }
        }
    }
    std::sort(merged.best_sets.begin(), merged.best_sets.end());
    if (merged.best_sets.size() > options.max_optimal_sets)
        merged.best_sets.resize(options.max_optimal_sets);
    return merged;
}

} // namespace

DistanceMatrix::DistanceMatrix(const Graph &g) : n_(g.vertex_count()) {
    if (n_ > max_vertices)
        throw BudgetExceededError("distance matrix limited to " + std::to_string(max_vertices) + " vertices, graph has " +
                                  std::to_string(n_));
    constexpr std::uint16_t unreached = std::numeric_limits<std::uint16_t>::max();
    data_.assign(n_ * n_, unreached);
    std::vector<Vertex> queue(n_);
    for (Vertex s = 0; s < n_; ++s) {
        std::uint16_t *dist = data_.data() + std::size_t{s} * n_;
        std::size_t head = 0, tail = 0;
        dist[s] = 0;
        queue[tail++] = s;
        while (head < tail) {
            const Vertex u = queue[head++];
            for (Vertex w : g.neighbors(u))
                if (dist[w] == unreached) {
                    dist[w] = static_cast<std::uint16_t>(dist[u] + 1);
                    diameter_ = std::max(diameter_, dist[w]);
                    queue[tail++] = w;
                }
        }
        if (tail != n_)
            throw ArgumentError("distance matrix requires a connected graph");
    }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    uint128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
        if (result > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

namespace {

ExactResult to_exact_result(ScanState &scan, const DistanceMatrix &d, std::size_t k) {
    ExactResult r;
    r.k = k;
    r.optimal_farness = scan.best;
    r.optimal_value = static_cast<double>(scan.best) / static_cast<double>(d.size() - k);
    r.optimal_sets = std::move(scan.best_sets);
    r.optimal_set_count = scan.best_count;
    r.subsets_examined = scan.leaves;
    return r;
}

ExpectedValue to_expected_value(const ScanState &scan, const DistanceMatrix &d, std::size_t k) {
    ExpectedValue e;
    e.k = k;
    const long double denominator = static_cast<long double>(scan.leaves) * static_cast<long double>(d.size() - k);
    e.exact = static_cast<double>(static_cast<long double>(scan.total) / denominator);
    return e;
}

} // namespace

ExactResult brute_force_kmedian(const DistanceMatrix &d, std::size_t k, const ExactOptions &options) {
    auto scan = scan_all_subsets(d, k, options, false);
    return to_exact_result(scan, d, k);
}

ExactResult brute_force_kmedian(const Graph &g, std::size_t k, const ExactOptions &options) {
    return brute_force_kmedian(DistanceMatrix(g), k, options);
}

ExpectedValue exact_expected_value(const DistanceMatrix &d, std::size_t k, const ExactOptions &options) {
    const auto scan = scan_all_subsets(d, k, options, false);
    return to_expected_value(scan, d, k);
}

ExhaustiveSummary exhaustive_summary(const DistanceMatrix &d, std::size_t k, const ExactOptions &options) {
    auto scan = scan_all_subsets(d, k, options, false);
    ExhaustiveSummary out;
    out.expected = to_expected_value(scan, d, k);
    out.optimum = to_exact_result(scan, d, k);
    return out;
}

ExpectedValue exact_expected_value(const Graph &g, std::size_t k, const ExactOptions &options) {
    return exact_expected_value(DistanceMatrix(g), k, options);
}

ExpectedValue sampled_expected_value(const Graph &g, std::size_t k, std::size_t samples, std::uint64_t seed) {
    const auto n = g.vertex_count();
    if (k == 0 || k >= n)
        throw ArgumentError("k must be in [1, " + std::to_string(n - 1) + "] for sampling");
    if (samples == 0)
        throw ArgumentError("sample count must be positive");
    Rng rng(seed);
    SubsetSampler sampler(n);
    BfsWorkspace ws(g);
    std::vector<Vertex> draw;
    std::vector<double> values;
    values.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        sampler.draw(k, rng, draw);
        values.push_back(evaluate(ws, CandidateSet(draw)).avg_distance);
    }
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(samples);
    double sq = 0.0;
    for (double v : values)
        sq += (v - mean) * (v - mean);

    SampleEstimate est;
    est.mean = mean;
    est.count = samples;
    est.stddev = samples > 1 ? std::sqrt(sq / static_cast<double>(samples - 1)) : 0.0;
    est.standard_error = est.stddev / std::sqrt(static_cast<double>(samples));
    ExpectedValue e;
    e.k = k;
    e.sampled = est;
    return e;
}

DistributionHistogram distribution_histogram(const DistanceMatrix &d, std::size_t k, double bin_width,
                                             const ExactOptions &options) {
    const auto scan = scan_all_subsets(d, k, options, true);
    const double denom = static_cast<double>(d.size() - k);
    std::map<std::uint32_t, std::uint64_t> counts;
    if (!scan.dense_hist.empty()) {
        for (std::size_t f = 0; f < scan.dense_hist.size(); ++f)
            if (scan.dense_hist[f])
                counts.emplace(static_cast<std::uint32_t>(f), scan.dense_hist[f]);
    } else {
        counts.insert(scan.sparse_hist.begin(), scan.sparse_hist.end());
    }

    DistributionHistogram h;
    h.k = k;
    if (counts.size() <= max_exact_bins) {
        h.exact_bins = true;
        for (auto [f, c] : counts)
            h.bins.emplace_back(static_cast<double>(f) / denom, c);
        return h;
    }
    if (!(bin_width > 0.0))
        throw ArgumentError("more than " + std::to_string(max_exact_bins) + " distinct values; a positive bin width is required");
    h.exact_bins = false;
    h.bin_width = bin_width;
    std::map<std::int64_t, std::uint64_t> binned;
    for (auto [f, c] : counts)
        binned[static_cast<std::int64_t>(std::floor(static_cast<double>(f) / denom / bin_width))] += c;
    for (auto [b, c] : binned)
        h.bins.emplace_back(static_cast<double>(b) * bin_width, c);
    return h;
}

DistributionHistogram distribution_histogram(const Graph &g, std::size_t k, double bin_width,
                                             const ExactOptions &options) {
    return distribution_histogram(DistanceMatrix(g), k, bin_width, options);
}

void write_plot_data(std::ostream &out, const DistributionHistogram &h) {
    char buf[64];
    for (auto [value, count] : h.bins) {
        std::snprintf(buf, sizeof buf, "%.6g", value);
        out << buf << ' ' << count << '\n';
    }
}

} // namespace kmedian
