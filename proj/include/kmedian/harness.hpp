#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kmedian/centrality.hpp"
#include "kmedian/exact.hpp"
#include "kmedian/graph.hpp"

namespace kmedian {

/// Environment variable naming the directory that relative dataset paths
/// are resolved against.
inline constexpr const char *data_dir_env = "KMEDIAN_DATA_DIR";

/// `path` itself when it exists, else `$KMEDIAN_DATA_DIR/path` when that
/// exists, else `path` unchanged.
std::filesystem::path resolve_dataset_path(const std::filesystem::path &path);

/// One manifest line: `name path [vertices edges]`. Sizes are after LCC.
struct DatasetEntry {
    std::string name;
    std::filesystem::path path;
    std::optional<std::size_t> expected_vertices;
    std::optional<std::size_t> expected_edges;
};

std::vector<DatasetEntry> parse_manifest(std::istream &in);
std::vector<DatasetEntry> read_manifest(const std::filesystem::path &path);

struct ExperimentSpec {
    /// Manifest names or edge-list paths.
    std::vector<std::string> datasets;
    std::filesystem::path manifest;
    std::vector<Method> methods{all_methods.begin(), all_methods.end()};
    std::size_t k_max = 100;
    std::size_t sample_count = 100;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "results";
    /// false writes 0 for every time so reruns are byte-identical.
    bool record_timing = true;
    /// When > 0, brute-force M*(k) and E*(k) for k up to this value on graphs
    /// small enough for the exact module.
    std::size_t exact_k_max = 0;
    std::uint64_t exact_budget = ExactOptions{}.budget;
};

/**
 * Reads a `key = value` spec. Keys: datasets (comma-separated), manifest,
 * methods (comma-separated, or "all"), k_max, n, seed, outdir, timing
 * (on/off), exact_k_max, exact_budget. `#` starts a comment.
 * Throws ArgumentError on unknown keys or bad values.
 */
ExperimentSpec parse_spec(std::istream &in);
ExperimentSpec read_spec_file(const std::filesystem::path &path);

/// M_method(k) for one network. For `random` the value is the sample mean
/// E(k) and farness is the rounded mean farness.
struct ExperimentRecord {
    std::string network;
    Method method = Method::degree;
    std::size_t k = 0;
    double avg_distance = 0.0;
    std::uint64_t farness = 0;
    double wall_time_s = 0.0;

    friend bool operator==(const ExperimentRecord &, const ExperimentRecord &) = default;
};

/// scoring_s covers producing the length-k_max ranking (for random: drawing
/// and evaluating every sample); total_s adds the prefix evaluations.
struct MethodTiming {
    std::string network;
    Method method = Method::degree;
    double scoring_s = 0.0;
    double total_s = 0.0;
};

struct NetworkInfo {
    std::string name;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    DegreeStats degrees;
};

struct OptimumPoint {
    std::string network;
    std::size_t k = 0;
    double optimal_value = 0.0;
    double expected_value = 0.0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    std::vector<MethodTiming> timings;
    std::vector<NetworkInfo> networks;
    std::vector<OptimumPoint> optima;
    /// (dataset, message) for datasets that could not be processed.
    std::vector<std::pair<std::string, std::string>> failures;
};

/// Runs every method of `spec` on an already-loaded graph.
ExperimentResult run_network(const std::string &name, const Graph &g, const ExperimentSpec &spec);

/// Loads each dataset and runs it; a failing dataset is reported in
/// `failures` and the run moves on.
ExperimentResult run_experiment(const ExperimentSpec &spec);

enum class Reference { optimal, best_heuristic };

struct ComparisonRow {
    std::string network;
    Method method = Method::degree;
    /// Mean over k of 100 * (M_method(k) - reference(k)) / reference(k).
    double error_percent = 0.0;
    /// 1-based within the network; ties go to the earlier method.
    std::size_t rank = 0;
    std::size_t points = 0;
};

struct ComparisonTable {
    Reference reference = Reference::best_heuristic;
    std::vector<ComparisonRow> rows;
};

using OptimumMap = std::map<std::pair<std::string, std::size_t>, double>;

/// Error against M*(k). Per network, uses the records with k up to the
/// largest k present in `optimum`; throws ArgumentError if one of those k has
/// no optimum entry. Networks without any optimum are left out.
ComparisonTable error_to_optimal(std::span<const ExperimentRecord> records, const OptimumMap &optimum);

/// Error against the best value over all recorded methods at each (network, k).
ComparisonTable error_to_best(std::span<const ExperimentRecord> records);

struct OverallRow {
    Method method = Method::degree;
    double error_percent = 0.0;
};

/// Per-method mean error to best over every (network, k), ascending.
std::vector<OverallRow> overall_ranking(std::span<const ExperimentRecord> records);

struct ShareRow {
    std::string network;
    Method method = Method::degree;
    /// Percent of k values with M_method(k) <= (1 + x/100) * best(k), per threshold x.
    std::vector<double> shares;
};

struct ShareTable {
    std::vector<double> thresholds;
    std::vector<ShareRow> rows;
};

inline constexpr std::array<double, 4> default_share_thresholds{0.0, 1.0, 10.0, 100.0};

ShareTable within_percent_shares(std::span<const ExperimentRecord> records,
                                 std::span<const double> thresholds = default_share_thresholds);

/// Best deterministic method at one (network, k), with random's E(k) when recorded.
struct SuperPoint {
    std::string network;
    std::size_t k = 0;
    Method method = Method::degree;
    double value = 0.0;
    std::uint64_t farness = 0;
    std::optional<double> expected;

    friend bool operator==(const SuperPoint &, const SuperPoint &) = default;
};

std::vector<SuperPoint> super_algorithm(std::span<const ExperimentRecord> records);

/// Inverse view of super_algorithm's output (winner rows plus random rows).
std::vector<ExperimentRecord> super_to_records(std::span<const SuperPoint> points);

struct CostRow {
    std::string network;
    Method method = Method::degree;
    double scoring_s = 0.0;
    /// scoring_s relative to degree on the same network (0 when unavailable).
    double cost_factor = 0.0;
};

std::vector<CostRow> cost_factors(std::span<const MethodTiming> timings);

/// Sorts by (network, method order, k).
void sort_records(std::vector<ExperimentRecord> &records);

inline constexpr const char *records_csv_header = "network,method,k,avg_distance,farness,wall_time_s";

/// Header plus one row per record; floats with 6 significant digits.
void write_records_csv(std::ostream &out, std::span<const ExperimentRecord> records);
/// Throws ParseError on a malformed header or row.
std::vector<ExperimentRecord> read_records_csv(std::istream &in);

/**
 * Writes records.csv, networks.csv, timing.csv, cost.csv, error_to_best.csv,
 * overall.csv, within_shares.csv, super.csv, optima.csv and
 * error_to_optimal.csv (when optima exist), plus plot/<network>.dat with
 * (k, method, value) rows. Creates `dir` as needed.
 */
void emit_tables(const ExperimentResult &result, const std::filesystem::path &dir);

/// printf("%.6g") of v.
std::string format_real(double v);

} // namespace kmedian
