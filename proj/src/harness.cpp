#include "kmedian/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmedian/errors.hpp"
#include "kmedian/evaluation.hpp"
#include "kmedian/random.hpp"

namespace kmedian {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string_view::npos)
            end = s.size();
        auto item = trim(s.substr(start, end - start));
        if (!item.empty())
            out.push_back(std::move(item));
        start = end + 1;
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string &key, const std::string &value) {
    std::uint64_t out = 0;
    std::istringstream in(value);
    if (value.empty() || value.front() == '-' || !(in >> out) || !in.eof())
        throw ArgumentError("spec key '" + key + "' expects a non-negative integer, got '" + value + "'");
    return out;
}

bool parse_flag(const std::string &key, const std::string &value) {
    if (value == "on" || value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "off" || value == "false" || value == "0" || value == "no")
        return false;
    throw ArgumentError("spec key '" + key + "' expects on/off, got '" + value + "'");
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_row(const std::string &line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

std::string file_safe(const std::string &name) {
    std::string out = name;
    for (char &c : out)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
            c = '_';
    return out;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

using PointKey = std::pair<std::string, std::size_t>;

std::map<PointKey, double> best_values(std::span<const ExperimentRecord> records) {
    std::map<PointKey, double> best;
    for (const auto &r : records) {
        auto [it, inserted] = best.emplace(PointKey{r.network, r.k}, r.avg_distance);
        if (!inserted)
            it->second = std::min(it->second, r.avg_distance);
    }
    return best;
}

double relative_error_percent(double value, double reference) {
    return reference > 0.0 ? 100.0 * (value - reference) / reference : 0.0;
}

// Mean error per (network, method), ranked within each network.
ComparisonTable rank_rows(Reference reference, std::map<std::pair<std::string, Method>, std::pair<double, std::size_t>> sums) {
    ComparisonTable table;
    table.reference = reference;
    for (const auto &[key, acc] : sums) {
        ComparisonRow row;
        row.network = key.first;
        row.method = key.second;
        row.points = acc.second;
        row.error_percent = acc.second ? acc.first / static_cast<double>(acc.second) : 0.0;
        table.rows.push_back(row);
    }
    auto by_network_then_score = [](const ComparisonRow &a, const ComparisonRow &b) {
        if (a.network != b.network)
            return a.network < b.network;
        if (a.error_percent != b.error_percent)
            return a.error_percent < b.error_percent;
        return a.method < b.method;
    };
    std::sort(table.rows.begin(), table.rows.end(), by_network_then_score);
    for (std::size_t i = 0; i < table.rows.size(); ++i)
        table.rows[i].rank = (i > 0 && table.rows[i - 1].network == table.rows[i].network) ? table.rows[i - 1].rank + 1 : 1;
    std::sort(table.rows.begin(), table.rows.end(), [](const ComparisonRow &a, const ComparisonRow &b) {
        return std::tie(a.network, a.method) < std::tie(b.network, b.method);
    });
    return table;
}

} // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::filesystem::path resolve_dataset_path(const std::filesystem::path &path) {
    if (std::filesystem::exists(path))
        return path;
    if (const char *root = std::getenv(data_dir_env); root && *root && path.is_relative()) {
        auto candidate = std::filesystem::path(root) / path;
        if (std::filesystem::exists(candidate))
            return candidate;
    }
    return path;
}

std::vector<DatasetEntry> parse_manifest(std::istream &in) {
    std::vector<DatasetEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        std::istringstream fields(text);
        DatasetEntry e;
        std::string path;
        if (!(fields >> e.name >> path))
            throw ParseError(line_no, "manifest line needs a name and a path");
        e.path = path;
        std::size_t v = 0, m = 0;
        if (fields >> v) {
            if (!(fields >> m))
                throw ParseError(line_no, "manifest sizes need both vertices and edges");
            e.expected_vertices = v;
            e.expected_edges = m;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<DatasetEntry> read_manifest(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw DatasetError("cannot open manifest " + path.string());
    return parse_manifest(in);
}

ExperimentSpec parse_spec(std::istream &in) {
    ExperimentSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto text = trim(line);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("spec line without '=': " + text);
        const auto key = trim(std::string_view(text).substr(0, eq));
        const auto value = trim(std::string_view(text).substr(eq + 1));
        if (key == "datasets" || key == "dataset") {
            spec.datasets = split_list(value);
        } else if (key == "manifest") {
            spec.manifest = value;
        } else if (key == "methods") {
            spec.methods.clear();
            for (const auto &name : split_list(value)) {
                if (name == "all") {
                    spec.methods.assign(all_methods.begin(), all_methods.end());
                    continue;
                }
                auto m = parse_method(name);
                if (!m)
                    throw ArgumentError("unknown method '" + name + "'");
                if (std::find(spec.methods.begin(), spec.methods.end(), *m) == spec.methods.end())
                    spec.methods.push_back(*m);
            }
        } else if (key == "k_max") {
            spec.k_max = parse_unsigned(key, value);
        } else if (key == "n") {
            spec.sample_count = parse_unsigned(key, value);
        } else if (key == "seed") {
            spec.seed = parse_unsigned(key, value);
        } else if (key == "outdir") {
            spec.output_dir = value;
        } else if (key == "timing") {
            spec.record_timing = parse_flag(key, value);
        } else if (key == "exact_k_max") {
            spec.exact_k_max = parse_unsigned(key, value);
        } else if (key == "exact_budget") {
            spec.exact_budget = parse_unsigned(key, value);
        } else {
            throw ArgumentError("unknown spec key '" + key + "'");
        }
    }
    if (spec.k_max == 0)
        throw ArgumentError("k_max must be at least 1");
    if (spec.methods.empty())
        throw ArgumentError("methods must not be empty");
    if (spec.sample_count == 0)
        throw ArgumentError("n must be at least 1");
    return spec;
}

ExperimentSpec read_spec_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot open spec file " + path.string());
    return parse_spec(in);
}

ExperimentResult run_network(const std::string &name, const Graph &g, const ExperimentSpec &spec) {
    const auto n = g.vertex_count();
    if (n < 2)
        throw ArgumentError("network " + name + " needs at least two vertices");
    const std::size_t k_max = std::min(spec.k_max, n - 1);

    ExperimentResult result;
    result.networks.push_back({name, n, g.edge_count(), degree_stats(g)});

    BfsWorkspace ws(g);
    for (Method m : spec.methods) {
        std::vector<ExperimentRecord> rows;
        rows.reserve(k_max);
        MethodTiming timing{name, m, 0.0, 0.0};
        const auto start = Clock::now();
        if (m == Method::random) {
            for (std::size_t k = 1; k <= k_max; ++k) {
                const auto est = *sampled_expected_value(g, k, spec.sample_count, derive_seed(spec.seed, k)).sampled;
                const auto mean_farness = std::llround(est.mean * static_cast<double>(n - k));
                rows.push_back({name, m, k, est.mean, static_cast<std::uint64_t>(mean_farness), 0.0});
            }
            timing.scoring_s = seconds_since(start);
        } else {
            const auto ranking = rank_vertices(g, m, k_max, spec.seed);
            timing.scoring_s = seconds_since(start);
            std::vector<Vertex> prefix;
            prefix.reserve(k_max);
            for (std::size_t k = 1; k <= k_max; ++k) {
                prefix.push_back(ranking.vertices[k - 1]);
                const auto eval = evaluate(ws, CandidateSet(prefix));
                rows.push_back({name, m, k, eval.avg_distance, eval.farness, 0.0});
            }
        }
        timing.total_s = seconds_since(start);
        if (!spec.record_timing)
            timing.scoring_s = timing.total_s = 0.0;
        for (auto &r : rows) {
            r.wall_time_s = timing.total_s;
            result.records.push_back(std::move(r));
        }
        result.timings.push_back(timing);
    }

    if (spec.exact_k_max > 0 && n <= DistanceMatrix::max_vertices) {
        const DistanceMatrix d(g);
        ExactOptions options;
        options.budget = spec.exact_budget;
        for (std::size_t k = 1; k <= std::min(spec.exact_k_max, n - 1); ++k) {
            try {
                const auto summary = exhaustive_summary(d, k, options);
                result.optima.push_back({name, k, summary.optimum.optimal_value, *summary.expected.exact});
            } catch (const BudgetExceededError &e) {
                std::cerr << "warning: " << name << ": exact k=" << k << " skipped: " << e.what() << '\n';
                break;
            }
        }
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec &spec) {
    std::vector<DatasetEntry> manifest;
    if (!spec.manifest.empty())
        manifest = read_manifest(resolve_dataset_path(spec.manifest));

    ExperimentResult all;
    for (const auto &dataset : spec.datasets) {
        DatasetEntry entry;
        auto it = std::find_if(manifest.begin(), manifest.end(), [&](const DatasetEntry &e) { return e.name == dataset; });
        if (it != manifest.end()) {
            entry = *it;
        } else {
            entry.path = dataset;
            entry.name = std::filesystem::path(dataset).stem().string();
        }
        try {
            const auto path = resolve_dataset_path(entry.path);
            if (!std::filesystem::exists(path))
                throw DatasetError("dataset file not found: " + entry.path.string());
            const auto loaded = load_network(path);
            const auto &g = loaded.graph;
            if (entry.expected_vertices &&
                (*entry.expected_vertices != g.vertex_count() || *entry.expected_edges != g.edge_count()))
                std::cerr << "warning: " << entry.name << ": expected |V|=" << *entry.expected_vertices
                          << " |E|=" << *entry.expected_edges << ", loaded |V|=" << g.vertex_count()
                          << " |E|=" << g.edge_count() << '\n';
            auto part = run_network(entry.name, g, spec);
            all.records.insert(all.records.end(), part.records.begin(), part.records.end());
            all.timings.insert(all.timings.end(), part.timings.begin(), part.timings.end());
            all.networks.insert(all.networks.end(), part.networks.begin(), part.networks.end());
            all.optima.insert(all.optima.end(), part.optima.begin(), part.optima.end());
        } catch (const std::exception &e) {
            std::cerr << "error: " << entry.name << ": " << e.what() << '\n';
            all.failures.emplace_back(entry.name, e.what());
        }
    }
    return all;
}

ComparisonTable error_to_optimal(std::span<const ExperimentRecord> records, const OptimumMap &optimum) {
    std::map<std::string, std::size_t> max_k;
    for (const auto &[key, value] : optimum)
        max_k[key.first] = std::max(max_k[key.first], key.second);

    std::map<std::pair<std::string, Method>, std::pair<double, std::size_t>> sums;
    for (const auto &r : records) {
        auto limit = max_k.find(r.network);
        if (limit == max_k.end() || r.k > limit->second)
            continue;
        auto it = optimum.find({r.network, r.k});
        if (it == optimum.end())
            throw ArgumentError("no optimum for " + r.network + " at k=" + std::to_string(r.k));
        auto &acc = sums[{r.network, r.method}];
        acc.first += relative_error_percent(r.avg_distance, it->second);
        ++acc.second;
    }
    return rank_rows(Reference::optimal, std::move(sums));
}

ComparisonTable error_to_best(std::span<const ExperimentRecord> records) {
    const auto best = best_values(records);
    std::map<std::pair<std::string, Method>, std::pair<double, std::size_t>> sums;
    for (const auto &r : records) {
        auto &acc = sums[{r.network, r.method}];
        acc.first += relative_error_percent(r.avg_distance, best.at({r.network, r.k}));
        ++acc.second;
    }
    return rank_rows(Reference::best_heuristic, std::move(sums));
}

std::vector<OverallRow> overall_ranking(std::span<const ExperimentRecord> records) {
    const auto best = best_values(records);
    std::map<Method, std::pair<double, std::size_t>> sums;
    for (const auto &r : records) {
        auto &acc = sums[r.method];
        acc.first += relative_error_percent(r.avg_distance, best.at({r.network, r.k}));
        ++acc.second;
    }
    std::vector<OverallRow> out;
    for (const auto &[m, acc] : sums)
        out.push_back({m, acc.first / static_cast<double>(acc.second)});
    std::stable_sort(out.begin(), out.end(),
                     [](const OverallRow &a, const OverallRow &b) { return a.error_percent < b.error_percent; });
    return out;
}

ShareTable within_percent_shares(std::span<const ExperimentRecord> records, std::span<const double> thresholds) {
    const auto best = best_values(records);
    std::map<std::pair<std::string, Method>, std::pair<std::vector<std::size_t>, std::size_t>> counts;
    for (const auto &r : records) {
        auto &acc = counts[{r.network, r.method}];
        acc.first.resize(thresholds.size(), 0);
        const double reference = best.at({r.network, r.k});
        for (std::size_t i = 0; i < thresholds.size(); ++i)
            if (r.avg_distance <= reference * (1.0 + thresholds[i] / 100.0) * (1.0 + 1e-12))
                ++acc.first[i];
        ++acc.second;
    }
    ShareTable table;
    table.thresholds.assign(thresholds.begin(), thresholds.end());
    for (const auto &[key, acc] : counts) {
        ShareRow row{key.first, key.second, {}};
        for (auto c : acc.first)
            row.shares.push_back(100.0 * static_cast<double>(c) / static_cast<double>(acc.second));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<SuperPoint> super_algorithm(std::span<const ExperimentRecord> records) {
    std::map<PointKey, SuperPoint> points;
    std::map<PointKey, double> expected;
    for (const auto &r : records) {
        const PointKey key{r.network, r.k};
        if (r.method == Method::random) {
            expected[key] = r.avg_distance;
            continue;
        }
        auto it = points.find(key);
        const bool better = it == points.end() || r.avg_distance < it->second.value ||
                            (r.avg_distance == it->second.value && r.method < it->second.method);
        if (better)
            points[key] = SuperPoint{r.network, r.k, r.method, r.avg_distance, r.farness, std::nullopt};
    }
    std::vector<SuperPoint> out;
    for (auto &[key, p] : points) {
        if (auto e = expected.find(key); e != expected.end())
            p.expected = e->second;
        out.push_back(p);
    }
    return out;
}

std::vector<ExperimentRecord> super_to_records(std::span<const SuperPoint> points) {
    std::vector<ExperimentRecord> out;
    for (const auto &p : points) {
        out.push_back({p.network, p.method, p.k, p.value, p.farness, 0.0});
        if (p.expected)
            out.push_back({p.network, Method::random, p.k, *p.expected, 0, 0.0});
    }
    return out;
}

std::vector<CostRow> cost_factors(std::span<const MethodTiming> timings) {
    std::map<std::string, double> reference;
    for (const auto &t : timings)
        if (t.method == Method::degree)
            reference[t.network] = t.scoring_s;
    std::vector<CostRow> out;
    for (const auto &t : timings) {
        CostRow row{t.network, t.method, t.scoring_s, 0.0};
        if (auto it = reference.find(t.network); it != reference.end() && it->second > 0.0)
            row.cost_factor = t.scoring_s / it->second;
        out.push_back(row);
    }
    return out;
}

void sort_records(std::vector<ExperimentRecord> &records) {
    std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord &a, const ExperimentRecord &b) {
        return std::tie(a.network, a.method, a.k) < std::tie(b.network, b.method, b.k);
    });
}

void write_records_csv(std::ostream &out, std::span<const ExperimentRecord> records) {
    out << records_csv_header << '\n';
    for (const auto &r : records)
        out << csv_field(r.network) << ',' << method_name(r.method) << ',' << r.k << ',' << format_real(r.avg_distance)
            << ',' << r.farness << ',' << format_real(r.wall_time_s) << '\n';
}

std::vector<ExperimentRecord> read_records_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != records_csv_header)
        throw ParseError(1, "expected header '" + std::string(records_csv_header) + "'");
    std::vector<ExperimentRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto f = split_csv_row(line);
        if (f.size() != 6)
            throw ParseError(line_no, "expected 6 fields");
        const auto method = parse_method(f[1]);
        if (!method)
            throw ParseError(line_no, "unknown method '" + f[1] + "'");
        try {
            out.push_back({f[0], *method, std::stoull(f[2]), std::stod(f[3]), std::stoull(f[4]), std::stod(f[5])});
        } catch (const std::logic_error &) {
            throw ParseError(line_no, "bad numeric field");
        }
    }
    return out;
}

void emit_tables(const ExperimentResult &result, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir / "plot");
    auto records = result.records;
    sort_records(records);

    {
        auto out = open_output(dir / "records.csv");
        write_records_csv(out, records);
    }
    {
        auto nets = result.networks;
        std::sort(nets.begin(), nets.end(), [](const auto &a, const auto &b) { return a.name < b.name; });
        auto out = open_output(dir / "networks.csv");
        out << "network,vertices,edges,avg_degree,max_degree,max_to_avg\n";
        for (const auto &n : nets)
            out << csv_field(n.name) << ',' << n.vertices << ',' << n.edges << ',' << format_real(n.degrees.avg_degree)
                << ',' << n.degrees.max_degree << ',' << format_real(n.degrees.max_to_avg_ratio) << '\n';
    }
    auto timings = result.timings;
    std::sort(timings.begin(), timings.end(), [](const MethodTiming &a, const MethodTiming &b) {
        return std::tie(a.network, a.method) < std::tie(b.network, b.method);
    });
    {
        auto out = open_output(dir / "timing.csv");
        out << "network,method,scoring_s,total_s\n";
        for (const auto &t : timings)
            out << csv_field(t.network) << ',' << method_name(t.method) << ',' << format_real(t.scoring_s) << ','
                << format_real(t.total_s) << '\n';
    }
    {
        auto out = open_output(dir / "cost.csv");
        out << "network,method,scoring_s,cost_factor\n";
        for (const auto &c : cost_factors(timings))
            out << csv_field(c.network) << ',' << method_name(c.method) << ',' << format_real(c.scoring_s) << ','
                << format_real(c.cost_factor) << '\n';
    }
    auto write_comparison = [&](const std::filesystem::path &path, const ComparisonTable &table) {
        auto out = open_output(path);
        out << "network,method,error_percent,rank,points\n";
        for (const auto &r : table.rows)
            out << csv_field(r.network) << ',' << method_name(r.method) << ',' << format_real(r.error_percent) << ','
                << r.rank << ',' << r.points << '\n';
    };
    write_comparison(dir / "error_to_best.csv", error_to_best(records));
    {
        auto out = open_output(dir / "overall.csv");
        out << "method,error_percent\n";
        for (const auto &r : overall_ranking(records))
            out << method_name(r.method) << ',' << format_real(r.error_percent) << '\n';
    }
    {
        const auto shares = within_percent_shares(records);
        auto out = open_output(dir / "within_shares.csv");
        out << "network,method";
        for (double x : shares.thresholds)
            out << ",within_" << format_real(x);
        out << '\n';
        for (const auto &r : shares.rows) {
            out << csv_field(r.network) << ',' << method_name(r.method);
            for (double s : r.shares)
                out << ',' << format_real(s);
            out << '\n';
        }
    }
    {
        auto out = open_output(dir / "super.csv");
        out << "network,k,method,avg_distance,expected_random\n";
        for (const auto &p : super_algorithm(records))
            out << csv_field(p.network) << ',' << p.k << ',' << method_name(p.method) << ',' << format_real(p.value)
                << ',' << (p.expected ? format_real(*p.expected) : std::string()) << '\n';
    }
    {
        auto optima = result.optima;
        std::sort(optima.begin(), optima.end(),
                  [](const auto &a, const auto &b) { return std::tie(a.network, a.k) < std::tie(b.network, b.k); });
        auto out = open_output(dir / "optima.csv");
        out << "network,k,optimal_value,expected_value\n";
        OptimumMap map;
        for (const auto &o : optima) {
            out << csv_field(o.network) << ',' << o.k << ',' << format_real(o.optimal_value) << ','
                << format_real(o.expected_value) << '\n';
            map[{o.network, o.k}] = o.optimal_value;
        }
        if (!map.empty())
            write_comparison(dir / "error_to_optimal.csv", error_to_optimal(records, map));
    }
    std::map<std::string, std::vector<const ExperimentRecord *>> per_network;
    for (const auto &r : records)
        per_network[r.network].push_back(&r);
    for (const auto &[network, rows] : per_network) {
        auto out = open_output(dir / "plot" / (file_safe(network) + ".dat"));
        out << "# k method avg_distance\n";
        for (const auto *r : rows)
            out << r->k << ' ' << method_name(r->method) << ' ' << format_real(r->avg_distance) << '\n';
    }
}

} // namespace kmedian
