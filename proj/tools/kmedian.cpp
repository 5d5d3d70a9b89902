// Command-line front end: single-network queries plus the `bench` sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmedian/centrality.hpp"
#include "kmedian/errors.hpp"
#include "kmedian/evaluation.hpp"
#include "kmedian/exact.hpp"
#include "kmedian/graph.hpp"
#include "kmedian/harness.hpp"

using namespace kmedian;

namespace {

std::string real(double v) { return format_real(v); }

MappedGraph open_dataset(const std::string &dataset, const std::string &manifest) {
    std::filesystem::path path = resolve_dataset_path(dataset);
    if (!std::filesystem::exists(path) && !manifest.empty()) {
        for (const auto &e : read_manifest(resolve_dataset_path(manifest)))
            if (e.name == dataset)
                path = resolve_dataset_path(e.path);
    }
    if (!std::filesystem::exists(path))
        throw DatasetError("dataset not found: " + dataset);
    return load_network(path);
}

std::string original_ids(const VertexMapping &m, std::span<const Vertex> vs) {
    std::string out;
    for (Vertex v : vs) {
        if (!out.empty())
            out += ',';
        out += std::to_string(m.to_original(v));
    }
    return out;
}

std::vector<Vertex> parse_vertex_list(const std::string &text, const VertexMapping &mapping, bool compact) {
    std::vector<Vertex> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::uint64_t id = 0;
        std::istringstream field(item);
        if (!(field >> id) || !(field >> std::ws).eof())
            throw ArgumentError("bad vertex id '" + item + "'");
        out.push_back(compact ? static_cast<Vertex>(id) : mapping.to_compact(id));
        if (compact && id >= mapping.size())
            throw ArgumentError("compact id " + item + " out of range");
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"k-median heuristics, exact solver and benchmark harness"};
    app.require_subcommand(1);
    std::string manifest;
    app.add_option("--manifest", manifest, "Manifest used to look up dataset names");

    std::string dataset;
    std::uint64_t seed = 0;

    auto *info = app.add_subcommand("info", "Size and degree statistics after normalization");
    info->add_option("dataset", dataset, "Edge-list path or manifest name")->required();

    std::filesystem::path output;
    auto *norm = app.add_subcommand("normalize", "Write the normalized largest component as an edge list");
    norm->add_option("dataset", dataset)->required();
    norm->add_option("-o,--output", output, "Output file (default: stdout)");

    std::string method_text;
    std::size_t k = 1;
    std::optional<double> suppression;
    auto *rank = app.add_subcommand("rank", "Top-k vertices of one method and the resulting average distance");
    rank->add_option("dataset", dataset)->required();
    rank->add_option("-m,--method", method_text, "degree, degree+, prank, vrank, core, core+, hindex, random")->required();
    rank->add_option("-k,--k", k, "Set size")->required();
    rank->add_option("--seed", seed, "Seed for the random method");
    rank->add_option("--suppression", suppression, "VoteRank suppression factor (default 1/<d>)");

    std::string vertices;
    bool compact = false;
    auto *eval = app.add_subcommand("eval", "Farness and average distance of a vertex set");
    eval->add_option("dataset", dataset)->required();
    eval->add_option("--vertices", vertices, "Comma-separated original vertex ids")->required();
    eval->add_flag("--compact", compact, "Interpret ids as normalized 0-based ids");

    ExactOptions exact_opts;
    auto *exact = app.add_subcommand("exact", "Exhaustive optimum M*(k) and exact mean E*(k)");
    exact->add_option("dataset", dataset)->required();
    exact->add_option("-k,--k", k)->required();
    exact->add_option("--budget", exact_opts.budget, "Largest number of subsets to enumerate");
    exact->add_option("--threads", exact_opts.threads, "Worker threads (0 = all cores)");
    exact->add_option("--max-sets", exact_opts.max_optimal_sets, "Optimal sets to list");

    std::size_t samples = 100;
    auto *sample = app.add_subcommand("sample", "Sampled mean E(k) of random k-sets");
    sample->add_option("dataset", dataset)->required();
    sample->add_option("-k,--k", k)->required();
    sample->add_option("-n,--n", samples, "Number of random sets");
    sample->add_option("--seed", seed);

    std::filesystem::path spec_path;
    std::optional<std::filesystem::path> outdir;
    auto *bench = app.add_subcommand("bench", "Run an experiment spec and write result tables");
    bench->add_option("--spec", spec_path, "Spec file")->required();
    bench->add_option("--outdir", outdir, "Override the spec's output directory");

    double bin_width = 0.0;
    auto *hist = app.add_subcommand("hist", "Distribution of A(S) over all k-subsets as plot data");
    hist->add_option("dataset", dataset)->required();
    hist->add_option("-k,--k", k)->required();
    hist->add_option("--bin-width", bin_width, "Bin width when values are too many for exact bins");
    hist->add_option("--budget", exact_opts.budget);
    hist->add_option("--threads", exact_opts.threads);
    hist->add_option("-o,--output", output, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bench) {
            auto spec = read_spec_file(spec_path);
            if (outdir)
                spec.output_dir = *outdir;
            const auto result = run_experiment(spec);
            emit_tables(result, spec.output_dir);
            std::cerr << result.records.size() << " records written to " << spec.output_dir.string() << '\n';
            return result.networks.empty() && !spec.datasets.empty() ? 1 : 0;
        }

        const auto net = open_dataset(dataset, manifest);
        const auto &g = net.graph;

        if (*info) {
            const auto s = degree_stats(g);
            std::cout << "vertices " << g.vertex_count() << "\nedges " << g.edge_count() << "\navg_degree "
                      << real(s.avg_degree) << "\nmax_degree " << s.max_degree << "\nmax_to_avg "
                      << real(s.max_to_avg_ratio) << '\n';
        } else if (*norm) {
            if (output.empty()) {
                write_edge_list(std::cout, g);
            } else {
                std::ofstream out(output, std::ios::binary);
                write_edge_list(out, g);
            }
        } else if (*rank) {
            const auto m = parse_method(method_text);
            if (!m)
                throw ArgumentError("unknown method '" + method_text + "'");
            RankedList list;
            if (*m == Method::vrank && suppression) {
                list.method = *m;
                list.vertices = voterank(g, k, suppression);
            } else {
                list = rank_vertices(g, *m, k, seed);
            }
            for (std::size_t i = 0; i < list.vertices.size(); ++i)
                std::cout << i + 1 << ' ' << list.vertices[i] << ' ' << net.mapping.to_original(list.vertices[i])
                          << '\n';
            if (k < g.vertex_count())
                std::cout << "avg_distance " << real(avg_distance(g, CandidateSet(list.vertices))) << '\n';
        } else if (*eval) {
            const CandidateSet s(parse_vertex_list(vertices, net.mapping, compact));
            const auto shells = shell_profile(g, s);
            std::cout << "k " << s.size() << "\nfarness " << farness_from_shells(shells);
            if (s.size() < g.vertex_count())
                std::cout << "\navg_distance " << real(avg_distance(g, s));
            std::cout << "\nshells";
            for (auto c : shells.sizes)
                std::cout << ' ' << c;
            std::cout << '\n';
        } else if (*exact) {
            const DistanceMatrix d(g);
            const auto s = exhaustive_summary(d, k, exact_opts);
            std::cout << "k " << k << "\noptimal_value " << real(s.optimum.optimal_value) << "\noptimal_farness "
                      << s.optimum.optimal_farness << "\nexpected_value " << real(*s.expected.exact)
                      << "\nsubsets_examined " << s.optimum.subsets_examined << "\noptimal_sets "
                      << s.optimum.optimal_set_count << '\n';
            for (const auto &set : s.optimum.optimal_sets)
                std::cout << "set " << original_ids(net.mapping, set) << '\n';
        } else if (*sample) {
            const auto e = *sampled_expected_value(g, k, samples, seed).sampled;
            std::cout << "k " << k << "\nsamples " << e.count << "\nmean " << real(e.mean) << "\nstddev "
                      << real(e.stddev) << "\nstandard_error " << real(e.standard_error) << '\n';
        } else if (*hist) {
            const auto h = distribution_histogram(g, k, bin_width, exact_opts);
            if (output.empty()) {
                write_plot_data(std::cout, h);
            } else {
                std::ofstream out(output, std::ios::binary);
                write_plot_data(out, h);
            }
        }
    } catch (const ArgumentError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
