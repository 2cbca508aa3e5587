#include "cli.hpp"

#include "vizsim/error.hpp"
#include "vizsim/export.hpp"
#include "vizsim/metric.hpp"
#include "vizsim/ratings.hpp"
#include "vizsim/signature.hpp"
#include "vizsim/simgraph.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vizsim::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string corpus_path; // empty: built-in corpus
    bool strict = false;
    MetricConfig metric;
    std::string format;
    std::string output = "-";
    bool annotate = false;
    bool compact = false;
    bool overlay = false;
    bool variance = false;
    std::string ramp;
    std::size_t top = 10;
    std::string diff_path;
    std::string source = "model";
    std::string action;
    std::string ratings_path;
};

std::string read_file(const std::string& path, std::string_view what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + std::string(what) + " file '" + path +
                      "': file not found or unreadable");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot write output file '" + path + "'");
    }
    file << text;
    if (!file) {
        throw IoError("failed writing output file '" + path + "'");
    }
}

Corpus load_corpus(const RunConfig& cfg)
{
    if (cfg.corpus_path.empty()) {
        return builtin_corpus();
    }
    const std::string content = read_file(cfg.corpus_path, "corpus");
    try {
        return parse_corpus_file(content, cfg.strict);
    } catch (const ParseError& e) {
        throw ParseError(cfg.corpus_path + ": " + e.what());
    }
}

Corpus load_pairwise_corpus(const RunConfig& cfg)
{
    Corpus corpus = load_corpus(cfg);
    corpus.require_pairwise();
    return corpus;
}

RatingSet load_ratings(const RunConfig& cfg, const Corpus& corpus)
{
    if (cfg.ratings_path.empty()) {
        throw IoError("a ratings CSV path is required");
    }
    const std::string content = read_file(cfg.ratings_path, "ratings");
    try {
        return parse_ratings_csv(content, corpus);
    } catch (const ParseError& e) {
        throw ParseError(cfg.ratings_path + ": " + e.what());
    }
}

ColorRamp ramp_of(const RunConfig& cfg)
{
    return cfg.ramp.empty() ? ColorRamp::yellow_blue() : ColorRamp::from_spec(cfg.ramp);
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out)
{
    write_output(cfg.output, format_corpus(load_corpus(cfg), cfg.compact), out);
    return ok;
}

int cmd_sim(const RunConfig& cfg, std::ostream& out)
{
    cfg.metric.validate();
    const Corpus corpus = load_pairwise_corpus(cfg);
    const SimilarityMatrix m = pairwise_matrix(corpus, cfg.metric, Scale::Scaled);
    std::string text;
    if (cfg.format == "json") {
        text = matrix_to_json(m);
    } else if (cfg.format == "svg") {
        text = heatmap_svg(m, ramp_of(cfg), cfg.annotate);
    } else {
        text = matrix_to_csv(m);
    }
    write_output(cfg.output, text, out);
    return ok;
}

std::string describe(const CompletenessReport& report)
{
    std::ostringstream s;
    const std::string shape = std::to_string(report.experts.size()) + " experts × " +
                              std::to_string(report.pairs_per_expert) + " pairs";
    if (report.complete()) {
        s << "complete: " << shape << "\n";
        s << "total ratings: " << report.total_ratings << "\n";
        return s.str();
    }
    s << "incomplete: " << shape << " (" << report.total_ratings << " of "
      << report.expected_total() << " ratings)\n";
    for (const auto& e : report.experts) {
        for (const auto& p : e.missing) {
            s << "missing," << e.expert << "," << p.first.str() << "," << p.second.str() << "\n";
        }
        for (const auto& p : e.extra) {
            s << "extra," << e.expert << "," << p.first.str() << "," << p.second.str() << "\n";
        }
    }
    return s.str();
}

int cmd_ratings(const RunConfig& cfg, std::ostream& out)
{
    const Corpus corpus = load_pairwise_corpus(cfg);
    const RatingSet ratings = load_ratings(cfg, corpus);

    if (cfg.action == "check") {
        const CompletenessReport report = completeness_check(ratings, corpus);
        write_output(cfg.output, describe(report), out);
        return report.complete() ? ok : domain_failure;
    }

    const Aggregate agg = aggregate(ratings, corpus);
    std::string text;
    if (cfg.format == "json") {
        text = aggregate_to_json(agg);
    } else if (cfg.format == "svg") {
        text = cfg.variance ? variance_heatmap_svg(agg.variance, ramp_of(cfg), cfg.annotate)
                            : heatmap_svg(agg.mean, ramp_of(cfg), cfg.annotate);
    } else {
        text = aggregate_to_csv(agg);
    }
    write_output(cfg.output, text, out);
    return ok;
}

int cmd_mst(const RunConfig& cfg, std::ostream& out)
{
    cfg.metric.validate();
    const Corpus corpus = load_pairwise_corpus(cfg);
    std::optional<SimilarityMatrix> matrix;
    if (cfg.source == "ratings") {
        matrix.emplace(aggregate(load_ratings(cfg, corpus), corpus).mean);
    } else {
        matrix.emplace(pairwise_matrix(corpus, cfg.metric, Scale::Scaled));
    }
    const WeightedGraph graph = to_graph(*matrix);
    const SpanningTree tree = kruskal_mst(graph);
    const std::string text =
        cfg.format == "edges" ? tree_to_edge_list(tree) : tree_to_dot(tree, graph, cfg.overlay);
    write_output(cfg.output, text, out);
    return ok;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out)
{
    cfg.metric.validate();
    const Corpus corpus = load_pairwise_corpus(cfg);
    const SimilarityMatrix model = pairwise_matrix(corpus, cfg.metric, Scale::Scaled);
    const SimilarityMatrix expert = aggregate(load_ratings(cfg, corpus), corpus).mean;
    const ComparisonReport report = compare_matrices(model, expert, cfg.top);
    if (!cfg.diff_path.empty()) {
        write_output(cfg.diff_path, matrix_to_csv(report.differences), out);
    }
    write_output(cfg.output, report_to_text(report), out);
    return ok;
}

void add_corpus_options(CLI::App& cmd, RunConfig& cfg)
{
    cmd.add_option("-c,--corpus", cfg.corpus_path,
                   "Corpus file (<ID> \"<Name>\" <tokens> per line); default: built-in corpus");
    cmd.add_flag("--strict", cfg.strict,
                 "Require non-decreasing token categories in corpus-file signatures");
}

void add_metric_options(CLI::App& cmd, RunConfig& cfg)
{
    cmd.add_option("--prefix-weight", cfg.metric.prefix_weight,
                   "Jaro-Winkler prefix weight p (0 <= p <= 1/max-prefix)")
        ->capture_default_str();
    cmd.add_option("--max-prefix", cfg.metric.max_prefix, "Longest common prefix rewarded")
        ->capture_default_str();
    cmd.add_option("--boost-threshold", cfg.metric.boost_threshold,
                   "Apply the prefix bonus only when Jaro reaches this value")
        ->capture_default_str();
}

void add_output_option(CLI::App& cmd, RunConfig& cfg)
{
    cmd.add_option("-o,--output", cfg.output, "Output path, '-' for stdout")->capture_default_str();
}

void add_render_options(CLI::App& cmd, RunConfig& cfg)
{
    cmd.add_flag("--annotate", cfg.annotate, "Print values (1 decimal) inside heatmap cells");
    cmd.add_option("--ramp", cfg.ramp,
                   "Heatmap colors low to high, e.g. '#FFFFD9,#41B6C4,#081D58'");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Similarity analysis of visualization techniques from categorical signatures",
                 "vizsim"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    CLI::App* corpus = app.add_subcommand("corpus", "Print the active corpus in corpus-file format");
    add_corpus_options(*corpus, cfg);
    corpus->add_flag("--compact", cfg.compact, "Concatenated signatures (D_TD_AM_P...)");
    add_output_option(*corpus, cfg);

    CLI::App* sim = app.add_subcommand("sim", "Pairwise Jaro-Winkler similarity matrix (1-5 scale)");
    add_corpus_options(*sim, cfg);
    add_metric_options(*sim, cfg);
    sim->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->default_val("csv");
    add_output_option(*sim, cfg);
    add_render_options(*sim, cfg);

    CLI::App* ratings =
        app.add_subcommand("ratings", "Check or aggregate expert ratings (technique_a,technique_b,expert_id,rating)");
    ratings->add_option("action", cfg.action, "check | aggregate")
        ->required()
        ->check(CLI::IsMember({"check", "aggregate"}));
    ratings->add_option("ratings", cfg.ratings_path, "Ratings CSV")->required();
    add_corpus_options(*ratings, cfg);
    ratings->add_option("--format", cfg.format,
                        "aggregate output: csv (per-pair table), json, svg (heatmap)")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->default_val("csv");
    ratings->add_flag("--variance", cfg.variance, "With --format svg: render the variance heatmap");
    add_output_option(*ratings, cfg);
    add_render_options(*ratings, cfg);

    CLI::App* mst = app.add_subcommand("mst", "Kruskal minimum spanning tree over distance 5 - similarity");
    mst->add_option("--source", cfg.source, "Similarity source")
        ->check(CLI::IsMember({"model", "ratings"}))
        ->capture_default_str();
    mst->add_option("ratings", cfg.ratings_path, "Ratings CSV (with --source ratings)");
    add_corpus_options(*mst, cfg);
    add_metric_options(*mst, cfg);
    mst->add_option("--format", cfg.format, "dot or edges (CSV edge list)")
        ->check(CLI::IsMember({"dot", "edges"}))
        ->default_val("dot");
    mst->add_flag("--overlay", cfg.overlay, "Also draw every non-tree edge in thin gray");
    add_output_option(*mst, cfg);

    CLI::App* compare =
        app.add_subcommand("compare", "Compare the model matrix with aggregated expert ratings");
    compare->add_option("ratings", cfg.ratings_path, "Ratings CSV")->required();
    add_corpus_options(*compare, cfg);
    add_metric_options(*compare, cfg);
    compare->add_option("--top", cfg.top, "Number of most divergent pairs to list")
        ->capture_default_str();
    compare->add_option("--diff", cfg.diff_path, "Also write the difference matrix CSV here");
    add_output_option(*compare, cfg);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("vizsim");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return input_error;
    }

    if (mst->parsed() && cfg.source == "ratings" && cfg.ratings_path.empty()) {
        err << "error: --source ratings needs a ratings CSV path\n";
        return input_error;
    }

    try {
        ramp_of(cfg); // reject a malformed --ramp even when no SVG is written
        if (corpus->parsed()) {
            return cmd_corpus(cfg, out);
        }
        if (sim->parsed()) {
            return cmd_sim(cfg, out);
        }
        if (ratings->parsed()) {
            return cmd_ratings(cfg, out);
        }
        if (mst->parsed()) {
            return cmd_mst(cfg, out);
        }
        return cmd_compare(cfg, out);
    } catch (const IncompleteDataError& e) {
        err << "error: " << e.what() << "\n";
        return domain_failure;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

} // namespace vizsim::cli
