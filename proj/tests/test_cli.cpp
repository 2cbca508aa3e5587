#include "doctest.h"

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string source_dir = VIZSIM_SOURCE_DIR;
const std::string sample = source_dir + "/data/sample_ratings.csv";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = vizsim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string golden(const std::string& name)
{
    return slurp(source_dir + "/tests/golden/" + name);
}

// A scratch file removed on scope exit.
struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content = {})
        : path(std::filesystem::temp_directory_path() / name)
    {
        if (!content.empty()) {
            std::ofstream(path, std::ios::binary) << content;
        }
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("cli: golden outputs")
{
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"corpus"}, "corpus.txt"},
        {{"corpus", "--compact"}, "corpus_compact.txt"},
        {{"sim", "--format", "csv"}, "sim.csv"},
        {{"sim", "--format", "json"}, "sim.json"},
        {{"sim", "--format", "svg"}, "sim.svg"},
        {{"sim", "--format", "svg", "--annotate"}, "sim_annotated.svg"},
        {{"mst"}, "mst.dot"},
        {{"mst", "--overlay"}, "mst_overlay.dot"},
        {{"mst", "--format", "edges"}, "mst_edges.csv"},
        {{"mst", "--source", "ratings", sample, "--format", "edges"}, "mst_ratings_edges.csv"},
        {{"ratings", "aggregate", sample, "--format", "csv"}, "aggregate.csv"},
        {{"ratings", "aggregate", sample, "--format", "json"}, "aggregate.json"},
        {{"ratings", "aggregate", sample, "--format", "svg", "--variance"}, "variance.svg"},
        {{"compare", sample}, "compare.txt"},
    };
    for (const auto& [args, file] : cases) {
        CAPTURE(file);
        const Result first = run(args);
        CHECK(first.code == 0);
        CHECK(first.err.empty());
        CHECK(first.out == golden(file));
        CHECK(run(args).out == first.out);
    }
}

TEST_CASE("cli: corpus")
{
    const Result r = run({"corpus", "--compact"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("BT ", 0) == 0);
    CHECK(r.out.find("D_TD_AM_AC_PC_CR_OO_RL_S\n") != std::string::npos);

    const Result missing = run({"corpus", "-c", "definitely-missing.txt"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("not found") != std::string::npos);

    TempFile file("vizsim_cli_corpus.txt", "A \"One\" D_T\nB \"Two\" D_S\n");
    const Result custom = run({"corpus", "-c", file.str()});
    CHECK(custom.code == 0);
    CHECK(custom.out.rfind("A ", 0) == 0);

    TempFile bad("vizsim_cli_bad_corpus.txt", "A \"One\" D_T\nB \"Two\" D_X\n");
    const Result parse = run({"sim", "-c", bad.str()});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 2") != std::string::npos);
}

TEST_CASE("cli: sim")
{
    CHECK(run({"sim", "--prefix-weight", "0.3"}).code == 2);
    CHECK(run({"sim", "--max-prefix", "0"}).code == 0);
    CHECK(run({"sim", "--boost-threshold", "1.5"}).code == 2);
    CHECK(run({"sim", "--format", "dot"}).code == 2);
    CHECK(run({"sim", "--ramp", "#000000"}).code == 2);
    CHECK(run({"sim", "--no-such-flag"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);

    TempFile out("vizsim_cli_heatmap.svg");
    const Result r = run({"sim", "--format", "svg", "-o", out.str()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out.str()) == golden("sim.svg"));

    CHECK(run({"sim", "-o", "/nonexistent-dir/x.csv"}).code == 2);
}

TEST_CASE("cli: ratings")
{
    const Result check = run({"ratings", "check", sample});
    CHECK(check.code == 0);
    CHECK(check.out == "complete: 3 experts \xC3\x97 78 pairs\ntotal ratings: 234\n");

    const std::string header = "technique_a,technique_b,expert_id,rating\n";
    TempFile partial("vizsim_cli_partial.csv", header + "PC,NLD,e1,1\nPC,NLD,e2,1\nPC,NLD,e3,4\n");
    const Result incomplete = run({"ratings", "check", partial.str()});
    CHECK(incomplete.code == 1);
    CHECK(incomplete.out.find("missing") != std::string::npos);
    const Result agg = run({"ratings", "aggregate", partial.str()});
    CHECK(agg.code == 1);
    CHECK(agg.err.find("has no ratings") != std::string::npos);

    TempFile zero("vizsim_cli_zero.csv", header + "PC,NLD,e1,0\n");
    const Result range = run({"ratings", "aggregate", zero.str()});
    CHECK(range.code == 2);
    CHECK(range.err.find("line 2") != std::string::npos);
    CHECK(range.err.find("outside 1..5") != std::string::npos);

    CHECK(run({"ratings", "frobnicate", sample}).code == 2);
    CHECK(run({"ratings", "check"}).code == 2);
    CHECK(run({"ratings", "check", "missing.csv"}).code == 2);

    const Result csv = run({"ratings", "aggregate", sample, "--format", "csv"});
    CHECK(csv.out.find("\nPC,NLD,3,2.000,3.000\n") != std::string::npos);
}

TEST_CASE("cli: mst")
{
    const Result dot = run({"mst", "--source", "model"});
    CHECK(dot.code == 0);
    std::size_t edges = 0;
    for (std::size_t p = dot.out.find(" -- "); p != std::string::npos; p = dot.out.find(" -- ", p + 1)) {
        ++edges;
    }
    CHECK(edges == 12);

    const Result list = run({"mst", "--format", "edges"});
    CHECK(list.out.find("\nCM,STC,") != std::string::npos);
    CHECK(list.out.find("\nSM,STC,") != std::string::npos);

    CHECK(run({"mst", "--source", "ratings"}).code == 2);
    CHECK(run({"mst", "--source", "elsewhere"}).code == 2);
    CHECK(run({"mst", "--format", "csv"}).code == 2);
}

TEST_CASE("cli: compare")
{
    const Result top = run({"compare", sample, "--top", "5"});
    REQUIRE(top.code == 0);
    const auto table = top.out.find("rank,");
    REQUIRE(table != std::string::npos);
    std::size_t rows = 0;
    for (std::size_t p = top.out.find('\n', table); p + 1 < top.out.size(); p = top.out.find('\n', p + 1)) {
        ++rows;
    }
    CHECK(rows == 5);
    CHECK(top.out.find("\n1,BT,SP,") != std::string::npos);

    TempFile diff("vizsim_cli_diff.csv");
    CHECK(run({"compare", sample, "--diff", diff.str()}).code == 0);
    const std::string d = slurp(diff.str());
    CHECK(d.rfind("technique,BT,SP,", 0) == 0);
}

TEST_CASE("cli: compare against model-derived ratings")
{
    // Twenty synthetic experts whose mean rating is a strictly increasing
    // function of the model score, so the rank correlation must be exact.
    const Result matrix = run({"sim", "--format", "csv"});
    REQUIRE(matrix.code == 0);
    std::istringstream lines(matrix.out);
    std::string header;
    std::getline(lines, header);
    std::vector<std::string> ids;
    {
        std::istringstream h(header);
        std::string cell;
        std::getline(h, cell, ',');
        while (std::getline(h, cell, ',')) {
            ids.push_back(cell);
        }
    }
    std::vector<std::vector<std::string>> values;
    for (std::string line; std::getline(lines, line);) {
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        values.emplace_back();
        while (std::getline(row, cell, ',')) {
            values.back().push_back(cell);
        }
    }
    // Printed values are compared numerically so the levels follow the model order.
    std::vector<double> levels;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            levels.push_back(std::stod(values[i][j]));
        }
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    constexpr int experts = 20;
    REQUIRE(levels.size() <= 4 * experts + 1);

    std::ostringstream csv;
    csv << "technique_a,technique_b,expert_id,rating\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const auto level = static_cast<int>(
                std::lower_bound(levels.begin(), levels.end(), std::stod(values[i][j])) - levels.begin());
            // Spread a total of experts + level over the experts, each rating in 1..5.
            int extra = level;
            for (int e = 0; e < experts; ++e) {
                const int bump = std::min(extra, 4);
                extra -= bump;
                csv << ids[i] << ',' << ids[j] << ",e" << e << ',' << 1 + bump << '\n';
            }
        }
    }
    TempFile file("vizsim_cli_model_ratings.csv", csv.str());
    const Result r = run({"compare", file.str(), "--top", "3"});
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("spearman: ");
    REQUIRE(pos != std::string::npos);
    CHECK(r.out.substr(pos + 10, 6) == "1.000\n");
}

TEST_CASE("cli: help")
{
    const Result top = run({"--help"});
    CHECK(top.code == 0);
    for (const char* sub : {"corpus", "sim", "ratings", "mst", "compare"}) {
        CAPTURE(sub);
        CHECK(top.out.find(sub) != std::string::npos);
        const Result h = run({sub, "--help"});
        CHECK(h.code == 0);
        CHECK(h.out.find("--output") != std::string::npos);
        CHECK(h.out.find("--corpus") != std::string::npos);
    }
    const Result sim = run({"sim", "--help"});
    for (const char* flag : {"--prefix-weight", "--max-prefix", "--boost-threshold", "--strict",
                             "--format", "--annotate"}) {
        CHECK(sim.out.find(flag) != std::string::npos);
    }
    CHECK(run({"mst", "--help"}).out.find("--overlay") != std::string::npos);
    CHECK(run({"compare", "--help"}).out.find("--top") != std::string::npos);
    CHECK(run({"corpus", "--help"}).out.find("--compact") != std::string::npos);
}
