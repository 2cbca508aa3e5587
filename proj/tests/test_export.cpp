#include "doctest.h"

#include "oracles.hpp"
#include "vizsim/error.hpp"
#include "vizsim/export.hpp"

#include <regex>

using namespace vizsim;

namespace {

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

SimilarityMatrix two_by_two(double off)
{
    return SimilarityMatrix({{TechniqueId("A"), TechniqueId("B")}, {5.0, off, off, 5.0}},
                            Scale::Scaled);
}

// Fill color of the cell at (row, col) in a heatmap.
std::string fill_of(const std::string& svg, const std::string& row, const std::string& col)
{
    const std::regex re("fill=\"(#[0-9A-F]{6})\"><title>" + row + " / " + col + ":");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, re));
    return m[1];
}

} // namespace

TEST_CASE("matrix_to_csv")
{
    const Corpus twins = parse_corpus_file("A \"One\" D_T\nB \"Two\" D_T\n");
    CHECK(matrix_to_csv(pairwise_matrix(twins)) ==
          "technique,A,B\nA,5.000,5.000\nB,5.000,5.000\n");

    const std::string model = matrix_to_csv(pairwise_matrix(builtin_corpus()));
    CHECK(count(model, "\n") == 14);
    CHECK(model.rfind("technique,BT,SP,PC,LP,SD,TW,CM,SM,STC,NM,NLD,AM,IM\n", 0) == 0);
    CHECK(model.find("\nAM,4.667,") != std::string::npos);
    CHECK(model.find('\r') == std::string::npos);

    LabeledMatrix neg{{TechniqueId("A"), TechniqueId("B")}, {0.0, -0.0001, 0.0001, 0.0}};
    CHECK(matrix_to_csv(neg) == "technique,A,B\nA,0.000,0.000\nB,0.000,0.000\n");
}

TEST_CASE("matrix JSON round-trip")
{
    for (const auto scale : {Scale::Unit, Scale::Scaled}) {
        const SimilarityMatrix m = pairwise_matrix(builtin_corpus(), {}, scale);
        const std::string text = matrix_to_json(m);
        CHECK(matrix_from_json(text) == m);
        CHECK(matrix_to_json(matrix_from_json(text)) == text);
    }
    CHECK_THROWS_AS(matrix_from_json("{"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"labels":["A"],"scale":"scaled"})"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(R"({"labels":["A","B"],"scale":"scaled","cells":[[5,1],[2,5]]})"),
                    ValidationError);
}

TEST_CASE("ColorRamp")
{
    const ColorRamp ramp = ColorRamp::yellow_blue();
    CHECK(ramp.at(0.0).hex() == "#FFFFD9");
    CHECK(ramp.at(0.5).hex() == "#41B6C4");
    CHECK(ramp.at(1.0).hex() == "#081D58");
    CHECK(ramp.at(-3.0).hex() == "#FFFFD9");
    CHECK(ramp.at(7.0).hex() == "#081D58");

    double previous = 2.0;
    for (int k = 0; k <= 1000; ++k) {
        const double lum = ramp.at(k / 1000.0).luminance();
        CHECK(lum <= previous);
        previous = lum;
    }

    CHECK(ColorRamp::from_spec("#000000, #ffffff").at(0.5).hex() == "#808080");
    CHECK_THROWS_AS(ColorRamp::from_spec("#000000"), ValidationError);
    CHECK_THROWS_AS(ColorRamp::from_spec("#00000G,#FFFFFF"), ValidationError);
    CHECK_THROWS_AS(ColorRamp({{0.0, Rgb{}}, {0.0, Rgb{}}, {1.0, Rgb{}}}), ValidationError);
    CHECK_THROWS_AS(ColorRamp({{0.1, Rgb{}}, {1.0, Rgb{}}}), ValidationError);
}

TEST_CASE("heatmap_svg cell colors")
{
    const SimilarityMatrix lowest = two_by_two(1.0);
    const std::string svg = heatmap_svg(lowest);
    CHECK(fill_of(svg, "A", "B") == "#FFFFD9");
    CHECK(fill_of(svg, "A", "A") == "#081D58");
    CHECK(fill_of(heatmap_svg(two_by_two(3.0)), "B", "A") == "#41B6C4");

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("width=\"176\"") != std::string::npos); // 96 + 2 * 32 + 16
    CHECK(count(svg, "<rect") == 4 + 2);
    CHECK(svg.find(">1.0</text>") != std::string::npos); // legend minimum
    CHECK(heatmap_svg(lowest) == svg);

    const std::string annotated = heatmap_svg(pairwise_matrix(builtin_corpus()), ColorRamp::yellow_blue(), true);
    CHECK(annotated.find(">4.7</text>") != std::string::npos);
    CHECK(count(annotated, "<title>") == 1 + 169);
}

TEST_CASE("variance_heatmap_svg")
{
    LabeledMatrix zero{{TechniqueId("A"), TechniqueId("B")}, {0.0, 0.0, 0.0, 0.0}};
    const std::string flat = variance_heatmap_svg(zero);
    CHECK(count(flat, "fill=\"#FFFFD9\"><title>") == 4);

    LabeledMatrix v{{TechniqueId("NLD"), TechniqueId("PC"), TechniqueId("SP")},
                    {0.0, 3.0, 1.0, 3.0, 0.0, 1.0 / 3.0, 1.0, 1.0 / 3.0, 0.0}};
    const std::string svg = variance_heatmap_svg(v);
    CHECK(fill_of(svg, "NLD", "PC") == "#081D58");
    CHECK(fill_of(svg, "PC", "SP") == ColorRamp::yellow_blue().at(1.0 / 9.0).hex());
    CHECK(Rgb::from_hex(fill_of(svg, "PC", "SP")).luminance() >
          ColorRamp::yellow_blue().at(0.25).luminance());
    CHECK(svg.find("variance (max 3.0)") != std::string::npos);

    LabeledMatrix bad{{TechniqueId("A"), TechniqueId("B")}, {0.0, -1.0, -1.0, 0.0}};
    CHECK_THROWS_AS(variance_heatmap_svg(bad), ValidationError);
}

TEST_CASE("tree_to_dot")
{
    const Corpus twins = parse_corpus_file("A \"One\" D_T\nB \"Two\" D_S\n");
    const WeightedGraph g2 = to_graph(pairwise_matrix(twins));
    const std::string two = tree_to_dot(kruskal_mst(g2), g2, true);
    CHECK(count(two, "color=\"red\"") == 1);
    CHECK(count(two, " -- ") == 1);
    CHECK(oracle::check_dot(two).empty());

    const WeightedGraph g = to_graph(pairwise_matrix(builtin_corpus()));
    const SpanningTree t = kruskal_mst(g);
    const std::string overlay = tree_to_dot(t, g, true);
    CHECK(count(overlay, "color=\"red\"") == 12);
    CHECK(count(overlay, "color=\"gray75\"") == 66);
    CHECK(oracle::check_dot(overlay).empty());

    const std::string plain = tree_to_dot(t, g, false);
    CHECK(count(plain, " -- ") == 12);
    CHECK(oracle::check_dot(plain).empty());
    CHECK(plain.find("\"NLD\" -- \"SP\" [color=\"red\", penwidth=3.0, label=\"4.7\"];") !=
          std::string::npos);

    CHECK_THROWS_AS(tree_to_dot(kruskal_mst(g2), g, false), ValidationError);
}

TEST_CASE("DOT checker rejects malformed text")
{
    CHECK_FALSE(oracle::check_dot("graph { \"A\" -- ; }").empty());
    CHECK_FALSE(oracle::check_dot("digraph { }").empty());
    CHECK_FALSE(oracle::check_dot("graph { \"A\" [color=] ; }").empty());
    CHECK_FALSE(oracle::check_dot("graph { \"A\" }").empty());
    CHECK(oracle::check_dot("graph g { \"A\" -- \"B\" [x=1]; }").empty());
}

TEST_CASE("tree_to_edge_list")
{
    const SpanningTree t = kruskal_mst(to_graph(pairwise_matrix(builtin_corpus())));
    const std::string text = tree_to_edge_list(t);
    CHECK(text.rfind("technique_a,technique_b,similarity,distance\nNLD,SP,4.733,0.267\n", 0) == 0);
    CHECK(count(text, "\n") == 13);
}

TEST_CASE("spearman")
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 6, 8, 100};
    const std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(*spearman(x, up) == doctest::Approx(1.0));
    CHECK(*spearman(x, down) == doctest::Approx(-1.0));
    // Ties use average ranks: ranks of y are 1.5, 1.5, 3, 4, 5.
    const std::vector<double> tied{1, 1, 3, 4, 5};
    CHECK(*spearman(x, tied) == doctest::Approx(0.9746794344808963));
    const std::vector<double> flat{2, 2, 2, 2, 2};
    CHECK_FALSE(spearman(x, flat).has_value());
    CHECK_FALSE(spearman(std::vector<double>{1}, std::vector<double>{1}).has_value());
}

TEST_CASE("compare_matrices")
{
    const SimilarityMatrix m = pairwise_matrix(builtin_corpus());
    const ComparisonReport self = compare_matrices(m, m);
    CHECK(self.pair_count == 78);
    CHECK(*self.spearman == doctest::Approx(1.0));
    for (const double d : self.differences.cells) {
        CHECK(d == 0.0);
    }

    LabeledMatrix reversed = m.values();
    for (std::size_t i = 0; i < reversed.size(); ++i) {
        for (std::size_t j = 0; j < reversed.size(); ++j) {
            if (i != j) {
                reversed.at(i, j) = 6.0 - reversed.at(i, j);
            }
        }
    }
    const SimilarityMatrix anti(reversed, Scale::Scaled);
    const ComparisonReport ab = compare_matrices(m, anti, 5);
    const ComparisonReport ba = compare_matrices(anti, m, 5);
    CHECK(*ab.spearman == doctest::Approx(-1.0));
    CHECK(*ab.spearman == *ba.spearman);
    for (std::size_t k = 0; k < ab.differences.cells.size(); ++k) {
        CHECK(ab.differences.cells[k] == -ba.differences.cells[k]);
    }
    REQUIRE(ab.top.size() == 5);
    for (std::size_t k = 1; k < ab.top.size(); ++k) {
        CHECK(std::abs(ab.top[k - 1].difference) >= std::abs(ab.top[k].difference));
    }
    CHECK(ab.top[0].a.str() == "SP");
    CHECK(ab.top[0].b.str() == "NLD");

    CHECK_THROWS_AS(compare_matrices(m, pairwise_matrix(builtin_corpus(), {}, Scale::Unit)),
                    ValidationError);
    CHECK_THROWS_AS(compare_matrices(m, two_by_two(3.0)), ValidationError);

    const std::string text = report_to_text(ab);
    CHECK(text.find("spearman: -1.000") != std::string::npos);
}

TEST_CASE("compare_matrices: label order may differ")
{
    const SimilarityMatrix m({{TechniqueId("A"), TechniqueId("B"), TechniqueId("C")},
                              {5, 4, 2, 4, 5, 3, 2, 3, 5}},
                             Scale::Scaled);
    const SimilarityMatrix permuted({{TechniqueId("C"), TechniqueId("A"), TechniqueId("B")},
                                     {5, 2, 3, 2, 5, 4, 3, 4, 5}},
                                    Scale::Scaled);
    const ComparisonReport r = compare_matrices(m, permuted);
    for (const double d : r.differences.cells) {
        CHECK(d == 0.0);
    }
}
