#include "vizsim/export.hpp"

#include "vizsim/csv.hpp"
#include "vizsim/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

namespace vizsim {

namespace {

using nlohmann::json;

// Fixed-point text without a "-0.000" artifact.
std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::string xml_escape(std::string_view s)
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

json labeled_json(const LabeledMatrix& m, std::string_view scale)
{
    json labels = json::array();
    for (const auto& id : m.labels) {
        labels.push_back(id.str());
    }
    json cells = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) {
            row.push_back(m.at(i, j));
        }
        cells.push_back(std::move(row));
    }
    return json{{"labels", std::move(labels)}, {"scale", scale}, {"cells", std::move(cells)}};
}

// SVG layout, fixed for golden-file stability.
constexpr int cell_px = 32;
constexpr int gutter_px = 96;
constexpr int margin_px = 16;
constexpr int legend_px = 56;

std::string render_heatmap(const LabeledMatrix& m, const ColorRamp& ramp, bool annotate,
                           std::string_view title, std::string_view legend_caption,
                           double legend_lo, double legend_hi,
                           const std::function<double(double)>& normalize)
{
    const int n = static_cast<int>(m.size());
    const int grid = n * cell_px;
    const int width = gutter_px + grid + margin_px;
    const int height = gutter_px + grid + legend_px;

    std::string out;
    const auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    const auto num = [](int v) { return std::to_string(v); };

    line(R"(<?xml version="1.0" encoding="UTF-8" standalone="no"?>)");
    line(R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width=")" + num(width) +
         R"(" height=")" + num(height) + R"(" viewBox="0 0 )" + num(width) + " " + num(height) +
         R"(" font-family="sans-serif" font-size="12">)");
    line("  <title>" + xml_escape(title) + "</title>");
    line(R"(  <defs>)");
    line(R"(    <linearGradient id="ramp" x1="0" y1="0" x2="1" y2="0">)");
    for (const auto& stop : ramp.stops()) {
        line(R"(      <stop offset=")" + fixed(stop.position, 3) + R"(" stop-color=")" +
             stop.color.hex() + R"("/>)");
    }
    line(R"(    </linearGradient>)");
    line(R"(  </defs>)");
    line(R"(  <rect x="0" y="0" width=")" + num(width) + R"(" height=")" + num(height) +
         R"(" fill="#FFFFFF"/>)");

    line(R"(  <g id="column-labels" text-anchor="start">)");
    for (int j = 0; j < n; ++j) {
        const int x = gutter_px + j * cell_px + cell_px / 2;
        const int y = gutter_px - 6;
        line(R"(    <text x=")" + num(x) + R"(" y=")" + num(y) + R"(" transform="rotate(-90 )" +
             num(x) + " " + num(y) + R"svg()" dominant-baseline="middle">)svg" +
             xml_escape(m.labels[static_cast<std::size_t>(j)].str()) + "</text>");
    }
    line("  </g>");
    line(R"(  <g id="row-labels" text-anchor="end">)");
    for (int i = 0; i < n; ++i) {
        line(R"(    <text x=")" + num(gutter_px - 6) + R"(" y=")" +
             num(gutter_px + i * cell_px + cell_px / 2) + R"(" dominant-baseline="middle">)" +
             xml_escape(m.labels[static_cast<std::size_t>(i)].str()) + "</text>");
    }
    line("  </g>");

    line(R"(  <g id="cells">)");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            const Rgb fill = ramp.at(normalize(v));
            const int x = gutter_px + j * cell_px;
            const int y = gutter_px + i * cell_px;
            line(R"(    <rect x=")" + num(x) + R"(" y=")" + num(y) + R"(" width=")" +
                 num(cell_px) + R"(" height=")" + num(cell_px) + R"(" fill=")" + fill.hex() +
                 R"("><title>)" + xml_escape(m.labels[static_cast<std::size_t>(i)].str()) + " / " +
                 xml_escape(m.labels[static_cast<std::size_t>(j)].str()) + ": " + fixed(v, 3) +
                 "</title></rect>");
            if (annotate) {
                const char* ink = fill.luminance() < 0.4 ? "#FFFFFF" : "#000000";
                line(R"(    <text x=")" + num(x + cell_px / 2) + R"(" y=")" +
                     num(y + cell_px / 2) +
                     R"(" text-anchor="middle" dominant-baseline="middle" font-size="10" fill=")" +
                     ink + R"(">)" + fixed(v, 1) + "</text>");
            }
        }
    }
    line("  </g>");

    const int bar_y = gutter_px + grid + 12;
    line(R"(  <g id="legend">)");
    line(R"(    <rect x=")" + num(gutter_px) + R"(" y=")" + num(bar_y) + R"(" width=")" +
         num(std::max(grid, cell_px)) + R"svg(" height="12" fill="url(#ramp)"/>)svg");
    line(R"(    <text x=")" + num(gutter_px) + R"(" y=")" + num(bar_y + 26) +
         R"(" text-anchor="start">)" + fixed(legend_lo, 1) + "</text>");
    line(R"(    <text x=")" + num(gutter_px + std::max(grid, cell_px)) + R"(" y=")" +
         num(bar_y + 26) + R"(" text-anchor="end">)" + fixed(legend_hi, 1) + "</text>");
    line(R"(    <text x=")" + num(gutter_px - 6) + R"(" y=")" + num(bar_y + 10) +
         R"(" text-anchor="end">)" + xml_escape(legend_caption) + "</text>");
    line("  </g>");
    line("</svg>");
    return out;
}

int hex_digit(char c)
{
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

double linearize(std::uint8_t channel) noexcept
{
    const double c = channel / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

} // namespace

std::string matrix_to_csv(const LabeledMatrix& m)
{
    std::string out = "technique";
    for (const auto& id : m.labels) {
        out += ',';
        out += csv::escape(id.str());
    }
    out += '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += csv::escape(m.labels[i].str());
        for (std::size_t j = 0; j < m.size(); ++j) {
            out += ',';
            out += fixed(m.at(i, j), 3);
        }
        out += '\n';
    }
    return out;
}

std::string matrix_to_csv(const SimilarityMatrix& m)
{
    return matrix_to_csv(m.values());
}

std::string matrix_to_json(const SimilarityMatrix& m)
{
    return labeled_json(m.values(), scale_name(m.scale())).dump(2) + "\n";
}

SimilarityMatrix matrix_from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        LabeledMatrix m;
        for (const auto& id : doc.at("labels")) {
            m.labels.emplace_back(id.get<std::string>());
        }
        const auto& rows = doc.at("cells");
        if (rows.size() != m.labels.size()) {
            throw ParseError("cells must have one row per label");
        }
        for (const auto& row : rows) {
            if (row.size() != m.labels.size()) {
                throw ParseError("cells must be square");
            }
            for (const auto& v : row) {
                m.cells.push_back(v.get<double>());
            }
        }
        return SimilarityMatrix(std::move(m), scale_from_name(doc.at("scale").get<std::string>()));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed matrix JSON: ") + e.what());
    }
}

std::string aggregate_to_csv(const Aggregate& agg)
{
    std::string out = "technique_a,technique_b,n,mean,variance\n";
    for (const auto& p : agg.pairs) {
        out += csv::escape(p.pair.first.str()) + "," + csv::escape(p.pair.second.str()) + "," +
               std::to_string(p.n) + "," + fixed(p.mean, 3) + "," + fixed(p.variance, 3) + "\n";
    }
    return out;
}

std::string aggregate_to_json(const Aggregate& agg)
{
    json pairs = json::array();
    for (const auto& p : agg.pairs) {
        pairs.push_back(json{{"technique_a", p.pair.first.str()},
                             {"technique_b", p.pair.second.str()},
                             {"n", p.n},
                             {"mean", p.mean},
                             {"variance", p.variance}});
    }
    const json doc{{"mean", labeled_json(agg.mean.values(), scale_name(agg.mean.scale()))},
                   {"variance", labeled_json(agg.variance, "variance")},
                   {"pairs", std::move(pairs)}};
    return doc.dump(2) + "\n";
}

Rgb Rgb::from_hex(std::string_view hex)
{
    if (hex.size() != 7 || hex[0] != '#') {
        throw ValidationError("color '" + std::string(hex) + "' is not #RRGGBB");
    }
    std::uint8_t channels[3];
    for (int k = 0; k < 3; ++k) {
        const int hi = hex_digit(hex[1 + 2 * k]);
        const int lo = hex_digit(hex[2 + 2 * k]);
        if (hi < 0 || lo < 0) {
            throw ValidationError("color '" + std::string(hex) + "' is not #RRGGBB");
        }
        channels[k] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return {channels[0], channels[1], channels[2]};
}

std::string Rgb::hex() const
{
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", r, g, b);
    return buf;
}

double Rgb::luminance() const noexcept
{
    return 0.2126 * linearize(r) + 0.7152 * linearize(g) + 0.0722 * linearize(b);
}

ColorRamp::ColorRamp(std::vector<Stop> stops) : stops_(std::move(stops))
{
    if (stops_.size() < 2) {
        throw ValidationError("color ramp needs at least two stops");
    }
    if (stops_.front().position != 0.0 || stops_.back().position != 1.0) {
        throw ValidationError("color ramp must start at 0.0 and end at 1.0");
    }
    for (std::size_t i = 1; i < stops_.size(); ++i) {
        if (!(stops_[i].position > stops_[i - 1].position)) {
            throw ValidationError("color ramp positions must increase strictly");
        }
    }
}

ColorRamp ColorRamp::yellow_blue()
{
    return ColorRamp({{0.0, Rgb::from_hex("#FFFFD9")},
                      {0.5, Rgb::from_hex("#41B6C4")},
                      {1.0, Rgb::from_hex("#081D58")}});
}

ColorRamp ColorRamp::from_spec(std::string_view spec)
{
    std::vector<Rgb> colors;
    while (true) {
        const std::size_t comma = spec.find(',');
        std::string_view item = spec.substr(0, comma);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        colors.push_back(Rgb::from_hex(item));
        if (comma == std::string_view::npos) {
            break;
        }
        spec.remove_prefix(comma + 1);
    }
    if (colors.size() < 2) {
        throw ValidationError("color ramp needs at least two colors");
    }
    std::vector<Stop> stops;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        const double pos = i + 1 == colors.size()
                               ? 1.0
                               : static_cast<double>(i) / static_cast<double>(colors.size() - 1);
        stops.push_back({pos, colors[i]});
    }
    return ColorRamp(std::move(stops));
}

Rgb ColorRamp::at(double t) const noexcept
{
    if (!(t > 0.0)) {
        return stops_.front().color;
    }
    if (t >= 1.0) {
        return stops_.back().color;
    }
    std::size_t k = 0;
    while (t > stops_[k + 1].position) {
        ++k;
    }
    const Stop& lo = stops_[k];
    const Stop& hi = stops_[k + 1];
    const double f = (t - lo.position) / (hi.position - lo.position);
    const auto mix = [f](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + (b - a) * f));
    };
    return {mix(lo.color.r, hi.color.r), mix(lo.color.g, hi.color.g), mix(lo.color.b, hi.color.b)};
}

std::string heatmap_svg(const SimilarityMatrix& m, const ColorRamp& ramp, bool annotate)
{
    const double lo = scale_min(m.scale());
    const double hi = scale_max(m.scale());
    return render_heatmap(m.values(), ramp, annotate, "Pairwise similarity", "similarity", lo, hi,
                          [lo, hi](double v) { return (v - lo) / (hi - lo); });
}

std::string variance_heatmap_svg(const LabeledMatrix& v, const ColorRamp& ramp, bool annotate)
{
    double max = 0.0;
    for (const double x : v.cells) {
        if (x < 0.0 || !std::isfinite(x)) {
            throw ValidationError("variance matrix has a negative or non-finite cell");
        }
        max = std::max(max, x);
    }
    return render_heatmap(v, ramp, annotate, "Variance of expert ratings",
                          "variance (max " + fixed(max, 1) + ")", 0.0, max,
                          [max](double x) { return max > 0.0 ? x / max : 0.0; });
}

std::string tree_to_dot(const SpanningTree& t, const WeightedGraph& g, bool overlay)
{
    if (t.labels != g.labels) {
        throw ValidationError("spanning tree and graph have different labels");
    }
    const auto quote = [](const TechniqueId& id) { return "\"" + id.str() + "\""; };

    std::string out = "graph mst {\n";
    out += "  graph [overlap=false, splines=true];\n";
    out += "  node [shape=box, style=rounded, fontname=\"Helvetica\", fontsize=12];\n";
    out += "  edge [fontname=\"Helvetica\", fontsize=10];\n";
    for (const auto& id : g.labels) {
        out += "  " + quote(id) + ";\n";
    }
    for (const Edge& e : t.edges) {
        out += "  " + quote(t.labels[e.a]) + " -- " + quote(t.labels[e.b]) +
               " [color=\"red\", penwidth=3.0, label=\"" + fixed(e.similarity, 1) + "\"];\n";
    }
    if (overlay) {
        for (const Edge& e : g.edges) {
            if (t.contains(e.a, e.b)) {
                continue;
            }
            out += "  " + quote(g.labels[e.a]) + " -- " + quote(g.labels[e.b]) +
                   " [color=\"gray75\", penwidth=0.5, label=\"" + fixed(e.similarity, 1) +
                   "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

std::string tree_to_edge_list(const SpanningTree& t)
{
    std::string out = "technique_a,technique_b,similarity,distance\n";
    for (const Edge& e : t.edges) {
        out += csv::escape(t.labels[e.a].str()) + "," + csv::escape(t.labels[e.b].str()) + "," +
               fixed(e.similarity, 3) + "," + fixed(e.distance, 3) + "\n";
    }
    return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x)
{
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) {
            ++j;
        }
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        return std::nullopt;
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ComparisonReport compare_matrices(const SimilarityMatrix& model, const SimilarityMatrix& expert,
                                  std::size_t top_k)
{
    if (model.scale() != Scale::Scaled || expert.scale() != Scale::Scaled) {
        throw ValidationError("comparison needs two scaled matrices");
    }
    const std::size_t n = model.size();
    if (expert.size() != n) {
        throw ValidationError("compared matrices have different label sets");
    }
    std::vector<std::size_t> expert_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& id = model.labels()[i];
        const auto it = std::find(expert.labels().begin(), expert.labels().end(), id);
        if (it == expert.labels().end()) {
            throw ValidationError("compared matrices have different label sets ('" + id.str() +
                                  "' missing)");
        }
        expert_index[i] = static_cast<std::size_t>(it - expert.labels().begin());
    }

    ComparisonReport report;
    report.differences.labels.assign(model.labels().begin(), model.labels().end());
    report.differences.cells.assign(n * n, 0.0);
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<Divergence> all;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double mv = model.at(i, j);
            const double ev = expert.at(expert_index[i], expert_index[j]);
            report.differences.at(i, j) = mv - ev;
            if (j > i) {
                xs.push_back(mv);
                ys.push_back(ev);
                all.push_back({model.labels()[i], model.labels()[j], mv, ev, mv - ev});
            }
        }
    }
    report.pair_count = xs.size();
    report.spearman = spearman(xs, ys);

    const auto sorted_pair = [](const Divergence& d) {
        return d.a < d.b ? std::pair(d.a.str(), d.b.str()) : std::pair(d.b.str(), d.a.str());
    };
    std::stable_sort(all.begin(), all.end(), [&](const Divergence& x, const Divergence& y) {
        const double ax = std::abs(x.difference);
        const double ay = std::abs(y.difference);
        if (ax != ay) {
            return ax > ay;
        }
        return sorted_pair(x) < sorted_pair(y);
    });
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(std::min(top_k, all.size())), all.end());
    report.top = std::move(all);
    return report;
}

std::string report_to_text(const ComparisonReport& report)
{
    std::string out;
    out += "pairs: " + std::to_string(report.pair_count) + "\n";
    out += "spearman: " + (report.spearman ? fixed(*report.spearman, 3) : std::string("n/a")) +
           "\n";
    out += "top divergent pairs:\n";
    out += "rank,technique_a,technique_b,model,expert,difference\n";
    for (std::size_t k = 0; k < report.top.size(); ++k) {
        const auto& d = report.top[k];
        out += std::to_string(k + 1) + "," + d.a.str() + "," + d.b.str() + "," + fixed(d.model, 3) +
               "," + fixed(d.expert, 3) + "," + fixed(d.difference, 3) + "\n";
    }
    return out;
}

} // namespace vizsim
