#pragma once

// Deterministic text emitters: matrices as CSV/JSON, heatmaps as SVG,
// spanning trees as DOT, plus model-vs-expert matrix comparison.

#include "vizsim/metric.hpp"
#include "vizsim/ratings.hpp"
#include "vizsim/simgraph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vizsim {

/// Header row and column of ids, values with 3 decimals, LF line endings.
std::string matrix_to_csv(const LabeledMatrix& m);
std::string matrix_to_csv(const SimilarityMatrix& m);

/// {"cells": [[...], ...], "labels": [...], "scale": "unit"|"scaled"}; full precision.
std::string matrix_to_json(const SimilarityMatrix& m);
SimilarityMatrix matrix_from_json(std::string_view text);

/// technique_a,technique_b,n,mean,variance per pair.
std::string aggregate_to_csv(const Aggregate& agg);
/// {"mean": <matrix>, "pairs": [...], "variance": <matrix>}.
std::string aggregate_to_json(const Aggregate& agg);

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    /// Parses `#RRGGBB`.
    static Rgb from_hex(std::string_view hex);
    /// Uppercase `#RRGGBB`.
    std::string hex() const;
    /// WCAG relative luminance in [0, 1].
    double luminance() const noexcept;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

class ColorRamp {
public:
    struct Stop {
        double position;
        Rgb color;
    };

    /// Positions must increase strictly from 0.0 to 1.0.
    explicit ColorRamp(std::vector<Stop> stops);

    /// Light yellow -> teal -> dark blue.
    static ColorRamp yellow_blue();

    /// Comma-separated `#RRGGBB` colors, spaced evenly over [0, 1].
    static ColorRamp from_spec(std::string_view spec);

    /// Piecewise-linear sRGB interpolation; `t` is clamped to [0, 1].
    Rgb at(double t) const noexcept;

    std::span<const Stop> stops() const noexcept { return stops_; }

private:
    std::vector<Stop> stops_;
};

/// Similarity heatmap; cells colored over the matrix's scale range.
std::string heatmap_svg(const SimilarityMatrix& m, const ColorRamp& ramp = ColorRamp::yellow_blue(),
                        bool annotate = false);

/// Variance heatmap normalized to [0, observed max]; the legend states the max.
std::string variance_heatmap_svg(const LabeledMatrix& v,
                                 const ColorRamp& ramp = ColorRamp::yellow_blue(),
                                 bool annotate = false);

/// Undirected DOT graph. Tree edges are thick red; with `overlay` every other
/// graph edge is drawn thin gray. Throws ValidationError on label mismatch.
std::string tree_to_dot(const SpanningTree& t, const WeightedGraph& g, bool overlay = false);

/// technique_a,technique_b,similarity,distance in acceptance order.
std::string tree_to_edge_list(const SpanningTree& t);

/// Spearman rank correlation with average ranks for ties. Empty when
/// either input is constant or the sizes differ or are below 2.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

struct Divergence {
    TechniqueId a;
    TechniqueId b;
    double model = 0.0;
    double expert = 0.0;
    /// model - expert
    double difference = 0.0;
};

struct ComparisonReport {
    /// model - expert per cell, labeled in model order.
    LabeledMatrix differences;
    std::optional<double> spearman;
    std::size_t pair_count = 0;
    /// Largest |difference| first, ties by id pair.
    std::vector<Divergence> top;
};

/// Both matrices must be scaled and share the same label set.
ComparisonReport compare_matrices(const SimilarityMatrix& model, const SimilarityMatrix& expert,
                                  std::size_t top_k = 10);

std::string report_to_text(const ComparisonReport& report);

} // namespace vizsim
