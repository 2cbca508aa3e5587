#pragma once

// Similarity graphs and their Kruskal minimum spanning trees. Edge weights
// are distances 5 - similarity, so the minimum tree joins the most similar
// techniques.

#include "vizsim/metric.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace vizsim {

/// Union-find with path compression and union by rank.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n);

    std::size_t find(std::size_t x);
    /// Returns false (and changes nothing) when x and y already share a root.
    bool unite(std::size_t x, std::size_t y);
    std::size_t components() const noexcept { return components_; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
    std::size_t components_;
};

struct Edge {
    /// Label indices; labels[a] is lexicographically smaller than labels[b].
    std::size_t a = 0;
    std::size_t b = 0;
    double distance = 0.0;
    double similarity = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct WeightedGraph {
    std::vector<TechniqueId> labels;
    /// Complete edge set in label order (row-major upper triangle).
    std::vector<Edge> edges;

    const TechniqueId& id_a(const Edge& e) const noexcept { return labels[e.a]; }
    const TechniqueId& id_b(const Edge& e) const noexcept { return labels[e.b]; }
};

/// Similarity on the 1–5 scale converted to a distance in [0, 4].
double similarity_to_distance(double similarity) noexcept;

/// Complete graph over a scaled matrix; unit matrices are rejected.
WeightedGraph to_graph(const SimilarityMatrix& m);

struct SpanningTree {
    std::vector<TechniqueId> labels;
    /// n - 1 edges in Kruskal acceptance order.
    std::vector<Edge> edges;
    double total_distance = 0.0;

    bool contains(std::size_t a, std::size_t b) const noexcept;
    bool contains(std::string_view a, std::string_view b) const;
};

/// Kruskal over edges ordered by (distance, lexicographic id pair).
SpanningTree kruskal_mst(const WeightedGraph& g);

/// Node ids along the unique tree path, both endpoints included.
std::vector<TechniqueId> tree_path(const SpanningTree& t, std::string_view from,
                                   std::string_view to);

/// (id, degree) by descending degree, then ascending id.
std::vector<std::pair<TechniqueId, std::size_t>> degree_ranking(const SpanningTree& t);

} // namespace vizsim
