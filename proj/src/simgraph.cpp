#include "vizsim/simgraph.hpp"

#include "vizsim/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace vizsim {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0), components_(n)
{
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::find(std::size_t x)
{
    std::size_t root = x;
    while (parent_[root] != root) {
        root = parent_[root];
    }
    while (parent_[x] != root) {
        x = std::exchange(parent_[x], root);
    }
    return root;
}

bool DisjointSet::unite(std::size_t x, std::size_t y)
{
    std::size_t rx = find(x);
    std::size_t ry = find(y);
    if (rx == ry) {
        return false;
    }
    if (rank_[rx] < rank_[ry]) {
        std::swap(rx, ry);
    }
    parent_[ry] = rx;
    if (rank_[rx] == rank_[ry]) {
        ++rank_[rx];
    }
    --components_;
    return true;
}

double similarity_to_distance(double similarity) noexcept
{
    return scale_max(Scale::Scaled) - similarity;
}

WeightedGraph to_graph(const SimilarityMatrix& m)
{
    if (m.scale() != Scale::Scaled) {
        throw ValidationError("similarity graph needs a scaled (1-5) matrix");
    }
    WeightedGraph g;
    g.labels.assign(m.labels().begin(), m.labels().end());
    const std::size_t n = m.size();
    g.edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = m.at(i, j);
            Edge e{i, j, similarity_to_distance(s), s};
            if (g.labels[j] < g.labels[i]) {
                std::swap(e.a, e.b);
            }
            g.edges.push_back(e);
        }
    }
    return g;
}

bool SpanningTree::contains(std::size_t a, std::size_t b) const noexcept
{
    return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return (e.a == a && e.b == b) || (e.a == b && e.b == a);
    });
}

namespace {

std::size_t label_index(std::span<const TechniqueId> labels, std::string_view id)
{
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].str() == id) {
            return i;
        }
    }
    throw ValidationError("unknown technique id '" + std::string(id) + "'");
}

} // namespace

bool SpanningTree::contains(std::string_view a, std::string_view b) const
{
    return contains(label_index(labels, a), label_index(labels, b));
}

SpanningTree kruskal_mst(const WeightedGraph& g)
{
    const std::size_t n = g.labels.size();
    if (n < 2) {
        throw ValidationError("spanning tree needs at least 2 nodes");
    }
    if (g.edges.size() != n * (n - 1) / 2) {
        throw ValidationError("similarity graph is not complete");
    }

    std::vector<Edge> order = g.edges;
    std::stable_sort(order.begin(), order.end(), [&](const Edge& x, const Edge& y) {
        if (x.distance != y.distance) {
            return x.distance < y.distance;
        }
        if (g.labels[x.a] != g.labels[y.a]) {
            return g.labels[x.a] < g.labels[y.a];
        }
        return g.labels[x.b] < g.labels[y.b];
    });

    SpanningTree tree;
    tree.labels = g.labels;
    DisjointSet components(n);
    for (const Edge& e : order) {
        if (components.unite(e.a, e.b)) {
            tree.edges.push_back(e);
            tree.total_distance += e.distance;
            if (tree.edges.size() == n - 1) {
                break;
            }
        }
    }
    if (tree.edges.size() != n - 1 || components.components() != 1) {
        throw std::logic_error("kruskal_mst did not produce a spanning tree");
    }
    return tree;
}

std::vector<TechniqueId> tree_path(const SpanningTree& t, std::string_view from,
                                   std::string_view to)
{
    const std::size_t src = label_index(t.labels, from);
    const std::size_t dst = label_index(t.labels, to);
    const std::size_t n = t.labels.size();

    std::vector<std::vector<std::size_t>> adjacent(n);
    for (const Edge& e : t.edges) {
        adjacent[e.a].push_back(e.b);
        adjacent[e.b].push_back(e.a);
    }

    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(n, unseen);
    parent[src] = src;
    std::queue<std::size_t> frontier;
    frontier.push(src);
    while (!frontier.empty() && parent[dst] == unseen) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (const std::size_t v : adjacent[u]) {
            if (parent[v] == unseen) {
                parent[v] = u;
                frontier.push(v);
            }
        }
    }
    if (parent[dst] == unseen) {
        throw ValidationError("no tree path between '" + std::string(from) + "' and '" +
                              std::string(to) + "'");
    }

    std::vector<TechniqueId> path;
    for (std::size_t v = dst; v != src; v = parent[v]) {
        path.push_back(t.labels[v]);
    }
    path.push_back(t.labels[src]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::pair<TechniqueId, std::size_t>> degree_ranking(const SpanningTree& t)
{
    std::vector<std::size_t> degree(t.labels.size(), 0);
    for (const Edge& e : t.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    std::vector<std::pair<TechniqueId, std::size_t>> out;
    out.reserve(degree.size());
    for (std::size_t i = 0; i < degree.size(); ++i) {
        out.emplace_back(t.labels[i], degree[i]);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) {
            return x.second > y.second;
        }
        return x.first < y.first;
    });
    return out;
}

} // namespace vizsim
