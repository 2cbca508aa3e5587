#pragma once

// Expert similarity ratings on the 5-point scale: ingestion, study
// completeness and per-pair aggregation.

#include "vizsim/metric.hpp"
#include "vizsim/signature.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vizsim {

/// Unordered technique pair, stored in corpus order (first.index < second.index).
struct TechniquePair {
    TechniqueId first;
    TechniqueId second;

    friend bool operator==(const TechniquePair&, const TechniquePair&) = default;
};

std::string to_string(const TechniquePair& p);

/// All C(n, 2) pairs: corpus order of the first id, then of the second.
std::vector<TechniquePair> enumerate_pairs(const Corpus& corpus);

struct Rating {
    TechniquePair pair;
    std::string expert;
    int value = 0;
};

class RatingSet {
public:
    /// Validates ids against `corpus`, the 1–5 range and (pair, expert)
    /// uniqueness; normalizes pairs to corpus order. Throws ValidationError.
    RatingSet(const Corpus& corpus, std::vector<Rating> ratings);

    std::span<const Rating> ratings() const noexcept { return ratings_; }
    std::span<const TechniqueId> universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return ratings_.size(); }

    /// Experts in order of first appearance.
    std::vector<std::string> experts() const;

private:
    std::vector<TechniqueId> universe_;
    std::vector<Rating> ratings_;
};

/// Reads `technique_a,technique_b,expert_id,rating` CSV (header required).
/// Errors carry the 1-based line number.
RatingSet parse_ratings_csv(std::string_view content, const Corpus& corpus);

struct ExpertCoverage {
    std::string expert;
    std::vector<TechniquePair> missing;
    /// Rated pairs that are not pairs of the checked corpus.
    std::vector<TechniquePair> extra;
    std::size_t rated = 0;
};

struct CompletenessReport {
    std::size_t technique_count = 0;
    std::size_t pairs_per_expert = 0;
    std::size_t total_ratings = 0;
    std::vector<ExpertCoverage> experts;

    bool complete() const noexcept;
    std::size_t expected_total() const noexcept { return experts.size() * pairs_per_expert; }
};

/// Coverage of every expert appearing in `rs`.
CompletenessReport completeness_check(const RatingSet& rs, const Corpus& corpus);
/// Coverage of an explicit expert roster; experts without any rating miss every pair.
CompletenessReport completeness_check(const RatingSet& rs, const Corpus& corpus,
                                      std::span<const std::string> experts);

struct PairStats {
    TechniquePair pair;
    double mean = 0.0;
    /// Sample variance (n - 1 denominator); 0 for a single rating.
    double variance = 0.0;
    std::size_t n = 0;
};

/// Mean and sample variance of a set of ratings; `values` must be non-empty.
PairStats pair_stats(TechniquePair pair, std::span<const int> values);

struct Aggregate {
    SimilarityMatrix mean;
    /// Symmetric, non-negative, zero diagonal.
    LabeledMatrix variance;
    /// One entry per pair in enumerate_pairs order.
    std::vector<PairStats> pairs;
};

/// Throws IncompleteDataError naming the first pair without any rating.
Aggregate aggregate(const RatingSet& rs, const Corpus& corpus);

/// Rounds to one decimal, the precision used when reporting aggregates.
double round1(double v) noexcept;

} // namespace vizsim
