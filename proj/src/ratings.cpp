#include "vizsim/ratings.hpp"

#include "vizsim/csv.hpp"
#include "vizsim/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace vizsim {

namespace {

using PairIndex = std::pair<std::size_t, std::size_t>;

PairIndex normalized_index(const Corpus& corpus, const TechniquePair& p)
{
    const auto a = corpus.index_of(p.first);
    const auto b = corpus.index_of(p.second);
    if (!a) {
        throw ValidationError("unknown technique id '" + p.first.str() + "'");
    }
    if (!b) {
        throw ValidationError("unknown technique id '" + p.second.str() + "'");
    }
    if (*a == *b) {
        throw ValidationError("self-pair " + p.first.str() + "/" + p.second.str() +
                              " cannot be rated");
    }
    return {std::min(*a, *b), std::max(*a, *b)};
}

TechniquePair pair_at(const Corpus& corpus, PairIndex idx)
{
    return {corpus[idx.first].id, corpus[idx.second].id};
}

std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

std::string to_string(const TechniquePair& p)
{
    return p.first.str() + "/" + p.second.str();
}

std::vector<TechniquePair> enumerate_pairs(const Corpus& corpus)
{
    corpus.require_pairwise();
    std::vector<TechniquePair> pairs;
    pairs.reserve(corpus.size() * (corpus.size() - 1) / 2);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.size(); ++j) {
            pairs.push_back({corpus[i].id, corpus[j].id});
        }
    }
    return pairs;
}

RatingSet::RatingSet(const Corpus& corpus, std::vector<Rating> ratings)
    : universe_(corpus.ids()), ratings_(std::move(ratings))
{
    std::set<std::pair<PairIndex, std::string>> seen;
    for (auto& r : ratings_) {
        const PairIndex idx = normalized_index(corpus, r.pair);
        r.pair = pair_at(corpus, idx);
        if (r.value < 1 || r.value > 5) {
            throw ValidationError("rating " + std::to_string(r.value) + " for " +
                                  to_string(r.pair) + " is outside 1..5");
        }
        if (r.expert.empty()) {
            throw ValidationError("rating for " + to_string(r.pair) + " has an empty expert id");
        }
        if (!seen.emplace(idx, r.expert).second) {
            throw ValidationError("duplicate rating of " + to_string(r.pair) + " by expert '" +
                                  r.expert + "'");
        }
    }
}

std::vector<std::string> RatingSet::experts() const
{
    std::vector<std::string> out;
    for (const auto& r : ratings_) {
        if (std::find(out.begin(), out.end(), r.expert) == out.end()) {
            out.push_back(r.expert);
        }
    }
    return out;
}

RatingSet parse_ratings_csv(std::string_view content, const Corpus& corpus)
{
    static constexpr std::string_view expected_header[] = {"technique_a", "technique_b",
                                                           "expert_id", "rating"};
    std::vector<Rating> ratings;
    std::set<std::pair<PairIndex, std::string>> seen;
    bool have_header = false;

    for (const auto& record : csv::split_records(content)) {
        const auto fail = [&](const std::string& msg) -> ParseError {
            return ParseError(msg, record.line);
        };
        std::vector<std::string> fields;
        try {
            fields = csv::split_fields(record.text);
        } catch (const ParseError& e) {
            throw e.at_line(record.line);
        }
        if (fields.size() == 1 && trim(fields[0]).empty()) {
            continue;
        }
        if (!have_header) {
            bool ok = fields.size() == 4;
            for (std::size_t i = 0; ok && i < 4; ++i) {
                ok = trim(fields[i]) == expected_header[i];
            }
            if (!ok) {
                throw fail("expected header 'technique_a,technique_b,expert_id,rating'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 4) {
            throw fail("expected 4 fields, got " + std::to_string(fields.size()));
        }

        const std::string_view a = trim(fields[0]);
        const std::string_view b = trim(fields[1]);
        const std::string expert(trim(fields[2]));
        const std::string_view value_text = trim(fields[3]);

        const auto ia = corpus.index_of(a);
        const auto ib = corpus.index_of(b);
        if (!ia) {
            throw fail("unknown technique id '" + std::string(a) + "'");
        }
        if (!ib) {
            throw fail("unknown technique id '" + std::string(b) + "'");
        }
        if (*ia == *ib) {
            throw fail("self-pair " + std::string(a) + "/" + std::string(b) + " cannot be rated");
        }
        if (expert.empty()) {
            throw fail("empty expert id");
        }
        int value = 0;
        const auto [end, ec] =
            std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc() || end != value_text.data() + value_text.size()) {
            throw fail("rating '" + std::string(value_text) + "' is not an integer");
        }
        if (value < 1 || value > 5) {
            throw fail("rating " + std::to_string(value) + " is outside 1..5");
        }
        const PairIndex idx{std::min(*ia, *ib), std::max(*ia, *ib)};
        if (!seen.emplace(idx, expert).second) {
            throw fail("duplicate rating of " + to_string(pair_at(corpus, idx)) + " by expert '" +
                       expert + "'");
        }
        ratings.push_back({pair_at(corpus, idx), expert, value});
    }

    if (!have_header) {
        throw ParseError("missing header 'technique_a,technique_b,expert_id,rating'", 1);
    }
    return RatingSet(corpus, std::move(ratings));
}

bool CompletenessReport::complete() const noexcept
{
    if (experts.empty()) {
        return false;
    }
    return std::all_of(experts.begin(), experts.end(), [](const ExpertCoverage& e) {
        return e.missing.empty() && e.extra.empty();
    });
}

CompletenessReport completeness_check(const RatingSet& rs, const Corpus& corpus)
{
    const auto experts = rs.experts();
    return completeness_check(rs, corpus, experts);
}

CompletenessReport completeness_check(const RatingSet& rs, const Corpus& corpus,
                                      std::span<const std::string> experts)
{
    const auto pairs = enumerate_pairs(corpus);
    CompletenessReport report;
    report.technique_count = corpus.size();
    report.pairs_per_expert = pairs.size();
    report.total_ratings = rs.size();

    for (const auto& expert : experts) {
        ExpertCoverage cov;
        cov.expert = expert;
        std::set<PairIndex> rated;
        for (const auto& r : rs.ratings()) {
            if (r.expert != expert) {
                continue;
            }
            ++cov.rated;
            const auto a = corpus.index_of(r.pair.first);
            const auto b = corpus.index_of(r.pair.second);
            if (!a || !b) {
                cov.extra.push_back(r.pair);
                continue;
            }
            rated.insert({std::min(*a, *b), std::max(*a, *b)});
        }
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            for (std::size_t j = i + 1; j < corpus.size(); ++j) {
                if (rated.count({i, j}) == 0) {
                    cov.missing.push_back({corpus[i].id, corpus[j].id});
                }
            }
        }
        report.experts.push_back(std::move(cov));
    }
    return report;
}

PairStats pair_stats(TechniquePair pair, std::span<const int> values)
{
    if (values.empty()) {
        throw IncompleteDataError("pair " + to_string(pair) + " has no ratings");
    }
    // Integer sums keep the result independent of rating order.
    long long sum = 0;
    long long sum_sq = 0;
    for (const int v : values) {
        sum += v;
        sum_sq += static_cast<long long>(v) * v;
    }
    const auto n = static_cast<long long>(values.size());
    PairStats s{std::move(pair), static_cast<double>(sum) / static_cast<double>(n), 0.0,
                values.size()};
    if (n > 1) {
        s.variance = static_cast<double>(n * sum_sq - sum * sum) / static_cast<double>(n * (n - 1));
    }
    return s;
}

Aggregate aggregate(const RatingSet& rs, const Corpus& corpus)
{
    corpus.require_pairwise();
    const std::size_t n = corpus.size();

    std::map<PairIndex, std::vector<int>> by_pair;
    for (const auto& r : rs.ratings()) {
        const auto a = corpus.index_of(r.pair.first);
        const auto b = corpus.index_of(r.pair.second);
        if (!a || !b) {
            throw ValidationError("rating of " + to_string(r.pair) +
                                  " refers to a technique outside the corpus");
        }
        by_pair[{std::min(*a, *b), std::max(*a, *b)}].push_back(r.value);
    }

    LabeledMatrix mean{corpus.ids(), std::vector<double>(n * n, 0.0)};
    LabeledMatrix variance{corpus.ids(), std::vector<double>(n * n, 0.0)};
    std::vector<PairStats> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        mean.at(i, i) = scale_max(Scale::Scaled);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto it = by_pair.find({i, j});
            TechniquePair pair{corpus[i].id, corpus[j].id};
            if (it == by_pair.end()) {
                throw IncompleteDataError("pair " + to_string(pair) + " has no ratings");
            }
            PairStats s = pair_stats(std::move(pair), it->second);
            mean.at(i, j) = mean.at(j, i) = s.mean;
            variance.at(i, j) = variance.at(j, i) = s.variance;
            pairs.push_back(std::move(s));
        }
    }
    return {SimilarityMatrix(std::move(mean), Scale::Scaled), std::move(variance),
            std::move(pairs)};
}

double round1(double v) noexcept
{
    return std::round(v * 10.0) / 10.0;
}

} // namespace vizsim
