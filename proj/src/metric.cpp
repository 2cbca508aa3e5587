#include "vizsim/metric.hpp"

#include "vizsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vizsim {

namespace {

std::vector<std::uint8_t> encode(std::span<const Token> tokens)
{
    std::vector<std::uint8_t> codes;
    codes.reserve(tokens.size());
    for (const auto& t : tokens) {
        codes.push_back(t.code());
    }
    return codes;
}

std::span<const std::uint8_t> bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

double jaro_from_counts(std::size_t len_a, std::size_t len_b, kernels::MatchCounts c) noexcept
{
    if (len_a == 0 && len_b == 0) {
        return 1.0;
    }
    if (c.matches == 0) {
        return 0.0;
    }
    const double m = static_cast<double>(c.matches);
    const double t = static_cast<double>(c.half_transpositions) / 2.0;
    return (m / static_cast<double>(len_a) + m / static_cast<double>(len_b) + (m - t) / m) / 3.0;
}

template <typename T>
std::size_t common_prefix(std::span<const T> a, std::span<const T> b, std::size_t cap) noexcept
{
    const std::size_t limit = std::min({a.size(), b.size(), cap});
    std::size_t n = 0;
    while (n < limit && a[n] == b[n]) {
        ++n;
    }
    return n;
}

double winkler(double jaro_score, std::size_t prefix, const MetricConfig& cfg) noexcept
{
    if (jaro_score < cfg.boost_threshold) {
        return jaro_score;
    }
    const double boosted =
        jaro_score + static_cast<double>(prefix) * cfg.prefix_weight * (1.0 - jaro_score);
    return std::min(boosted, 1.0);
}

} // namespace

UnitScore::UnitScore(double value) : value_(value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError("unit score " + std::to_string(value) + " outside [0, 1]");
    }
}

ScaledScore::ScaledScore(double value) : value_(value)
{
    if (!(value >= 1.0 && value <= 5.0)) {
        throw ValidationError("scaled score " + std::to_string(value) + " outside [1, 5]");
    }
}

void MetricConfig::validate() const
{
    if (!(prefix_weight >= 0.0 && prefix_weight <= 1.0)) {
        throw ValidationError("prefix weight must lie in [0, 1]");
    }
    if (prefix_weight * static_cast<double>(max_prefix) > 1.0) {
        throw ValidationError("prefix weight " + std::to_string(prefix_weight) +
                              " exceeds 1/max_prefix for max_prefix " +
                              std::to_string(max_prefix));
    }
    if (!(boost_threshold >= 0.0 && boost_threshold <= 1.0)) {
        throw ValidationError("boost threshold must lie in [0, 1]");
    }
}

kernels::MatchCounts jaro_counts(std::span<const Token> a, std::span<const Token> b)
{
    const auto ca = encode(a);
    const auto cb = encode(b);
    return kernels::match(kernels::best_available(), ca, cb);
}

UnitScore jaro(std::span<const Token> a, std::span<const Token> b)
{
    return UnitScore(jaro_from_counts(a.size(), b.size(), jaro_counts(a, b)));
}

UnitScore jaro_winkler(std::span<const Token> a, std::span<const Token> b, const MetricConfig& cfg)
{
    cfg.validate();
    const double j = jaro(a, b).value();
    return UnitScore(winkler(j, common_prefix(a, b, cfg.max_prefix), cfg));
}

UnitScore jaro_symbols(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                       kernels::Kind kernel)
{
    return UnitScore(jaro_from_counts(a.size(), b.size(), kernels::match(kernel, a, b)));
}

UnitScore jaro_winkler_symbols(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                               const MetricConfig& cfg, kernels::Kind kernel)
{
    cfg.validate();
    const double j = jaro_symbols(a, b, kernel).value();
    return UnitScore(winkler(j, common_prefix(a, b, cfg.max_prefix), cfg));
}

UnitScore jaro_symbols(std::string_view a, std::string_view b)
{
    return jaro_symbols(bytes(a), bytes(b));
}

UnitScore jaro_winkler_symbols(std::string_view a, std::string_view b, const MetricConfig& cfg)
{
    return jaro_winkler_symbols(bytes(a), bytes(b), cfg);
}

ScaledScore scale_to_likert(UnitScore u) noexcept
{
    return ScaledScore(1.0 + 4.0 * u.value());
}

std::string_view scale_name(Scale s) noexcept
{
    return s == Scale::Unit ? "unit" : "scaled";
}

Scale scale_from_name(std::string_view name)
{
    if (name == "unit") {
        return Scale::Unit;
    }
    if (name == "scaled") {
        return Scale::Scaled;
    }
    throw ValidationError("unknown scale '" + std::string(name) + "'");
}

double scale_min(Scale s) noexcept
{
    return s == Scale::Unit ? 0.0 : 1.0;
}

double scale_max(Scale s) noexcept
{
    return s == Scale::Unit ? 1.0 : 5.0;
}

std::size_t LabeledMatrix::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].str() == id) {
            return i;
        }
    }
    throw ValidationError("unknown technique id '" + std::string(id) + "'");
}

bool LabeledMatrix::is_symmetric() const noexcept
{
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            if (at(i, j) != at(j, i)) {
                return false;
            }
        }
    }
    return true;
}

SimilarityMatrix::SimilarityMatrix(LabeledMatrix values, Scale scale)
    : values_(std::move(values)), scale_(scale)
{
    const std::size_t n = values_.size();
    if (values_.cells.size() != n * n) {
        throw ValidationError("matrix has " + std::to_string(values_.cells.size()) +
                              " cells for " + std::to_string(n) + " labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values_.labels[i] == values_.labels[j]) {
                throw ValidationError("duplicate matrix label '" + values_.labels[i].str() + "'");
            }
        }
    }
    if (!values_.is_symmetric()) {
        throw ValidationError("similarity matrix is not symmetric");
    }
    const double lo = scale_min(scale_);
    const double hi = scale_max(scale_);
    for (std::size_t i = 0; i < n; ++i) {
        if (values_.at(i, i) != hi) {
            throw ValidationError("diagonal cell of '" + values_.labels[i].str() +
                                  "' is not the scale maximum");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_.at(i, j);
            if (!(v >= lo && v <= hi)) {
                throw ValidationError("cell (" + values_.labels[i].str() + ", " +
                                      values_.labels[j].str() + ") outside the " +
                                      std::string(scale_name(scale_)) + " range");
            }
        }
    }
}

double SimilarityMatrix::at(std::string_view row, std::string_view col) const
{
    return values_.at(values_.index_of(row), values_.index_of(col));
}

SimilarityMatrix SimilarityMatrix::to_scaled() const
{
    if (scale_ == Scale::Scaled) {
        return *this;
    }
    LabeledMatrix scaled = values_;
    for (auto& v : scaled.cells) {
        v = scale_to_likert(UnitScore(v)).value();
    }
    return SimilarityMatrix(std::move(scaled), Scale::Scaled);
}

SimilarityMatrix pairwise_matrix(const Corpus& corpus, const MetricConfig& cfg, Scale scale)
{
    corpus.require_pairwise();
    cfg.validate();

    const std::size_t n = corpus.size();
    LabeledMatrix m{corpus.ids(), std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = scale_max(scale);
        for (std::size_t j = i + 1; j < n; ++j) {
            const UnitScore u =
                jaro_winkler(corpus[i].signature.tokens(), corpus[j].signature.tokens(), cfg);
            const double v = scale == Scale::Scaled ? scale_to_likert(u).value() : u.value();
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return SimilarityMatrix(std::move(m), scale);
}

} // namespace vizsim
