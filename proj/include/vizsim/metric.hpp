#pragma once

#include "vizsim/kernels.hpp"
#include "vizsim/signature.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vizsim {

/// Similarity in [0, 1].
class UnitScore {
public:
    explicit UnitScore(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Similarity on the 1–5 rating scale.
class ScaledScore {
public:
    explicit ScaledScore(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

struct MetricConfig {
    double prefix_weight = 0.1;
    std::size_t max_prefix = 4;
    /// The prefix bonus applies only when the Jaro score reaches this value.
    double boost_threshold = 0.0;

    /// Throws ValidationError unless 0 <= p <= 1, p * max_prefix <= 1 and
    /// the threshold lies in [0, 1].
    void validate() const;
};

/// Raw match statistics of the Jaro procedure.
kernels::MatchCounts jaro_counts(std::span<const Token> a, std::span<const Token> b);

/// Jaro similarity over whole tokens. Both empty -> 1, one empty -> 0.
UnitScore jaro(std::span<const Token> a, std::span<const Token> b);
UnitScore jaro_winkler(std::span<const Token> a, std::span<const Token> b,
                       const MetricConfig& cfg = {});

/// The same metrics over arbitrary byte symbols (one byte per symbol).
UnitScore jaro_symbols(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                       kernels::Kind kernel = kernels::best_available());
UnitScore jaro_winkler_symbols(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                               const MetricConfig& cfg = {},
                               kernels::Kind kernel = kernels::best_available());
UnitScore jaro_symbols(std::string_view a, std::string_view b);
UnitScore jaro_winkler_symbols(std::string_view a, std::string_view b, const MetricConfig& cfg = {});

/// Affine map [0, 1] -> [1, 5].
ScaledScore scale_to_likert(UnitScore u) noexcept;

enum class Scale { Unit, Scaled };

std::string_view scale_name(Scale s) noexcept;
Scale scale_from_name(std::string_view name);
double scale_min(Scale s) noexcept;
double scale_max(Scale s) noexcept;

/// Row-major square matrix with one label per row/column.
struct LabeledMatrix {
    std::vector<TechniqueId> labels;
    std::vector<double> cells;

    std::size_t size() const noexcept { return labels.size(); }
    double at(std::size_t row, std::size_t col) const noexcept { return cells[row * size() + col]; }
    double& at(std::size_t row, std::size_t col) noexcept { return cells[row * size() + col]; }
    std::size_t index_of(std::string_view id) const;

    bool is_symmetric() const noexcept;
};

/// Symmetric pairwise similarities with the scale maximum on the diagonal.
class SimilarityMatrix {
public:
    /// Throws ValidationError when the invariants do not hold.
    SimilarityMatrix(LabeledMatrix values, Scale scale);

    const LabeledMatrix& values() const noexcept { return values_; }
    std::span<const TechniqueId> labels() const noexcept { return values_.labels; }
    std::size_t size() const noexcept { return values_.size(); }
    double at(std::size_t row, std::size_t col) const noexcept { return values_.at(row, col); }
    double at(std::string_view row, std::string_view col) const;
    Scale scale() const noexcept { return scale_; }

    /// Applies scale_to_likert to every cell; scaled matrices are returned as is.
    SimilarityMatrix to_scaled() const;

    friend bool operator==(const SimilarityMatrix& a, const SimilarityMatrix& b)
    {
        return a.scale_ == b.scale_ && a.values_.labels == b.values_.labels &&
               a.values_.cells == b.values_.cells;
    }

private:
    LabeledMatrix values_;
    Scale scale_;
};

/// Jaro-Winkler similarity of every unordered pair, in corpus order.
SimilarityMatrix pairwise_matrix(const Corpus& corpus, const MetricConfig& cfg = {},
                                 Scale scale = Scale::Scaled);

} // namespace vizsim
