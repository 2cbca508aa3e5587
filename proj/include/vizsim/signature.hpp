#pragma once

// Technique signatures: a closed vocabulary of categorical tokens
// (`D_T`, `M_L`, ...) and the corpus of techniques described by them.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vizsim {

/// Token categories in signature order: D < M < C < R < O < L.
enum class TokenCategory : std::uint8_t {
    DataFacet,
    Mark,
    Channel,
    Arrangement,
    Orientation,
    LayoutDensity,
};

inline constexpr std::array<TokenCategory, 6> all_categories{
    TokenCategory::DataFacet,   TokenCategory::Mark,        TokenCategory::Channel,
    TokenCategory::Arrangement, TokenCategory::Orientation, TokenCategory::LayoutDensity,
};

char category_letter(TokenCategory c) noexcept;
std::string_view category_name(TokenCategory c) noexcept;
std::optional<TokenCategory> category_from_letter(char letter) noexcept;
/// Value letters admitted by a category, e.g. "TSAR" for DataFacet.
std::string_view allowed_values(TokenCategory c) noexcept;

class Token {
public:
    /// Throws ValidationError when `value` is outside the category's vocabulary.
    Token(TokenCategory category, char value);

    /// Parses the canonical `<category>_<value>` form.
    static Token from_text(std::string_view text);

    TokenCategory category() const noexcept { return category_; }
    char value() const noexcept { return value_; }

    /// Dense nonzero byte encoding, unique per token; used by the match kernels.
    std::uint8_t code() const noexcept;

    std::string text() const;
    /// Human label of the value letter, e.g. "time" for D_T. Label only.
    std::string_view value_name() const noexcept;

    friend bool operator==(const Token&, const Token&) = default;
    friend auto operator<=>(const Token&, const Token&) = default;

private:
    TokenCategory category_;
    char value_;
};

class Signature {
public:
    static constexpr std::size_t max_tokens = 64;

    /// Throws ValidationError if `tokens` is empty or longer than max_tokens.
    explicit Signature(std::vector<Token> tokens);

    std::span<const Token> tokens() const noexcept { return tokens_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    const Token& operator[](std::size_t i) const noexcept { return tokens_[i]; }

    /// True when token categories never decrease along the sequence.
    bool is_category_ordered() const noexcept;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Token> tokens_;
};

/// Parses whitespace-separated (`D_T D_A M_P`) or concatenated (`D_TD_AM_P`)
/// signature text. The two forms may be mixed. Errors carry a 1-based column.
Signature parse_signature(std::string_view text, bool strict = false);

/// Space-separated canonical form, or the concatenated form when `compact`.
std::string format_signature(const Signature& sig, bool compact = false);

class TechniqueId {
public:
    static constexpr std::size_t max_length = 8;

    /// 1–8 ASCII letters or digits; throws ValidationError otherwise.
    explicit TechniqueId(std::string id);

    const std::string& str() const noexcept { return id_; }

    friend bool operator==(const TechniqueId&, const TechniqueId&) = default;
    friend auto operator<=>(const TechniqueId&, const TechniqueId&) = default;

private:
    std::string id_;
};

struct Technique {
    TechniqueId id;
    std::string display_name;
    Signature signature;
};

class Corpus {
public:
    /// Throws ValidationError on duplicate ids or empty display names.
    explicit Corpus(std::vector<Technique> techniques);

    std::span<const Technique> techniques() const noexcept { return techniques_; }
    std::size_t size() const noexcept { return techniques_.size(); }
    const Technique& operator[](std::size_t i) const noexcept { return techniques_[i]; }

    std::optional<std::size_t> index_of(const TechniqueId& id) const noexcept;
    std::optional<std::size_t> index_of(std::string_view id) const noexcept;
    std::vector<TechniqueId> ids() const;

    /// Throws ValidationError unless the corpus has at least two techniques.
    void require_pairwise() const;

private:
    std::vector<Technique> techniques_;
};

/// The 13 techniques of the reference study, in table order.
const Corpus& builtin_corpus();

/// Reads the line-oriented corpus format:
///     <ID> "<Display Name>" <signature tokens>
/// `#` starts a comment. A file without any technique is rejected; pairwise
/// analyses additionally need two (Corpus::require_pairwise).
Corpus parse_corpus_file(std::string_view content, bool strict = false);

/// Writes `corpus` in the format read by parse_corpus_file.
std::string format_corpus(const Corpus& corpus, bool compact = false);

} // namespace vizsim
