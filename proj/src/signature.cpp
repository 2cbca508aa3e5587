#include "vizsim/signature.hpp"

#include "vizsim/error.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace vizsim {

namespace {

struct CategoryInfo {
    char letter;
    std::string_view name;
    std::string_view values;
    std::array<std::string_view, 5> value_names;
};

// Vocabulary of the reference corpus. Value names are labels only.
constexpr std::array<CategoryInfo, 6> categories{{
    {'D', "DataFacet", "TSAR", {"time", "space", "attributes", "relations", ""}},
    {'M', "Mark", "PLA", {"point", "line", "area", "", ""}},
    {'C', "Channel", "PLACS", {"position", "length", "area", "color", "spatial region"}},
    {'R', "Arrangement", "AOS", {"align", "order", "separate", "", ""}},
    {'O', "Orientation", "LPR", {"rectilinear", "parallel", "radial", "", ""}},
    {'L', "LayoutDensity", "SD", {"space-filling", "dense", "", "", ""}},
}};

const CategoryInfo& info(TokenCategory c) noexcept
{
    return categories[static_cast<std::size_t>(c)];
}

bool is_space(char c) noexcept
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_upper(char c) noexcept
{
    return c >= 'A' && c <= 'Z';
}

std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::string quoted(char c)
{
    return std::string("'") + c + "'";
}

} // namespace

char category_letter(TokenCategory c) noexcept
{
    return info(c).letter;
}

std::string_view category_name(TokenCategory c) noexcept
{
    return info(c).name;
}

std::optional<TokenCategory> category_from_letter(char letter) noexcept
{
    for (std::size_t i = 0; i < categories.size(); ++i) {
        if (categories[i].letter == letter) {
            return static_cast<TokenCategory>(i);
        }
    }
    return std::nullopt;
}

std::string_view allowed_values(TokenCategory c) noexcept
{
    return info(c).values;
}

Token::Token(TokenCategory category, char value) : category_(category), value_(value)
{
    if (static_cast<std::size_t>(category) >= categories.size()) {
        throw ValidationError("invalid token category");
    }
    if (allowed_values(category).find(value) == std::string_view::npos) {
        throw ValidationError("unknown value letter " + quoted(value) + " for category " +
                              category_letter(category));
    }
}

Token Token::from_text(std::string_view text)
{
    const Signature sig = parse_signature(text);
    if (sig.size() != 1) {
        throw ParseError("expected exactly one token, got " + std::to_string(sig.size()));
    }
    return sig[0];
}

std::uint8_t Token::code() const noexcept
{
    const auto cat = static_cast<std::uint8_t>(category_);
    const auto val = static_cast<std::uint8_t>(allowed_values(category_).find(value_));
    return static_cast<std::uint8_t>(((cat + 1U) << 3U) | val);
}

std::string Token::text() const
{
    return {category_letter(category_), '_', value_};
}

std::string_view Token::value_name() const noexcept
{
    const auto& ci = info(category_);
    return ci.value_names[ci.values.find(value_)];
}

Signature::Signature(std::vector<Token> tokens) : tokens_(std::move(tokens))
{
    if (tokens_.empty()) {
        throw ValidationError("signature must contain at least one token");
    }
    if (tokens_.size() > max_tokens) {
        throw ValidationError("signature has " + std::to_string(tokens_.size()) +
                              " tokens; the maximum is " + std::to_string(max_tokens));
    }
}

bool Signature::is_category_ordered() const noexcept
{
    return std::is_sorted(tokens_.begin(), tokens_.end(), [](const Token& a, const Token& b) {
        return a.category() < b.category();
    });
}

Signature parse_signature(std::string_view text, bool strict)
{
    std::vector<Token> tokens;
    std::size_t pos = 0;
    const auto column = [](std::size_t p) { return p + 1; };

    while (true) {
        while (pos < text.size() && is_space(text[pos])) {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        const std::size_t start = pos;
        // Each token is exactly `<letter>_<letter>`; concatenated tokens are
        // consumed greedily three characters at a time.
        if (pos + 3 > text.size() || !is_upper(text[pos]) || text[pos + 1] != '_' ||
            !is_upper(text[pos + 2])) {
            std::size_t end = pos;
            while (end < text.size() && !is_space(text[end])) {
                ++end;
            }
            throw ParseError("malformed token '" + std::string(text.substr(pos, std::min<std::size_t>(end - pos, 8))) +
                                 "' (expected <category>_<value>)",
                             0, column(start));
        }
        const auto category = category_from_letter(text[pos]);
        if (!category) {
            throw ParseError("unknown category letter " + quoted(text[pos]), 0, column(start));
        }
        const char value = text[pos + 2];
        if (allowed_values(*category).find(value) == std::string_view::npos) {
            throw ParseError("unknown value letter " + quoted(value) + " for category " +
                                 text[pos],
                             0, column(start + 2));
        }
        Token token(*category, value);
        if (strict && !tokens.empty() && token.category() < tokens.back().category()) {
            throw ParseError("category order violation: " + token.text() + " follows " +
                                 tokens.back().text(),
                             0, column(start));
        }
        if (tokens.size() == Signature::max_tokens) {
            throw ParseError("signature exceeds " + std::to_string(Signature::max_tokens) +
                                 " tokens",
                             0, column(start));
        }
        tokens.push_back(token);
        pos += 3;
    }

    if (tokens.empty()) {
        throw ParseError("empty signature");
    }
    return Signature(std::move(tokens));
}

std::string format_signature(const Signature& sig, bool compact)
{
    std::string out;
    out.reserve(sig.size() * 4);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i != 0 && !compact) {
            out += ' ';
        }
        out += sig[i].text();
    }
    return out;
}

TechniqueId::TechniqueId(std::string id) : id_(std::move(id))
{
    if (id_.empty() || id_.size() > max_length) {
        throw ValidationError("technique id '" + id_ + "' must have 1 to " +
                              std::to_string(max_length) + " characters");
    }
    const bool alnum = std::all_of(id_.begin(), id_.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    });
    if (!alnum) {
        throw ValidationError("technique id '" + id_ + "' must contain only letters and digits");
    }
}

Corpus::Corpus(std::vector<Technique> techniques) : techniques_(std::move(techniques))
{
    std::unordered_set<std::string> seen;
    for (const auto& t : techniques_) {
        if (t.display_name.empty()) {
            throw ValidationError("technique '" + t.id.str() + "' has an empty display name");
        }
        if (t.display_name.find_first_of("\"\n\r") != std::string::npos) {
            throw ValidationError("display name of '" + t.id.str() +
                                  "' must not contain quotes or line breaks");
        }
        if (!seen.insert(t.id.str()).second) {
            throw ValidationError("duplicate technique id '" + t.id.str() + "'");
        }
    }
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const noexcept
{
    for (std::size_t i = 0; i < techniques_.size(); ++i) {
        if (techniques_[i].id.str() == id) {
            return i;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Corpus::index_of(const TechniqueId& id) const noexcept
{
    return index_of(std::string_view(id.str()));
}

std::vector<TechniqueId> Corpus::ids() const
{
    std::vector<TechniqueId> out;
    out.reserve(techniques_.size());
    for (const auto& t : techniques_) {
        out.push_back(t.id);
    }
    return out;
}

void Corpus::require_pairwise() const
{
    if (techniques_.size() < 2) {
        throw ValidationError("corpus has fewer than 2 techniques (found " +
                              std::to_string(techniques_.size()) + ")");
    }
}

const Corpus& builtin_corpus()
{
    static const Corpus corpus = [] {
        struct Row {
            const char* id;
            const char* name;
            const char* signature;
        };
        static constexpr Row rows[] = {
            {"BT", "Bar Table", "D_AM_AC_PC_LC_CR_AO_LL_S"},
            {"SP", "Scatter Plot", "D_AM_PC_PC_AC_CR_SO_LL_D"},
            {"PC", "Parallel Coordinates", "D_AM_LC_PC_CR_AO_PL_D"},
            {"LP", "Line Plot", "D_TD_AM_PM_LC_PC_CR_OO_LL_D"},
            {"SD", "Spiral Display", "D_TD_AM_AC_PC_CR_OO_RL_S"},
            {"TW", "Time Wheel", "D_TD_AM_LC_PC_CR_OO_RL_D"},
            {"CM", "Colored Map", "D_SD_AM_AC_PC_CC_SR_SO_LL_S"},
            {"SM", "Small Multiples", "D_TD_SM_PM_LM_AC_PR_AO_LO_PO_RL_S"},
            {"STC", "Space-Time Cube", "D_TD_SM_AC_PC_CC_SR_OO_LL_S"},
            {"NM", "Network Map", "D_SD_RM_PM_LM_AC_PC_AC_CC_SR_SR_OO_LL_S"},
            {"NLD", "Node-Link Diagram", "D_RD_AM_PM_LC_PC_AC_CR_SO_LL_D"},
            {"AM", "Adjacency Matrix", "D_RD_AM_AC_PC_CR_AO_LL_S"},
            {"IM", "Incidence Matrix", "D_RD_AM_LC_PC_AC_CR_AO_LO_PL_D"},
        };
        std::vector<Technique> techniques;
        for (const auto& row : rows) {
            techniques.push_back(
                {TechniqueId(row.id), row.name, parse_signature(row.signature, /*strict=*/true)});
        }
        return Corpus(std::move(techniques));
    }();
    return corpus;
}

Corpus parse_corpus_file(std::string_view content, bool strict)
{
    std::vector<Technique> techniques;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;

    while (!content.empty()) {
        ++line_no;
        const std::size_t eol = content.find('\n');
        std::string_view raw = content.substr(0, eol);
        content = eol == std::string_view::npos ? std::string_view{} : content.substr(eol + 1);

        // Strip a comment unless the '#' sits inside the quoted display name.
        bool in_quotes = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"') {
                in_quotes = !in_quotes;
            } else if (raw[i] == '#' && !in_quotes) {
                raw = raw.substr(0, i);
                break;
            }
        }
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());
        const auto col = [&](std::size_t offset) { return indent + offset + 1; };

        std::size_t pos = 0;
        while (pos < line.size() && !is_space(line[pos])) {
            ++pos;
        }
        const std::string id_text(line.substr(0, pos));
        std::optional<TechniqueId> id;
        try {
            id.emplace(id_text);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no, col(0));
        }
        if (seen.count(id_text) != 0) {
            throw ParseError("duplicate technique id '" + id_text + "'", line_no, col(0));
        }

        while (pos < line.size() && is_space(line[pos])) {
            ++pos;
        }
        if (pos >= line.size() || line[pos] != '"') {
            throw ParseError("expected quoted display name after id", line_no, col(pos));
        }
        const std::size_t close = line.find('"', pos + 1);
        if (close == std::string_view::npos) {
            throw ParseError("unterminated display name", line_no, col(pos));
        }
        const std::string name(trim(line.substr(pos + 1, close - pos - 1)));
        if (name.empty()) {
            throw ParseError("empty display name", line_no, col(pos));
        }

        const std::size_t sig_start = close + 1;
        if (sig_start < line.size() && !is_space(line[sig_start])) {
            throw ParseError("expected whitespace after display name", line_no, col(sig_start));
        }
        const std::string_view sig_text = line.substr(sig_start);
        if (trim(sig_text).empty()) {
            throw ParseError("missing signature", line_no, col(sig_start));
        }
        try {
            techniques.push_back({std::move(*id), name, parse_signature(sig_text, strict)});
        } catch (const ParseError& e) {
            throw e.at_line(line_no, indent + sig_start);
        }
        seen.insert(id_text);
    }

    if (techniques.empty()) {
        throw ParseError("corpus has fewer than 2 techniques (found 0)");
    }
    return Corpus(std::move(techniques));
}

std::string format_corpus(const Corpus& corpus, bool compact)
{
    std::string out;
    for (const auto& t : corpus.techniques()) {
        out += t.id.str();
        out += " \"";
        out += t.display_name;
        out += "\" ";
        out += format_signature(t.signature, compact);
        out += '\n';
    }
    return out;
}

} // namespace vizsim
