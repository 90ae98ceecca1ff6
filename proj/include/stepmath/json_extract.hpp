#pragma once

// Pulls the verdict JSON object out of free-form model output.
//
// The grading prompts ask for analysis first and the JSON answer last, so the
// LAST top-level object that parses wins. Objects that fail strict parsing get
// one pass of a fixed set of repairs:
//   - code fences removed
//   - trailing commas before '}' or ']' dropped
//   - raw newlines, carriage returns and tabs inside strings escaped
//   - full-width quotes, colons and commas outside strings made ASCII
//   - backslash-escaped quotes used as delimiters (`{\"a\": 1}`) unescaped
//   - backslashes that start no valid JSON escape (LaTeX such as `\sqrt`) doubled
// Anything else is an extraction error.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "stepmath/errors.hpp"
#include "stepmath/text.hpp"

namespace stepmath {

namespace detail {

inline constexpr std::string_view kLeftQuote = "\xE2\x80\x9C";   // “
inline constexpr std::string_view kRightQuote = "\xE2\x80\x9D";  // ”
inline constexpr std::string_view kFullColon = "\xEF\xBC\x9A";   // ：
inline constexpr std::string_view kFullComma = "\xEF\xBC\x8C";   // ，

inline bool at(std::string_view s, std::size_t i, std::string_view token) {
    return s.substr(i, token.size()) == token;
}

enum class QuoteKind { Ascii, FullWidth, Escaped };

/// Returns the length of the closing delimiter at s[i] for a string opened with `kind`, or 0.
inline std::size_t closer_at(std::string_view s, std::size_t i, QuoteKind kind) {
    switch (kind) {
        case QuoteKind::Ascii: return s[i] == '"' ? 1 : 0;
        case QuoteKind::FullWidth:
            if (at(s, i, kRightQuote) || at(s, i, kLeftQuote)) return 3;
            return s[i] == '"' ? 1 : 0;
        case QuoteKind::Escaped: return at(s, i, "\\\"") ? 2 : 0;
    }
    return 0;
}

/// Length of an opening string delimiter at s[i] outside strings, or 0.
inline std::size_t opener_at(std::string_view s, std::size_t i, QuoteKind& kind) {
    if (s[i] == '"') {
        kind = QuoteKind::Ascii;
        return 1;
    }
    if (at(s, i, kLeftQuote) || at(s, i, kRightQuote)) {
        kind = QuoteKind::FullWidth;
        return 3;
    }
    if (at(s, i, "\\\"")) {
        kind = QuoteKind::Escaped;
        return 2;
    }
    return 0;
}

/// Index one past the '}' matching the '{' at `start`, honouring all three
/// string delimiter styles; nullopt when unbalanced.
inline std::optional<std::size_t> find_object_end(std::string_view s, std::size_t start) {
    int depth = 0;
    std::size_t i = start;
    while (i < s.size()) {
        QuoteKind kind{};
        if (std::size_t open = opener_at(s, i, kind)) {
            i += open;
            while (i < s.size()) {
                if (std::size_t close = closer_at(s, i, kind)) {
                    i += close;
                    break;
                }
                i += (s[i] == '\\' && kind != QuoteKind::FullWidth) ? 2 : 1;
            }
            continue;
        }
        if (s[i] == '{') {
            ++depth;
        } else if (s[i] == '}') {
            if (--depth == 0) return i + 1;
        }
        ++i;
    }
    return std::nullopt;
}

/// Applies the bounded repair set to one candidate object.
inline std::string repair_object(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        QuoteKind kind{};
        if (std::size_t open = opener_at(s, i, kind)) {
            i += open;
            out += '"';
            while (i < s.size()) {
                if (std::size_t close = closer_at(s, i, kind)) {
                    i += close;
                    break;
                }
                const char c = s[i];
                if (c == '\\' && kind != QuoteKind::FullWidth && i + 1 < s.size()) {
                    if (std::string_view("\"\\/bfnrtu").find(s[i + 1]) == std::string_view::npos) {
                        out += "\\\\";
                        ++i;
                        continue;
                    }
                    out += c;
                    out += s[i + 1];
                    i += 2;
                    continue;
                }
                if (c == '\n') {
                    out += "\\n";
                } else if (c == '\r') {
                    out += "\\r";
                } else if (c == '\t') {
                    out += "\\t";
                } else if (c == '"' || c == '\\') {
                    out += '\\';
                    out += c;
                } else {
                    out += c;
                }
                ++i;
            }
            out += '"';
            continue;
        }
        if (at(s, i, kFullColon)) {
            out += ':';
            i += kFullColon.size();
            continue;
        }
        if (at(s, i, kFullComma) || s[i] == ',') {
            std::size_t j = i + (s[i] == ',' ? 1 : kFullComma.size());
            while (j < s.size() && text::is_ascii_space(s[j])) ++j;
            if (j < s.size() && (s[j] == '}' || s[j] == ']')) {
                i = j;  // trailing comma
                continue;
            }
            out += ',';
            i += s[i] == ',' ? 1 : kFullComma.size();
            continue;
        }
        out += s[i++];
    }
    return out;
}

inline std::optional<nlohmann::json> try_parse_object(std::string_view candidate) {
    auto parsed = nlohmann::json::parse(candidate, nullptr, /*allow_exceptions=*/false);
    if (!parsed.is_discarded() && parsed.is_object()) return parsed;
    parsed = nlohmann::json::parse(repair_object(candidate), nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) return parsed;
    return std::nullopt;
}

inline std::string strip_code_fences(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (at(s, i, "```")) {
            i += 3;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            continue;
        }
        out += s[i++];
    }
    return out;
}

}  // namespace detail

/// Last recoverable top-level JSON object in `text`.
inline nlohmann::json extract_json(std::string_view text) {
    const std::string body = detail::strip_code_fences(text);
    std::optional<nlohmann::json> last;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '{') {
            ++i;
            continue;
        }
        const auto end = detail::find_object_end(body, i);
        if (end) {
            if (auto obj = detail::try_parse_object(std::string_view(body).substr(i, *end - i))) {
                last = std::move(obj);
                i = *end;
                continue;
            }
        }
        ++i;
    }
    if (!last) throw ExtractionError("no recoverable JSON object in model output", std::string(text));
    return *last;
}

}  // namespace stepmath
