#pragma once

// Interpretation of the JSON verdicts returned by the grading prompts.
//
// Agent verdicts look like
//   {"（1）step text": 1, "（2）step text": 0, "最终得分": 6, "错误链": "(2)"}
// and, when the difficulty module lets the model skip process evaluation,
//   {"最终得分": 0 or 10, "错误链": ""}.
// Baseline verdicts are {"score": n}.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/errors.hpp"
#include "stepmath/text.hpp"

namespace stepmath {

inline constexpr std::string_view kFinalScoreKey = "最终得分";
inline constexpr std::string_view kErrorChainKey = "错误链";

struct VerdictStep {
    int index = 0;
    std::string text;
    int score = 0;

    friend bool operator==(const VerdictStep&, const VerdictStep&) = default;
};

struct AgentVerdict {
    std::vector<VerdictStep> steps;  // sorted by index, 1..N
    std::optional<int> reported_final;
    std::optional<std::string> chain_text;
    /// Answer-only short form: no steps, final score 0 or 10.
    bool bypass = false;

    friend bool operator==(const AgentVerdict&, const AgentVerdict&) = default;
};

namespace detail {

struct StepKey {
    int index;
    std::string text;
};

/// Matches "(N)rest" or "（N）rest" with optional surrounding whitespace.
inline std::optional<StepKey> parse_step_key(std::string_view key) {
    const std::string_view s = text::trim(key);
    std::size_t i = 0;
    if (s.empty() || text::to_half_width(text::next_code_point(s, i)) != U'(') return std::nullopt;
    while (i < s.size() && text::is_ascii_space(s[i])) ++i;
    long long value = 0;
    int digits = 0;
    while (i < s.size()) {
        std::size_t j = i;
        const char32_t cp = text::to_half_width(text::next_code_point(s, j));
        if (cp < U'0' || cp > U'9') break;
        if (++digits > 6) return std::nullopt;
        value = value * 10 + (cp - U'0');
        i = j;
    }
    if (digits == 0) return std::nullopt;
    while (i < s.size() && text::is_ascii_space(s[i])) ++i;
    if (i >= s.size() || text::to_half_width(text::next_code_point(s, i)) != U')') {
        return std::nullopt;
    }
    return StepKey{static_cast<int>(value), std::string(text::trim(s.substr(i)))};
}

inline std::optional<double> as_number(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = std::string(text::trim(v.get<std::string>()));
        if (s.empty()) return std::nullopt;
        try {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

inline std::optional<int> as_binary(const nlohmann::json& v) {
    if (v.is_boolean()) return v.get<bool>() ? 1 : 0;
    if (auto d = as_number(v)) {
        if (*d == 0.0) return 0;
        if (*d == 1.0) return 1;
    }
    return std::nullopt;
}

}  // namespace detail

inline AgentVerdict parse_agent_verdict(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ShapeError("agent verdict must be a JSON object");

    AgentVerdict verdict;
    for (const auto& [key, value] : doc.items()) {
        if (key == kFinalScoreKey) {
            if (auto d = detail::as_number(value)) {
                verdict.reported_final = static_cast<int>(std::round(*d));
            }
            continue;
        }
        if (key == kErrorChainKey) {
            if (value.is_string()) {
                verdict.chain_text = value.get<std::string>();
            } else if (value.is_array()) {
                std::string joined;
                for (const auto& part : value) {
                    if (!part.is_string()) throw ShapeError("error chain list must hold strings");
                    if (!joined.empty()) joined += ", ";
                    joined += part.get<std::string>();
                }
                verdict.chain_text = joined;
            } else if (value.is_null()) {
                verdict.chain_text = "";
            } else {
                throw ShapeError("error chain must be a string");
            }
            continue;
        }
        auto step_key = detail::parse_step_key(key);
        if (!step_key) continue;
        auto score = detail::as_binary(value);
        if (!score) {
            throw ShapeError("step (" + std::to_string(step_key->index) + ") has score " +
                             value.dump() + ", expected 0 or 1");
        }
        verdict.steps.push_back({step_key->index, std::move(step_key->text), *score});
    }

    if (verdict.steps.empty()) {
        if (!verdict.reported_final) {
            throw ShapeError("verdict has neither step entries nor a final score");
        }
        if (*verdict.reported_final != 0 && *verdict.reported_final != 10) {
            throw ShapeError("answer-only verdict must score 0 or 10, got " +
                             std::to_string(*verdict.reported_final));
        }
        verdict.bypass = true;
        return verdict;
    }

    std::sort(verdict.steps.begin(), verdict.steps.end(),
              [](const VerdictStep& a, const VerdictStep& b) { return a.index < b.index; });
    for (std::size_t i = 1; i < verdict.steps.size(); ++i) {
        if (verdict.steps[i].index == verdict.steps[i - 1].index) {
            throw ShapeError("duplicate step index (" + std::to_string(verdict.steps[i].index) + ")");
        }
    }
    std::vector<int> missing;
    const int last = verdict.steps.back().index;
    std::size_t k = 0;
    for (int idx = 1; idx <= last; ++idx) {
        if (k < verdict.steps.size() && verdict.steps[k].index == idx) {
            ++k;
        } else {
            missing.push_back(idx);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (int m : missing) list += (list.empty() ? "" : ", ") + std::to_string(m);
        throw ShapeError("step indices are not contiguous; missing " + list);
    }
    return verdict;
}

/// Reads {"score": n} with n an integer in [min_score, max_score].
inline int parse_score_verdict(const nlohmann::json& doc, int min_score, int max_score) {
    if (!doc.is_object() || !doc.contains("score")) {
        throw ShapeError("baseline verdict must be an object with a 'score' field");
    }
    const auto d = detail::as_number(doc.at("score"));
    if (!d || std::floor(*d) != *d) {
        throw ShapeError("baseline score must be an integer, got " + doc.at("score").dump());
    }
    if (*d < min_score || *d > max_score) {
        throw ShapeError("baseline score " + doc.at("score").dump() + " outside [" +
                         std::to_string(min_score) + "," + std::to_string(max_score) + "]");
    }
    return static_cast<int>(*d);
}

}  // namespace stepmath
