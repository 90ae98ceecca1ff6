#pragma once

// Grading pipelines: the step-wise agent, three single-prompt LLM baselines
// and rule-based exact matching of the final answer.
//
// The agent asks the model to segment, score and chain in one completion, then
// recomputes the final score locally from the parsed step scores. The model's
// own total is kept only to flag disagreement.

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/aggregate.hpp"
#include "stepmath/backend.hpp"
#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"
#include "stepmath/errortree.hpp"
#include "stepmath/json_extract.hpp"
#include "stepmath/prompts.hpp"
#include "stepmath/text.hpp"
#include "stepmath/verdict.hpp"

namespace stepmath {

enum class EvalMode { Agent, V1, V2, V3, RuleEM };

inline std::string_view to_string(EvalMode m) {
    switch (m) {
        case EvalMode::Agent: return "agent";
        case EvalMode::V1: return "v1";
        case EvalMode::V2: return "v2";
        case EvalMode::V3: return "v3";
        case EvalMode::RuleEM: return "rule-em";
    }
    return "?";
}

inline EvalMode parse_eval_mode(std::string_view s) {
    for (auto m : {EvalMode::Agent, EvalMode::V1, EvalMode::V2, EvalMode::V3, EvalMode::RuleEM}) {
        if (to_string(m) == s) return m;
    }
    if (s == "rule_em" || s == "ruleem") return EvalMode::RuleEM;
    throw ParseError("unknown mode '" + std::string(s) + "'");
}

/// Answer-level modes produce a 0/1 grade compared against the binary gold.
constexpr bool is_answer_mode(EvalMode m) { return m == EvalMode::V1 || m == EvalMode::RuleEM; }

struct EvalConfig {
    EvalMode mode = EvalMode::Agent;
    ModuleSet modules;
    std::optional<int> step_hint;
    /// Restricts step_hint to the replication grid {4, 6, 8, 10, 12}.
    bool grid_preset = false;
    PromptLanguage language = PromptLanguage::Chinese;
    AggregationPolicy policy;
    std::string model_name = "gpt-4o-2024-08-06";
    double temperature = 0.0;
    std::optional<int> max_output_tokens;
    std::chrono::milliseconds timeout{120'000};

    void validate() const {
        if (!modules.empty() && mode != EvalMode::Agent) {
            throw UnsupportedError("external modules only apply to agent mode");
        }
        if (mode == EvalMode::Agent) variant_for(modules);
        if (step_hint) {
            if (grid_preset) {
                const int h = *step_hint;
                if (h != 4 && h != 6 && h != 8 && h != 10 && h != 12) {
                    throw UnsupportedError("step hint must be one of 4, 6, 8, 10, 12 in the preset");
                }
            } else if (*step_hint < 2) {
                throw UnsupportedError("step hint must be >= 2");
            }
        }
        if (temperature < 0.0) throw UnsupportedError("temperature must be >= 0");
        policy.validate();
    }
};

struct EvaluationResult {
    EvalMode mode = EvalMode::Agent;
    int final_score = 0;
    std::optional<int> binary;
    std::vector<VerdictStep> steps;
    std::optional<int> reported_final;
    bool score_mismatch = false;
    bool bypass = false;
    std::vector<ErrorChain> chains;
    ErrorForest forest;
    std::vector<std::string> diagnostics;
    std::vector<Transcript> transcripts;
    /// Number of re-asks after a malformed verdict.
    int reasks = 0;
};

/// Evaluation failure with the transcripts gathered before it.
class EvaluationError : public Error {
public:
    EvaluationError(std::string kind, const std::string& what, std::vector<Transcript> transcripts)
        : Error(what), kind_(std::move(kind)), transcripts_(std::move(transcripts)) {}

    /// transport, auth, request, empty, script, extraction, shape, unsupported
    const std::string& kind() const noexcept { return kind_; }
    const std::vector<Transcript>& transcripts() const noexcept { return transcripts_; }

private:
    std::string kind_;
    std::vector<Transcript> transcripts_;
};

namespace detail {

inline CompletionRequest make_request(const EvalConfig& config, std::string prompt,
                                      std::string tag) {
    CompletionRequest req;
    req.prompt = std::move(prompt);
    req.model_name = config.model_name;
    req.temperature = config.temperature;
    req.max_output_tokens = config.max_output_tokens;
    req.timeout = config.timeout;
    req.tag = std::move(tag);
    return req;
}

inline Transcript call_backend(CompletionBackend& backend, const CompletionRequest& req,
                               const std::vector<Transcript>& so_far) {
    try {
        return backend.complete(req);
    } catch (const AuthError& e) {
        throw EvaluationError("auth", e.what(), so_far);
    } catch (const RequestError& e) {
        throw EvaluationError("request", e.what(), so_far);
    } catch (const EmptyResponseError& e) {
        throw EvaluationError("empty", e.what(), so_far);
    } catch (const ScriptExhaustedError& e) {
        throw EvaluationError("script", e.what(), so_far);
    } catch (const BackendError& e) {
        throw EvaluationError("transport", e.what(), so_far);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Agent
// ---------------------------------------------------------------------------

/// Builds the local result from a parsed verdict. Exposed for testing.
inline EvaluationResult interpret_agent_verdict(const Problem& problem, const AgentVerdict& verdict,
                                                const AggregationPolicy& policy = {}) {
    EvaluationResult r;
    r.mode = EvalMode::Agent;
    r.reported_final = verdict.reported_final;

    if (verdict.bypass) {
        r.bypass = true;
        r.final_score = *verdict.reported_final;
        r.binary = r.final_score == 10 ? 1 : 0;
        if (verdict.chain_text && !text::trim(*verdict.chain_text).empty()) {
            r.diagnostics.push_back("answer-only verdict carries error chains; ignored");
        }
        return r;
    }

    r.steps = verdict.steps;
    std::vector<int> scores;
    scores.reserve(r.steps.size());
    for (const auto& s : r.steps) scores.push_back(s.score);
    const auto agg = aggregate_detailed(problem.problem_type, scores, policy);
    r.final_score = agg.score;
    r.binary = binary_score(problem.problem_type, scores, agg.score);
    if (agg.degenerate_single_step) {
        r.diagnostics.push_back("single-step calculation response scored on the answer alone");
    }
    if (r.reported_final) r.score_mismatch = *r.reported_final != r.final_score;

    if (verdict.chain_text) {
        try {
            r.chains = parse_chains(*verdict.chain_text);
        } catch (const ParseError& e) {
            r.diagnostics.push_back(e.what());
        }
    }
    auto built = build_forest(r.chains);
    r.forest = std::move(built.forest);
    for (auto& d : built.diagnostics) r.diagnostics.push_back(std::move(d));

    ScoredSolution scored;
    scored.problem_id = problem.id;
    scored.origin = ScoreOrigin::AgentVerdict;
    for (const auto& s : r.steps) {
        scored.steps.push_back({s.index, s.text, s.score ? StepLabel::Correct : StepLabel::Incorrect});
    }
    for (auto& d : validate_against_labels(r.chains, scored)) r.diagnostics.push_back(std::move(d));
    return r;
}

/// Step-wise agent evaluation. One re-ask with the same prompt is made when
/// the first verdict cannot be extracted or has the wrong shape.
inline EvaluationResult evaluate(const Problem& problem, std::string_view solution,
                                 const EvalConfig& config, CompletionBackend& backend,
                                 const std::string& tag = {}) {
    config.validate();
    const bool difficulty = config.modules.contains(AgentModule::Difficulty);
    const auto request = detail::make_request(
        config, build_agent_prompt(problem, solution, config.modules, config.language, config.step_hint),
        tag);

    std::vector<Transcript> transcripts;
    std::vector<std::string> notes;
    for (int attempt = 0;; ++attempt) {
        transcripts.push_back(detail::call_backend(backend, request, transcripts));
        try {
            const auto verdict = parse_agent_verdict(extract_json(transcripts.back().raw_response));
            if (verdict.bypass && !difficulty) {
                throw ShapeError("answer-only verdict returned without the difficulty module");
            }
            auto result = interpret_agent_verdict(problem, verdict, config.policy);
            result.transcripts = std::move(transcripts);
            result.reasks = attempt;
            notes.insert(notes.end(), result.diagnostics.begin(), result.diagnostics.end());
            result.diagnostics = std::move(notes);
            return result;
        } catch (const ExtractionError& e) {
            if (attempt >= 1) throw EvaluationError("extraction", e.what(), std::move(transcripts));
            notes.push_back(std::string("re-asked after malformed verdict: ") + e.what());
        } catch (const ShapeError& e) {
            if (attempt >= 1) throw EvaluationError("shape", e.what(), std::move(transcripts));
            notes.push_back(std::string("re-asked after malformed verdict: ") + e.what());
        }
    }
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

namespace detail {

inline EvaluationResult evaluate_baseline(BaselineKind kind, const Problem& problem,
                                          std::string_view solution, const EvalConfig& config,
                                          CompletionBackend& backend, const std::string& tag) {
    const auto request = make_request(
        config, build_baseline_prompt(kind, problem, solution, config.language), tag);
    std::vector<Transcript> transcripts;
    transcripts.push_back(call_backend(backend, request, transcripts));

    EvaluationResult r;
    try {
        const auto doc = extract_json(transcripts.back().raw_response);
        if (kind == BaselineKind::V1) {
            r.mode = EvalMode::V1;
            r.binary = parse_score_verdict(doc, 0, 1);
            r.final_score = *r.binary * 10;
        } else {
            r.mode = kind == BaselineKind::V2 ? EvalMode::V2 : EvalMode::V3;
            r.final_score = parse_score_verdict(doc, 0, 10);
        }
    } catch (const ExtractionError& e) {
        throw EvaluationError("extraction", e.what(), std::move(transcripts));
    } catch (const ShapeError& e) {
        throw EvaluationError("shape", e.what(), std::move(transcripts));
    }
    r.transcripts = std::move(transcripts);
    return r;
}

}  // namespace detail

/// Answer-only judgement: binary 0/1, final_score 0 or 10.
inline EvaluationResult evaluate_v1(const Problem& problem, std::string_view solution,
                                    const EvalConfig& config, CompletionBackend& backend,
                                    const std::string& tag = {}) {
    return detail::evaluate_baseline(BaselineKind::V1, problem, solution, config, backend, tag);
}

/// Process-aware holistic 0..10 score.
inline EvaluationResult evaluate_v2(const Problem& problem, std::string_view solution,
                                    const EvalConfig& config, CompletionBackend& backend,
                                    const std::string& tag = {}) {
    return detail::evaluate_baseline(BaselineKind::V2, problem, solution, config, backend, tag);
}

/// Multi-dimensional holistic 0..10 score.
inline EvaluationResult evaluate_v3(const Problem& problem, std::string_view solution,
                                    const EvalConfig& config, CompletionBackend& backend,
                                    const std::string& tag = {}) {
    return detail::evaluate_baseline(BaselineKind::V3, problem, solution, config, backend, tag);
}

// ---------------------------------------------------------------------------
// Rule-based exact match
// ---------------------------------------------------------------------------

struct RuleEmOutcome {
    int binary = 0;
    std::optional<std::string> extracted;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline constexpr std::string_view kOpenBracket = "【";
inline constexpr std::string_view kCloseBracket = "】";

inline std::optional<std::string> bracket_after(std::string_view s, std::size_t from) {
    const auto open = s.find(kOpenBracket, from);
    if (open == std::string_view::npos) return std::nullopt;
    const auto start = open + kOpenBracket.size();
    const auto close = s.find(kCloseBracket, start);
    if (close == std::string_view::npos) return std::nullopt;
    return std::string(s.substr(start, close - start));
}

inline std::optional<std::string> last_bracket(std::string_view s) {
    std::optional<std::string> last;
    std::size_t pos = 0;
    while (true) {
        const auto open = s.find(kOpenBracket, pos);
        if (open == std::string_view::npos) break;
        auto content = bracket_after(s, open);
        if (!content) break;
        last = std::move(content);
        pos = open + kOpenBracket.size();
    }
    return last;
}

/// Canonical spelling of a plain decimal number, or nullopt when `s` is not one.
inline std::optional<std::string> canonical_decimal(const std::string& s) {
    static const std::regex kDecimal(R"(^([+-]?)(\d+)(?:\.(\d+))?$)");
    std::smatch m;
    if (!std::regex_match(s, m, kDecimal)) return std::nullopt;
    std::string whole = m[2].str();
    std::string frac = m[3].matched ? m[3].str() : "";
    whole.erase(0, std::min(whole.find_first_not_of('0'), whole.size() - 1));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = whole;
    if (!frac.empty()) out += "." + frac;
    if (out != "0" && m[1].str() == "-") out = "-" + out;
    return out;
}

inline std::string strip_brackets(std::string s) {
    const std::string open(kOpenBracket);
    const std::string close(kCloseBracket);
    if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
        return s.substr(open.size(), s.size() - open.size() - close.size());
    }
    return s;
}

}  // namespace detail

/// Locates the bracketed final answer: first 【…】 after the last final-answer
/// marker, falling back to the last 【…】 anywhere.
inline std::optional<std::string> extract_final_answer(std::string_view solution) {
    std::size_t marker = std::string_view::npos;
    for (std::string_view m : {std::string_view("最终答案"), std::string_view("Final answer")}) {
        const auto pos = solution.rfind(m);
        if (pos != std::string_view::npos && (marker == std::string_view::npos || pos > marker)) {
            marker = pos;
        }
    }
    if (marker != std::string_view::npos) {
        if (auto found = detail::bracket_after(solution, marker)) return found;
    }
    return detail::last_bracket(solution);
}

inline bool answers_match(std::string_view extracted, std::string_view reference) {
    const auto a = text::normalize_answer(extracted);
    const auto b = text::normalize_answer(detail::strip_brackets(text::normalize_answer(reference)));
    const auto na = detail::canonical_decimal(a);
    const auto nb = detail::canonical_decimal(b);
    if (na && nb) return *na == *nb;
    return a == b;
}

inline RuleEmOutcome evaluate_rule_em(const Problem& problem, std::string_view solution) {
    if (problem.problem_type != ProblemType::Calculation) {
        throw UnsupportedError("rule-based exact match only applies to calculation problems");
    }
    if (!problem.reference_answer) {
        throw UnsupportedError("rule-based exact match needs a reference answer (problem '" +
                               problem.id + "')");
    }
    RuleEmOutcome out;
    out.extracted = extract_final_answer(solution);
    if (!out.extracted) {
        out.diagnostics.push_back("no bracketed final answer found");
        return out;
    }
    out.binary = answers_match(*out.extracted, *problem.reference_answer) ? 1 : 0;
    return out;
}

/// Dispatches on config.mode. RuleEM does not touch the backend.
inline EvaluationResult evaluate_any(const Problem& problem, std::string_view solution,
                                     const EvalConfig& config, CompletionBackend& backend,
                                     const std::string& tag = {}) {
    switch (config.mode) {
        case EvalMode::Agent: return evaluate(problem, solution, config, backend, tag);
        case EvalMode::V1: return evaluate_v1(problem, solution, config, backend, tag);
        case EvalMode::V2: return evaluate_v2(problem, solution, config, backend, tag);
        case EvalMode::V3: return evaluate_v3(problem, solution, config, backend, tag);
        case EvalMode::RuleEM: {
            RuleEmOutcome em;
            try {
                em = evaluate_rule_em(problem, solution);
            } catch (const UnsupportedError& e) {
                throw EvaluationError("unsupported", e.what(), {});
            }
            EvaluationResult r;
            r.mode = EvalMode::RuleEM;
            r.binary = em.binary;
            r.final_score = em.binary * 10;
            r.diagnostics = std::move(em.diagnostics);
            return r;
        }
    }
    throw UnsupportedError("unknown mode");
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json chains_to_json(const std::vector<ErrorChain>& chains) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : chains) out.push_back(c.indices);
    return out;
}

inline std::vector<ErrorChain> chains_from_json(const nlohmann::json& j) {
    std::vector<ErrorChain> out;
    if (!j.is_array()) throw ParseError("'chains' must be an array of index arrays");
    for (const auto& c : j) out.push_back({c.get<std::vector<int>>()});
    return out;
}

/// Result document. Transcripts are summarized by count; callers persist them separately.
inline nlohmann::json to_json(const EvaluationResult& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.steps) steps.push_back({{"index", s.index}, {"text", s.text}, {"score", s.score}});
    nlohmann::json j{{"mode", to_string(r.mode)},
                     {"final_score", r.final_score},
                     {"binary", r.binary ? nlohmann::json(*r.binary) : nlohmann::json()},
                     {"steps", std::move(steps)},
                     {"reported_final",
                      r.reported_final ? nlohmann::json(*r.reported_final) : nlohmann::json()},
                     {"score_mismatch", r.score_mismatch},
                     {"bypass", r.bypass},
                     {"reasks", r.reasks},
                     {"chains", chains_to_json(r.chains)},
                     {"forest", to_json(r.forest)},
                     {"diagnostics", r.diagnostics}};
    return j;
}

}  // namespace stepmath
