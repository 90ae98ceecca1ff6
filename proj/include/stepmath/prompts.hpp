#pragma once

// Prompt selection and assembly.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"
#include "stepmath/prompt_text.hpp"

namespace stepmath {

enum class AgentModule { Difficulty, Simplicity, Completeness, Format };
using ModuleSet = std::set<AgentModule>;

enum class PromptLanguage { Chinese, English };

enum class BaselineKind { V1, V2, V3 };

/// The seven supported agent prompt variants.
enum class AgentVariant { Base, Difficulty, Simplicity, Completeness, Format, SimCompFormat, All };

inline constexpr std::array kAgentVariants{AgentVariant::Base,         AgentVariant::Difficulty,
                                           AgentVariant::Simplicity,   AgentVariant::Completeness,
                                           AgentVariant::Format,       AgentVariant::SimCompFormat,
                                           AgentVariant::All};

inline std::string_view to_string(AgentModule m) {
    switch (m) {
        case AgentModule::Difficulty: return "difficulty";
        case AgentModule::Simplicity: return "simplicity";
        case AgentModule::Completeness: return "completeness";
        case AgentModule::Format: return "format";
    }
    return "?";
}

inline std::string_view to_string(PromptLanguage l) {
    return l == PromptLanguage::Chinese ? "zh" : "en";
}

inline PromptLanguage parse_prompt_language(std::string_view s) {
    if (s == "zh" || s == "chinese") return PromptLanguage::Chinese;
    if (s == "en" || s == "english") return PromptLanguage::English;
    throw ParseError("unknown prompt language '" + std::string(s) + "'");
}

/// Parses "difficulty,simplicity" style lists; "all" selects every module and
/// "none" or an empty string selects none.
inline ModuleSet parse_modules(std::string_view list) {
    ModuleSet out;
    std::string_view rest = list;
    while (true) {
        const auto comma = rest.find(',');
        const auto name = text::trim(rest.substr(0, comma));
        if (name == "all") {
            out.insert({AgentModule::Difficulty, AgentModule::Simplicity,
                        AgentModule::Completeness, AgentModule::Format});
        } else if (name == "difficulty") {
            out.insert(AgentModule::Difficulty);
        } else if (name == "simplicity") {
            out.insert(AgentModule::Simplicity);
        } else if (name == "completeness") {
            out.insert(AgentModule::Completeness);
        } else if (name == "format") {
            out.insert(AgentModule::Format);
        } else if (!name.empty() && name != "none") {
            throw ParseError("unknown module '" + std::string(name) + "'");
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

inline std::string modules_to_string(const ModuleSet& modules) {
    std::string out;
    for (auto m : modules) {
        if (!out.empty()) out += ',';
        out += to_string(m);
    }
    return out;
}

/// Maps a module set onto its prompt variant. Only sets with a dedicated
/// prompt are accepted.
inline AgentVariant variant_for(const ModuleSet& modules) {
    using M = AgentModule;
    if (modules.empty()) return AgentVariant::Base;
    if (modules == ModuleSet{M::Difficulty}) return AgentVariant::Difficulty;
    if (modules == ModuleSet{M::Simplicity}) return AgentVariant::Simplicity;
    if (modules == ModuleSet{M::Completeness}) return AgentVariant::Completeness;
    if (modules == ModuleSet{M::Format}) return AgentVariant::Format;
    if (modules == ModuleSet{M::Simplicity, M::Completeness, M::Format}) {
        return AgentVariant::SimCompFormat;
    }
    if (modules == ModuleSet{M::Difficulty, M::Simplicity, M::Completeness, M::Format}) {
        return AgentVariant::All;
    }
    throw UnsupportedError("unsupported module combination '" + modules_to_string(modules) +
                           "'; supported: none, difficulty, simplicity, completeness, format, "
                           "simplicity+completeness+format, all");
}

inline ModuleSet modules_of(AgentVariant v) {
    using M = AgentModule;
    switch (v) {
        case AgentVariant::Base: return {};
        case AgentVariant::Difficulty: return {M::Difficulty};
        case AgentVariant::Simplicity: return {M::Simplicity};
        case AgentVariant::Completeness: return {M::Completeness};
        case AgentVariant::Format: return {M::Format};
        case AgentVariant::SimCompFormat: return {M::Simplicity, M::Completeness, M::Format};
        case AgentVariant::All: return {M::Difficulty, M::Simplicity, M::Completeness, M::Format};
    }
    return {};
}

/// A phrase that appears only in prompts that enable the given module.
inline std::string_view signature_clause(AgentModule m, PromptLanguage lang) {
    const bool zh = lang == PromptLanguage::Chinese;
    switch (m) {
        case AgentModule::Difficulty: return zh ? "无需进行过程评估" : "skip process evaluation";
        case AgentModule::Simplicity: return zh ? "没有实际意义的废话或过于累赘" : "meaningless filler or overly verbose";
        case AgentModule::Completeness: return zh ? "前提和结论都存在" : "premises and its conclusion are present";
        case AgentModule::Format: return zh ? "逻辑和格式都正确" : "both the logic and the format are correct";
    }
    return {};
}

namespace detail {

inline std::string english_agent_instructions(AgentVariant v) {
    namespace t = prompt_text;
    std::vector<std::string_view> notes;
    switch (v) {
        case AgentVariant::Simplicity: notes.push_back(t::kAgentSimplicityNoteEn); break;
        case AgentVariant::Completeness: notes.push_back(t::kAgentCompletenessNoteEn); break;
        case AgentVariant::Format: notes.push_back(t::kAgentFormatNoteEn); break;
        case AgentVariant::SimCompFormat:
        case AgentVariant::All: notes.push_back(t::kAgentAllNoteEn); break;
        default: break;
    }
    notes.push_back(t::kAgentJsonNoteEn);
    const bool bypass = v == AgentVariant::Difficulty || v == AgentVariant::All;
    if (bypass) notes.push_back(t::kAgentDifficultyNoteEn);

    std::string out(t::kAgentPreambleEn);
    for (std::size_t i = 0; i < notes.size(); ++i) {
        out += ' ';
        out += std::to_string(4 + i) + ". ";
        out += notes[i];
        if (notes[i] == t::kAgentJsonNoteEn) out += i + 1 < notes.size() ? ";" : ".";
    }
    out += ' ';
    out += t::kAgentClosingEn;
    return out;
}

}  // namespace detail

/// Instruction text of an agent variant, without the task sections.
inline std::string agent_instructions(AgentVariant v, PromptLanguage lang) {
    namespace t = prompt_text;
    if (lang == PromptLanguage::English) return detail::english_agent_instructions(v);
    switch (v) {
        case AgentVariant::Base: return std::string(t::kAgentBaseZh);
        case AgentVariant::Difficulty: return std::string(t::kAgentDifficultyZh);
        case AgentVariant::Simplicity: return std::string(t::kAgentSimplicityZh);
        case AgentVariant::Completeness: return std::string(t::kAgentCompletenessZh);
        case AgentVariant::Format: return std::string(t::kAgentFormatZh);
        case AgentVariant::SimCompFormat: return std::string(t::kAgentSimCompFormatZh);
        case AgentVariant::All: return std::string(t::kAgentAllZh);
    }
    return {};
}

inline std::string baseline_instructions(BaselineKind kind, PromptLanguage lang) {
    namespace t = prompt_text;
    const bool zh = lang == PromptLanguage::Chinese;
    switch (kind) {
        case BaselineKind::V1: return std::string(zh ? t::kBaselineV1Zh : t::kBaselineV1En);
        case BaselineKind::V2: return std::string(zh ? t::kBaselineV2Zh : t::kBaselineV2En);
        case BaselineKind::V3: return std::string(zh ? t::kBaselineV3Zh : t::kBaselineV3En);
    }
    return {};
}

inline std::string generation_instructions(ProblemType type, PromptLanguage lang) {
    namespace t = prompt_text;
    const bool zh = lang == PromptLanguage::Chinese;
    if (type == ProblemType::Calculation) {
        return std::string(zh ? t::kSolutionCalculationZh : t::kSolutionCalculationEn);
    }
    return std::string(zh ? t::kSolutionExpertZh : t::kSolutionExpertEn);
}

/// Sentence asking the grader for roughly `steps` reasoning steps.
inline std::string step_hint_instruction(int steps, PromptLanguage lang) {
    if (lang == PromptLanguage::Chinese) {
        return "另外，请将回复内容划分为大约" + std::to_string(steps) + "个推理步骤。";
    }
    return "Additionally, segment the response into approximately " + std::to_string(steps) +
           " reasoning steps.";
}

namespace detail {

inline std::string_view type_label(ProblemType t, PromptLanguage lang) {
    const bool zh = lang == PromptLanguage::Chinese;
    switch (t) {
        case ProblemType::Calculation: return zh ? "计算题" : "calculation";
        case ProblemType::Proof: return zh ? "证明题" : "proof";
        case ProblemType::OpenEnded: return zh ? "开放题" : "open-ended";
    }
    return {};
}

/// Problem, constraint, reference answer and response sections for grading prompts.
inline std::string grading_sections(const Problem& problem, std::string_view solution,
                                    PromptLanguage lang) {
    const bool zh = lang == PromptLanguage::Chinese;
    std::string out;
    out += zh ? "\n\n题目类型：" : "\n\nProblem type: ";
    out += type_label(problem.problem_type, lang);
    out += zh ? "\n\n数学问题：\n" : "\n\nMath problem:\n";
    out += problem.statement;
    if (problem.constraint) {
        out += zh ? "\n\n答案限定条件：\n" : "\n\nAnswer constraint:\n";
        out += *problem.constraint;
    }
    out += zh ? "\n\n参考答案：\n" : "\n\nReference answer:\n";
    out += problem.reference_answer ? *problem.reference_answer : std::string(zh ? "无" : "none");
    out += zh ? "\n\n回复内容：\n" : "\n\nResponse:\n";
    out += solution;
    return out;
}

}  // namespace detail

inline std::string build_agent_prompt(const Problem& problem, std::string_view solution,
                                      const ModuleSet& modules, PromptLanguage lang,
                                      std::optional<int> step_hint = std::nullopt) {
    std::string out = agent_instructions(variant_for(modules), lang);
    if (step_hint) {
        out += lang == PromptLanguage::Chinese ? "" : " ";
        out += step_hint_instruction(*step_hint, lang);
    }
    out += detail::grading_sections(problem, solution, lang);
    return out;
}

inline std::string build_baseline_prompt(BaselineKind kind, const Problem& problem,
                                         std::string_view solution, PromptLanguage lang) {
    return baseline_instructions(kind, lang) + detail::grading_sections(problem, solution, lang);
}

/// Solution-generation prompt: the formatted-answer prompt for calculation
/// problems and the plain expert prompt otherwise.
inline std::string build_generation_prompt(const Problem& problem, PromptLanguage lang) {
    std::string out = generation_instructions(problem.problem_type, lang);
    out += "\n\n";
    out += problem.statement;
    if (problem.constraint) {
        out += lang == PromptLanguage::Chinese ? "\n答案限定条件：" : "\nAnswer constraint: ";
        out += *problem.constraint;
    }
    return out;
}

}  // namespace stepmath
