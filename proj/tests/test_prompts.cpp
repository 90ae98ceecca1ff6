#include <set>
#include <string>

#include <gtest/gtest.h>

#include "stepmath/prompts.hpp"

using namespace stepmath;

namespace {

constexpr AgentModule kModules[] = {AgentModule::Difficulty, AgentModule::Simplicity,
                                    AgentModule::Completeness, AgentModule::Format};
constexpr PromptLanguage kLanguages[] = {PromptLanguage::Chinese, PromptLanguage::English};

bool has(const std::string& haystack, std::string_view needle) {
    return haystack.find(needle) != std::string::npos;
}

Problem calc_problem() {
    Problem p;
    p.id = "p1";
    p.statement = "计算 2+3。";
    p.problem_type = ProblemType::Calculation;
    p.category_secondary = "Arithmetic";
    p.constraint = "答案为整数";
    p.reference_answer = "5";
    return p;
}

}  // namespace

TEST(Prompts, SevenVariantsArePairwiseDistinct) {
    for (auto lang : kLanguages) {
        std::set<std::string> texts;
        for (auto v : kAgentVariants) texts.insert(agent_instructions(v, lang));
        EXPECT_EQ(texts.size(), 7u) << to_string(lang);
    }
}

TEST(Prompts, SignatureClausesMatchEnabledModules) {
    for (auto lang : kLanguages) {
        for (auto v : kAgentVariants) {
            const auto text = agent_instructions(v, lang);
            const auto enabled = modules_of(v);
            for (auto m : kModules) {
                EXPECT_EQ(has(text, signature_clause(m, lang)), enabled.contains(m))
                    << to_string(lang) << " variant modules={" << modules_to_string(enabled) << "} clause "
                    << to_string(m);
            }
        }
    }
}

TEST(Prompts, VariantSelection) {
    EXPECT_EQ(variant_for({}), AgentVariant::Base);
    EXPECT_EQ(variant_for(parse_modules("all")), AgentVariant::All);
    EXPECT_EQ(variant_for(parse_modules("format,completeness,simplicity")), AgentVariant::SimCompFormat);
    for (auto v : kAgentVariants) EXPECT_EQ(variant_for(modules_of(v)), v);
    EXPECT_THROW(variant_for(parse_modules("simplicity,difficulty")), UnsupportedError);
    EXPECT_THROW(variant_for(parse_modules("simplicity,format")), UnsupportedError);
    EXPECT_THROW(parse_modules("speed"), ParseError);
    EXPECT_TRUE(parse_modules("none").empty());
    EXPECT_TRUE(parse_modules("").empty());
}

TEST(Prompts, AgentInstructionsCarryTheVerdictSchema) {
    for (auto lang : kLanguages) {
        for (auto v : kAgentVariants) {
            const auto text = agent_instructions(v, lang);
            EXPECT_TRUE(has(text, "最终得分")) << to_string(lang);
            EXPECT_TRUE(has(text, "错误链")) << to_string(lang);
            EXPECT_TRUE(has(text, "(3)-(4)-(6), (5)-(6)")) << to_string(lang);
        }
    }
    EXPECT_TRUE(has(agent_instructions(AgentVariant::Base, PromptLanguage::Chinese),
                    "S=6*(前n-1步中正确的推理步骤)/(n-1)+4*第n个推理步骤得分"));
}

TEST(Prompts, EnglishNotesAreNumberedInOrder) {
    const auto all = agent_instructions(AgentVariant::All, PromptLanguage::English);
    const auto p4 = all.find(" 4. ");
    const auto p5 = all.find(" 5. ");
    const auto p6 = all.find(" 6. ");
    ASSERT_NE(p4, std::string::npos);
    ASSERT_NE(p5, std::string::npos);
    ASSERT_NE(p6, std::string::npos);
    EXPECT_LT(p4, p5);
    EXPECT_LT(p5, p6);
    EXPECT_EQ(agent_instructions(AgentVariant::Base, PromptLanguage::English).find(" 5. "), std::string::npos);
}

TEST(Prompts, AgentPromptSections) {
    const auto p = calc_problem();
    const auto prompt = build_agent_prompt(p, "回复文本", {}, PromptLanguage::Chinese, 6);
    EXPECT_TRUE(has(prompt, "另外，请将回复内容划分为大约6个推理步骤。"));
    EXPECT_TRUE(has(prompt, "题目类型：计算题"));
    EXPECT_TRUE(has(prompt, "数学问题：\n计算 2+3。"));
    EXPECT_TRUE(has(prompt, "答案限定条件：\n答案为整数"));
    EXPECT_TRUE(has(prompt, "参考答案：\n5"));
    EXPECT_TRUE(has(prompt, "回复内容：\n回复文本"));
    EXPECT_FALSE(has(build_agent_prompt(p, "x", {}, PromptLanguage::Chinese), "推理步骤。\n"));

    auto proof = p;
    proof.problem_type = ProblemType::Proof;
    proof.reference_answer.reset();
    proof.constraint.reset();
    const auto pp = build_agent_prompt(proof, "x", {}, PromptLanguage::Chinese);
    EXPECT_TRUE(has(pp, "参考答案：\n无"));
    EXPECT_FALSE(has(pp, "答案限定条件"));
    EXPECT_THROW(build_agent_prompt(p, "x", parse_modules("difficulty,format"), PromptLanguage::Chinese),
                 UnsupportedError);
}

TEST(Prompts, BaselinesDiffer) {
    const auto p = calc_problem();
    for (auto lang : kLanguages) {
        const auto v1 = build_baseline_prompt(BaselineKind::V1, p, "x", lang);
        const auto v2 = build_baseline_prompt(BaselineKind::V2, p, "x", lang);
        const auto v3 = build_baseline_prompt(BaselineKind::V3, p, "x", lang);
        EXPECT_NE(v1, v2);
        EXPECT_NE(v2, v3);
        EXPECT_TRUE(has(v1, "{\"score\": 0/1}"));
        EXPECT_TRUE(has(v2, "{\"score\": 5}"));
        EXPECT_TRUE(has(v3, "{\"score\": 5}"));
    }
}

TEST(Prompts, GenerationPromptByType) {
    auto p = calc_problem();
    const auto calc = build_generation_prompt(p, PromptLanguage::Chinese);
    EXPECT_TRUE(has(calc, "【"));
    EXPECT_TRUE(has(calc, "最终答案"));
    EXPECT_TRUE(has(calc, "答案限定条件：答案为整数"));

    p.problem_type = ProblemType::Proof;
    p.constraint.reset();
    const auto proof = build_generation_prompt(p, PromptLanguage::Chinese);
    EXPECT_TRUE(proof.starts_with("你是一名数学领域的专家，请回答如下数学问题。"));
    EXPECT_FALSE(has(proof, "【"));
    EXPECT_LT(proof.size(), calc.size());
}

TEST(Prompts, LanguageNames) {
    EXPECT_EQ(parse_prompt_language("zh"), PromptLanguage::Chinese);
    EXPECT_EQ(parse_prompt_language("english"), PromptLanguage::English);
    EXPECT_THROW(parse_prompt_language("fr"), ParseError);
}
