#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "stepmath/verdict.hpp"

using namespace stepmath;
using nlohmann::json;

TEST(AgentVerdict, ParsesStepsInIndexOrder) {
    const auto v = parse_agent_verdict(json::parse(R"j({
        "（10）十": 1, "（2）二": 0, "（1）一": 1, "(3) 三": "1", "（4）四": true,
        "（5）五": 0, "（6）六": 0, "（7）七": 1, "（8）八": 1.0, "（9）九": false,
        "最终得分": 6, "错误链": "(2)-(5)-(6), (9)"})j"));
    ASSERT_EQ(v.steps.size(), 10u);
    for (std::size_t i = 0; i < v.steps.size(); ++i) EXPECT_EQ(v.steps[i].index, static_cast<int>(i) + 1);
    EXPECT_EQ(v.steps[0].text, "一");
    EXPECT_EQ(v.steps[2].text, "三");
    EXPECT_EQ(v.steps[2].score, 1);
    EXPECT_EQ(v.steps[3].score, 1);
    EXPECT_EQ(v.steps[8].score, 0);
    EXPECT_EQ(v.reported_final, 6);
    EXPECT_EQ(v.chain_text, "(2)-(5)-(6), (9)");
    EXPECT_FALSE(v.bypass);
}

TEST(AgentVerdict, ChainListIsJoined) {
    const auto v = parse_agent_verdict(json::parse(R"j({"（1）a": 0, "错误链": ["(1)", "(1)"]})j"));
    EXPECT_EQ(v.chain_text, "(1), (1)");
    EXPECT_FALSE(v.reported_final.has_value());
}

TEST(AgentVerdict, BypassForm) {
    const auto v = parse_agent_verdict(json::parse(R"({"最终得分": 10, "错误链": ""})"));
    EXPECT_TRUE(v.bypass);
    EXPECT_TRUE(v.steps.empty());
    EXPECT_EQ(v.reported_final, 10);
    EXPECT_TRUE(parse_agent_verdict(json::parse(R"({"最终得分": "0"})")).bypass);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"最终得分": 7, "错误链": ""})")), ShapeError);
}

TEST(AgentVerdict, ShapeErrors) {
    EXPECT_THROW(parse_agent_verdict(json::parse("[1]")), ShapeError);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"错误链": ""})")), ShapeError);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"（1）a": 2})")), ShapeError);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"（1）a": "yes"})")), ShapeError);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"（1）a": 1, "(1) a": 0})")), ShapeError);
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"（1）a": 1, "错误链": 5})")), ShapeError);
    try {
        parse_agent_verdict(json::parse(R"({"（1）a": 1, "（4）d": 0})"));
        FAIL();
    } catch (const ShapeError& e) {
        EXPECT_NE(std::string(e.what()).find("missing 2, 3"), std::string::npos) << e.what();
    }
}

TEST(AgentVerdict, UnrelatedKeysIgnored) {
    const auto v = parse_agent_verdict(json::parse(R"({"分析": "略", "（1）a": 1, "最终得分": 10})"));
    EXPECT_EQ(v.steps.size(), 1u);
}

TEST(ScoreVerdict, Bounds) {
    EXPECT_EQ(parse_score_verdict(json::parse(R"({"score": 1})"), 0, 1), 1);
    EXPECT_EQ(parse_score_verdict(json::parse(R"({"score": "7"})"), 0, 10), 7);
    EXPECT_EQ(parse_score_verdict(json::parse(R"({"score": 7.0})"), 0, 10), 7);
    EXPECT_THROW(parse_score_verdict(json::parse(R"({"score": 7.5})"), 0, 10), ShapeError);
    EXPECT_THROW(parse_score_verdict(json::parse(R"({"score": 2})"), 0, 1), ShapeError);
    EXPECT_THROW(parse_score_verdict(json::parse(R"({"score": 11})"), 0, 10), ShapeError);
    EXPECT_THROW(parse_score_verdict(json::parse(R"({"grade": 1})"), 0, 1), ShapeError);
}

TEST(AgentVerdict, ParenthesisWidthDoesNotMatter) {
    const auto full = parse_agent_verdict(json::parse(R"j({"（1）a": 1, "（2）b": 0, "最终得分": 6, "错误链": "(2)"})j"));
    const auto half = parse_agent_verdict(json::parse(R"j({"(1)a": 1, "(2)b": 0, "最终得分": 6, "错误链": "(2)"})j"));
    EXPECT_EQ(full, half);
    EXPECT_EQ(full.steps.size(), 2u);
    EXPECT_EQ(full.reported_final, 6);
}

TEST(AgentVerdict, BaselineSchemaIsAShapeError) {
    EXPECT_THROW(parse_agent_verdict(json::parse(R"({"score": 1})")), ShapeError);
}
