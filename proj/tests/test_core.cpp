#include <gtest/gtest.h>

#include "stepmath/core.hpp"

using namespace stepmath;

TEST(StepScore, MapsEveryLabel) {
    EXPECT_EQ(step_score(StepLabel::Correct), 1);
    EXPECT_EQ(step_score(StepLabel::Incorrect), 0);
    EXPECT_EQ(step_score(StepLabel::CorrectButMeaningless), 0);
}

TEST(Enums, RoundTripThroughStrings) {
    for (auto t : kProblemTypes) EXPECT_EQ(parse_problem_type(to_string(t)), t);
    for (auto c : kPrimaryCategories) EXPECT_EQ(parse_primary_category(to_string(c)), c);
    for (auto d : kDifficulties) EXPECT_EQ(parse_difficulty(to_string(d)), d);
    for (auto l : {StepLabel::Correct, StepLabel::Incorrect, StepLabel::CorrectButMeaningless}) {
        EXPECT_EQ(parse_step_label(to_string(l)), l);
    }
    EXPECT_THROW(parse_problem_type("essay"), ParseError);
}

TEST(Difficulty, FromLevel) {
    EXPECT_EQ(difficulty_from_level(1), Difficulty::Easy);
    EXPECT_EQ(difficulty_from_level(3), Difficulty::Hard);
    EXPECT_THROW(difficulty_from_level(4), ParseError);
    EXPECT_THROW(difficulty_from_level(0), ParseError);
}

// Rows: scope, knowledge points, levels for 1-2 / 3-5 / >5 solution steps.
struct DifficultyGridRow {
    KnowledgeScope scope;
    int points;
    int levels[3];
};

constexpr DifficultyGridRow kDifficultyGrid[] = {
    {KnowledgeScope::AtMostMiddleSchool, 1, {1, 1, 2}},
    {KnowledgeScope::AtMostMiddleSchool, 2, {1, 1, 2}},
    {KnowledgeScope::AtMostMiddleSchool, 3, {1, 2, 3}},
    {KnowledgeScope::HighSchool, 1, {1, 2, 3}},
    {KnowledgeScope::HighSchool, 2, {1, 2, 3}},
    {KnowledgeScope::HighSchool, 3, {2, 3, 3}},
    {KnowledgeScope::AtLeastUndergraduate, 1, {1, 2, 3}},
    {KnowledgeScope::AtLeastUndergraduate, 2, {2, 3, 3}},
    {KnowledgeScope::AtLeastUndergraduate, 3, {2, 3, 3}},
};

TEST(ClassifyDifficulty, AllTwentySevenCells) {
    const int representative_steps[3] = {1, 4, 9};
    for (const auto& row : kDifficultyGrid) {
        for (int b = 0; b < 3; ++b) {
            const DifficultyInput in{row.scope, row.points, representative_steps[b]};
            EXPECT_EQ(static_cast<int>(classify_difficulty(in)), row.levels[b])
                << to_string(row.scope) << " points=" << row.points << " bucket=" << b;
        }
    }
}

TEST(ClassifyDifficulty, BucketEdges) {
    auto level = [](int steps) {
        return classify_difficulty({KnowledgeScope::HighSchool, 1, steps});
    };
    EXPECT_EQ(level(2), Difficulty::Easy);
    EXPECT_EQ(level(3), Difficulty::Medium);
    EXPECT_EQ(level(5), Difficulty::Medium);
    EXPECT_EQ(level(6), Difficulty::Hard);
    EXPECT_EQ(level(1000), Difficulty::Hard);
}

TEST(ClassifyDifficulty, MonotoneInSteps) {
    for (const auto& row : kDifficultyGrid) {
        int prev = 0;
        for (int steps = 1; steps <= 12; ++steps) {
            const int lv = static_cast<int>(classify_difficulty({row.scope, row.points, steps}));
            EXPECT_GE(lv, prev);
            prev = lv;
        }
    }
}

TEST(ClassifyDifficulty, RejectsOutOfRangeInput) {
    EXPECT_THROW(classify_difficulty({KnowledgeScope::HighSchool, 0, 3}), ParseError);
    EXPECT_THROW(classify_difficulty({KnowledgeScope::HighSchool, 4, 3}), ParseError);
    EXPECT_THROW(classify_difficulty({KnowledgeScope::HighSchool, 2, 0}), ParseError);
}

TEST(ScoredSolutionValidation, RequiresContiguousIndicesAndText) {
    ScoredSolution s;
    EXPECT_THROW(validate(s), ParseError);
    s.steps = {{1, "a", StepLabel::Correct}, {2, "b", StepLabel::Incorrect}};
    EXPECT_NO_THROW(validate(s));
    s.steps[1].index = 3;
    EXPECT_THROW(validate(s), ParseError);
    s.steps[1].index = 2;
    s.steps[1].text = " \t";
    EXPECT_THROW(validate(s), ParseError);
}

TEST(GoldRecordValidation, Bounds) {
    EXPECT_NO_THROW(validate(GoldRecord{10, 1}));
    EXPECT_THROW(validate(GoldRecord{11, 1}), ParseError);
    EXPECT_THROW(validate(GoldRecord{5, 2}), ParseError);
}

TEST(CategoryRegistry, BuiltinAndExtension) {
    const auto& reg = CategoryRegistry::builtin();
    EXPECT_TRUE(reg.contains(PrimaryCategory::Elementary, "Geometry"));
    EXPECT_TRUE(reg.contains(PrimaryCategory::Applied, "Misguidance"));
    EXPECT_FALSE(reg.contains(PrimaryCategory::Modern, "Geometry"));
    std::size_t total = 0;
    for (auto c : kPrimaryCategories) total += reg.secondaries(c).size();
    EXPECT_EQ(total, 15u);

    CategoryRegistry custom;
    custom.add(PrimaryCategory::Modern, "Topology");
    custom.add(PrimaryCategory::Modern, "Topology");
    EXPECT_TRUE(custom.contains(PrimaryCategory::Modern, "Topology"));
    EXPECT_EQ(custom.secondaries(PrimaryCategory::Modern).size(), 4u);
}
