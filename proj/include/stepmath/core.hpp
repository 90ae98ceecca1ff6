#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepmath/errors.hpp"
#include "stepmath/text.hpp"

namespace stepmath {

enum class ProblemType { Calculation, Proof, OpenEnded };

// Declared in the reading order of the subject taxonomy table (row-major).
enum class PrimaryCategory { Elementary, Modern, Contemporary, Applied };

enum class Difficulty { Easy = 1, Medium = 2, Hard = 3 };

enum class KnowledgeScope { AtMostMiddleSchool, HighSchool, AtLeastUndergraduate };

enum class StepLabel { Correct, Incorrect, CorrectButMeaningless };

enum class ScoreOrigin { HumanAnnotation, AgentVerdict };

inline constexpr std::array kProblemTypes{ProblemType::Calculation, ProblemType::Proof,
                                          ProblemType::OpenEnded};
inline constexpr std::array kPrimaryCategories{PrimaryCategory::Elementary, PrimaryCategory::Modern,
                                               PrimaryCategory::Contemporary,
                                               PrimaryCategory::Applied};
inline constexpr std::array kDifficulties{Difficulty::Easy, Difficulty::Medium, Difficulty::Hard};

// ---------------------------------------------------------------------------
// Enum names. These spellings are the on-disk representation.
// ---------------------------------------------------------------------------

inline std::string_view to_string(ProblemType t) {
    switch (t) {
        case ProblemType::Calculation: return "calculation";
        case ProblemType::Proof: return "proof";
        case ProblemType::OpenEnded: return "open_ended";
    }
    return "?";
}

inline std::string_view to_string(PrimaryCategory c) {
    switch (c) {
        case PrimaryCategory::Elementary: return "elementary";
        case PrimaryCategory::Modern: return "modern";
        case PrimaryCategory::Contemporary: return "contemporary";
        case PrimaryCategory::Applied: return "applied";
    }
    return "?";
}

inline std::string_view to_string(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::Medium: return "medium";
        case Difficulty::Hard: return "hard";
    }
    return "?";
}

inline std::string_view to_string(StepLabel l) {
    switch (l) {
        case StepLabel::Correct: return "correct";
        case StepLabel::Incorrect: return "incorrect";
        case StepLabel::CorrectButMeaningless: return "correct_but_meaningless";
    }
    return "?";
}

inline std::string_view to_string(KnowledgeScope s) {
    switch (s) {
        case KnowledgeScope::AtMostMiddleSchool: return "at_most_middle_school";
        case KnowledgeScope::HighSchool: return "high_school";
        case KnowledgeScope::AtLeastUndergraduate: return "at_least_undergraduate";
    }
    return "?";
}

namespace detail {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<Enum, N>& values, std::string_view what) {
    for (Enum v : values) {
        if (to_string(v) == name) return v;
    }
    throw ParseError("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace detail

inline ProblemType parse_problem_type(std::string_view s) {
    return detail::parse_enum(s, kProblemTypes, "problem_type");
}

inline PrimaryCategory parse_primary_category(std::string_view s) {
    return detail::parse_enum(s, kPrimaryCategories, "category_primary");
}

inline Difficulty parse_difficulty(std::string_view s) {
    return detail::parse_enum(s, kDifficulties, "difficulty");
}

inline StepLabel parse_step_label(std::string_view s) {
    return detail::parse_enum(
        s,
        std::array{StepLabel::Correct, StepLabel::Incorrect, StepLabel::CorrectButMeaningless},
        "step label");
}

inline KnowledgeScope parse_knowledge_scope(std::string_view s) {
    return detail::parse_enum(s,
                              std::array{KnowledgeScope::AtMostMiddleSchool,
                                         KnowledgeScope::HighSchool,
                                         KnowledgeScope::AtLeastUndergraduate},
                              "knowledge_scope");
}

inline Difficulty difficulty_from_level(int level) {
    if (level < 1 || level > 3) {
        throw ParseError("difficulty level must be 1, 2 or 3, got " + std::to_string(level));
    }
    return static_cast<Difficulty>(level);
}

// ---------------------------------------------------------------------------
// Secondary categories
// ---------------------------------------------------------------------------

/// Secondary subject categories, validated per primary category. Starts with
/// the built-in taxonomy and can be extended at runtime.
class CategoryRegistry {
public:
    CategoryRegistry() {
        secondary_[PrimaryCategory::Elementary] = {"Arithmetic", "Algebra", "Geometry"};
        secondary_[PrimaryCategory::Modern] = {"Advanced Mathematics", "Linear Algebra",
                                               "Analytic Geometry"};
        secondary_[PrimaryCategory::Contemporary] = {"Discrete Mathematics",
                                                     "Probability and Statistics",
                                                     "Number Theory", "Functional Analysis"};
        secondary_[PrimaryCategory::Applied] = {"Financial and Economic",
                                                "Real-World Applications",
                                                "Optimization and Planning", "Misguidance",
                                                "Other Applications"};
    }

    static const CategoryRegistry& builtin() {
        static const CategoryRegistry registry;
        return registry;
    }

    void add(PrimaryCategory primary, std::string secondary) {
        auto& list = secondary_[primary];
        if (std::find(list.begin(), list.end(), secondary) == list.end()) {
            list.push_back(std::move(secondary));
        }
    }

    bool contains(PrimaryCategory primary, std::string_view secondary) const {
        auto it = secondary_.find(primary);
        if (it == secondary_.end()) return false;
        return std::find(it->second.begin(), it->second.end(), secondary) != it->second.end();
    }

    const std::vector<std::string>& secondaries(PrimaryCategory primary) const {
        return secondary_.at(primary);
    }

private:
    std::map<PrimaryCategory, std::vector<std::string>> secondary_;
};

// ---------------------------------------------------------------------------
// Domain values
// ---------------------------------------------------------------------------

struct Problem {
    std::string id;
    std::string statement;
    ProblemType problem_type = ProblemType::Calculation;
    PrimaryCategory category_primary = PrimaryCategory::Elementary;
    std::string category_secondary;
    Difficulty difficulty = Difficulty::Easy;
    std::optional<std::string> constraint;
    std::optional<std::string> reference_answer;
};

struct DifficultyInput {
    KnowledgeScope knowledge_scope = KnowledgeScope::AtMostMiddleSchool;
    int knowledge_points = 1;  // 1..3
    int solution_steps = 1;    // >= 1
};

struct Step {
    int index = 0;  // 1-based
    std::string text;
    StepLabel label = StepLabel::Correct;
};

struct ScoredSolution {
    std::string problem_id;
    std::string generator;
    std::vector<Step> steps;
    ScoreOrigin origin = ScoreOrigin::HumanAnnotation;
};

struct GoldRecord {
    int gold_score = 0;    // 0..10
    int binary_score = 0;  // 0 or 1

    friend bool operator==(const GoldRecord&, const GoldRecord&) = default;
};

/// Checks the ScoredSolution invariants: contiguous 1..N indices, N >= 1, non-blank texts.
inline void validate(const ScoredSolution& s) {
    if (s.steps.empty()) throw ParseError("solution has no steps");
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const auto& step = s.steps[i];
        if (step.index != static_cast<int>(i) + 1) {
            throw ParseError("step indices must be 1..N contiguous; position " +
                             std::to_string(i + 1) + " has index " + std::to_string(step.index));
        }
        if (text::trim(step.text).empty()) {
            throw ParseError("step " + std::to_string(step.index) + " has empty text");
        }
    }
}

inline void validate(const DifficultyInput& in) {
    if (in.knowledge_points < 1 || in.knowledge_points > 3) {
        throw ParseError("knowledge_points must be in {1,2,3}");
    }
    if (in.solution_steps < 1) throw ParseError("solution_steps must be >= 1");
}

inline void validate(const GoldRecord& g) {
    if (g.gold_score < 0 || g.gold_score > 10) throw ParseError("gold score outside [0,10]");
    if (g.binary_score != 0 && g.binary_score != 1) throw ParseError("binary score not in {0,1}");
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Correct -> 1; Incorrect and CorrectButMeaningless -> 0.
constexpr int step_score(StepLabel label) noexcept {
    return label == StepLabel::Correct ? 1 : 0;
}

/// Difficulty from knowledge scope, number of knowledge points and coarse
/// solution step count. Step buckets are {1,2}, {3,4,5} and {6,...}.
inline Difficulty classify_difficulty(const DifficultyInput& in) {
    validate(in);
    // [scope][points-1][bucket]
    static constexpr int kLevels[3][3][3] = {
        {{1, 1, 2}, {1, 1, 2}, {1, 2, 3}},
        {{1, 2, 3}, {1, 2, 3}, {2, 3, 3}},
        {{1, 2, 3}, {2, 3, 3}, {2, 3, 3}},
    };
    const int bucket = in.solution_steps <= 2 ? 0 : (in.solution_steps <= 5 ? 1 : 2);
    const int level =
        kLevels[static_cast<int>(in.knowledge_scope)][in.knowledge_points - 1][bucket];
    return static_cast<Difficulty>(level);
}

}  // namespace stepmath
