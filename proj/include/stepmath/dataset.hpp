#pragma once

// Benchmark dataset: one JSON object per line.
//
//   {"schema_version": 1, "id": "p001", "statement": "...",
//    "problem_type": "calculation", "category_primary": "elementary",
//    "category_secondary": "Arithmetic", "difficulty": 2,
//    "constraint": "...", "reference_answer": "...",
//    "generator": "gpt-4o-2024-08-06", "solution_text": "...",
//    "annotation": [{"index": 1, "text": "...", "label": "correct"}, ...],
//    "gold": {"score": 7, "binary": 1}}
//
// constraint, reference_answer, annotation and gold are optional. Unknown
// fields are carried through untouched.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/aggregate.hpp"
#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"

namespace stepmath {

inline constexpr int kSchemaVersion = 1;

struct DatasetRecord {
    Problem problem;
    std::string generator;
    std::string solution_text;
    std::optional<std::vector<Step>> annotation;
    std::optional<GoldRecord> gold;
    nlohmann::json extra = nlohmann::json::object();

    /// Unique per record: problems repeat across generators.
    std::string key() const { return problem.id + "|" + generator; }
};

// ---------------------------------------------------------------------------
// Gold scores
// ---------------------------------------------------------------------------

inline GoldRecord gold_from_labels(ProblemType type, const std::vector<Step>& steps) {
    std::vector<int> scores;
    scores.reserve(steps.size());
    for (const auto& s : steps) scores.push_back(step_score(s.label));
    const int g = aggregate_score(type, scores, AggregationPolicy::standard());
    return {g, binary_score(type, scores, g)};
}

/// Gold grade recomputed from the human step annotation with the standard policy.
inline GoldRecord gold_score(const DatasetRecord& record) {
    if (!record.annotation) {
        throw UnsupportedError("record '" + record.key() + "' has no step annotation");
    }
    return gold_from_labels(record.problem.problem_type, *record.annotation);
}

/// Annotation-derived gold when available, otherwise the stored one.
inline std::optional<GoldRecord> effective_gold(const DatasetRecord& record) {
    if (record.annotation) return gold_score(record);
    return record.gold;
}

// ---------------------------------------------------------------------------
// JSON mapping
// ---------------------------------------------------------------------------

namespace detail {

inline const std::set<std::string>& known_fields() {
    static const std::set<std::string> fields{
        "schema_version", "id",         "statement",  "problem_type",  "category_primary",
        "category_secondary", "difficulty", "constraint", "reference_answer", "generator",
        "solution_text",  "annotation", "gold"};
    return fields;
}

inline ParseError field_error(std::string_view field, const std::string& why) {
    return ParseError("field '" + std::string(field) + "': " + why);
}

inline std::string required_string(const nlohmann::json& j, std::string_view field) {
    const std::string key(field);
    if (!j.contains(key)) throw field_error(field, "missing");
    if (!j.at(key).is_string()) throw field_error(field, "must be a string");
    return j.at(key).get<std::string>();
}

inline std::optional<std::string> optional_string(const nlohmann::json& j, std::string_view field) {
    const std::string key(field);
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) throw field_error(field, "must be a string");
    return j.at(key).get<std::string>();
}

template <typename F>
auto with_field(std::string_view field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw field_error(field, e.what());
    }
}

inline Difficulty difficulty_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return difficulty_from_level(v.get<int>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "1" || s == "2" || s == "3") return difficulty_from_level(s[0] - '0');
        return parse_difficulty(s);
    }
    throw ParseError("must be 1, 2, 3 or easy/medium/hard");
}

}  // namespace detail

/// Parses and validates one record. Gold/annotation disagreement is an error.
inline DatasetRecord record_from_json(const nlohmann::json& j,
                                      const CategoryRegistry& categories = CategoryRegistry::builtin()) {
    using namespace detail;
    if (!j.is_object()) throw ParseError("record must be a JSON object");
    if (j.contains("schema_version")) {
        const auto& v = j.at("schema_version");
        if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
            throw field_error("schema_version", "unsupported version " + v.dump());
        }
    }

    DatasetRecord r;
    r.problem.id = required_string(j, "id");
    if (r.problem.id.empty()) throw field_error("id", "must not be empty");
    r.problem.statement = required_string(j, "statement");
    r.problem.problem_type =
        with_field("problem_type", [&] { return parse_problem_type(required_string(j, "problem_type")); });
    r.problem.category_primary = with_field(
        "category_primary", [&] { return parse_primary_category(required_string(j, "category_primary")); });
    r.problem.category_secondary = required_string(j, "category_secondary");
    if (!categories.contains(r.problem.category_primary, r.problem.category_secondary)) {
        throw field_error("category_secondary", "'" + r.problem.category_secondary +
                                                    "' is not a secondary category of '" +
                                                    std::string(to_string(r.problem.category_primary)) + "'");
    }
    if (!j.contains("difficulty")) throw field_error("difficulty", "missing");
    r.problem.difficulty = with_field("difficulty", [&] { return difficulty_from_json(j.at("difficulty")); });
    r.problem.constraint = optional_string(j, "constraint");
    r.problem.reference_answer = optional_string(j, "reference_answer");
    r.generator = required_string(j, "generator");
    r.solution_text = required_string(j, "solution_text");

    if (j.contains("annotation") && !j.at("annotation").is_null()) {
        const auto& arr = j.at("annotation");
        if (!arr.is_array()) throw field_error("annotation", "must be an array");
        std::vector<Step> steps;
        for (const auto& item : arr) {
            if (!item.is_object() || !item.contains("index") || !item.at("index").is_number_integer()) {
                throw field_error("annotation", "entries need an integer 'index'");
            }
            Step s;
            s.index = item.at("index").get<int>();
            s.text = with_field("annotation", [&] { return required_string(item, "text"); });
            s.label = with_field("annotation",
                                 [&] { return parse_step_label(required_string(item, "label")); });
            steps.push_back(std::move(s));
        }
        ScoredSolution scored{r.problem.id, r.generator, steps, ScoreOrigin::HumanAnnotation};
        with_field("annotation", [&] {
            validate(scored);
            return 0;
        });
        r.annotation = std::move(steps);
    }

    if (j.contains("gold") && !j.at("gold").is_null()) {
        const auto& g = j.at("gold");
        if (!g.is_object() || !g.contains("score") || !g.contains("binary") ||
            !g.at("score").is_number_integer() || !g.at("binary").is_number_integer()) {
            throw field_error("gold", "must be {\"score\": int, \"binary\": int}");
        }
        GoldRecord gold{g.at("score").get<int>(), g.at("binary").get<int>()};
        with_field("gold", [&] {
            validate(gold);
            return 0;
        });
        if (r.annotation) {
            const auto recomputed = gold_score(r);
            if (!(recomputed == gold)) {
                throw field_error("gold", "stored {" + std::to_string(gold.gold_score) + "," +
                                              std::to_string(gold.binary_score) +
                                              "} differs from annotation-derived {" +
                                              std::to_string(recomputed.gold_score) + "," +
                                              std::to_string(recomputed.binary_score) + "}");
            }
        }
        r.gold = gold;
    }

    for (const auto& [k, v] : j.items()) {
        if (!known_fields().contains(k)) r.extra[k] = v;
    }
    return r;
}

inline nlohmann::json to_json(const DatasetRecord& r) {
    nlohmann::json j = r.extra.is_object() ? r.extra : nlohmann::json::object();
    j["schema_version"] = kSchemaVersion;
    j["id"] = r.problem.id;
    j["statement"] = r.problem.statement;
    j["problem_type"] = to_string(r.problem.problem_type);
    j["category_primary"] = to_string(r.problem.category_primary);
    j["category_secondary"] = r.problem.category_secondary;
    j["difficulty"] = static_cast<int>(r.problem.difficulty);
    if (r.problem.constraint) j["constraint"] = *r.problem.constraint;
    if (r.problem.reference_answer) j["reference_answer"] = *r.problem.reference_answer;
    j["generator"] = r.generator;
    j["solution_text"] = r.solution_text;
    if (r.annotation) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : *r.annotation) {
            arr.push_back({{"index", s.index}, {"text", s.text}, {"label", to_string(s.label)}});
        }
        j["annotation"] = std::move(arr);
    }
    if (r.gold) j["gold"] = {{"score", r.gold->gold_score}, {"binary", r.gold->binary_score}};
    return j;
}

/// Problem-only document (the same field names as a record).
inline Problem problem_from_json(const nlohmann::json& j,
                                 const CategoryRegistry& categories = CategoryRegistry::builtin()) {
    nlohmann::json filled = j;
    if (!filled.contains("generator")) filled["generator"] = "";
    if (!filled.contains("solution_text")) filled["solution_text"] = "";
    filled.erase("annotation");
    filled.erase("gold");
    return record_from_json(filled, categories).problem;
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

struct LoadOptions {
    /// Strict: any invalid record aborts the load. Lenient: it is skipped with a diagnostic.
    bool strict = true;
    const CategoryRegistry* categories = &CategoryRegistry::builtin();
};

struct LoadResult {
    std::vector<DatasetRecord> records;
    std::vector<std::string> diagnostics;
};

inline LoadResult parse_dataset(std::istream& in, const LoadOptions& options = {}) {
    LoadResult out;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        auto doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded()) throw ParseError(where + "malformed JSON");
        try {
            auto record = record_from_json(doc, *options.categories);
            if (!seen.insert(record.key()).second) {
                throw ParseError("duplicate (id, generator) pair '" + record.problem.id + "', '" +
                                 record.generator + "'");
            }
            out.records.push_back(std::move(record));
        } catch (const ParseError& e) {
            if (options.strict) throw ParseError(where + e.what());
            out.diagnostics.push_back(where + e.what());
        }
    }
    return out;
}

inline LoadResult load_dataset(const std::string& path, const LoadOptions& options = {}) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset '" + path + "'");
    return parse_dataset(in, options);
}

inline void write_jsonl(std::ostream& out, const std::vector<DatasetRecord>& records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

// ---------------------------------------------------------------------------
// Synthetic fixtures
// ---------------------------------------------------------------------------

/// Largest-remainder split of `total` by integer weights; ties go to the earlier weight.
inline std::vector<int> apportion(int total, const std::vector<int>& weights) {
    const long long sum = std::accumulate(weights.begin(), weights.end(), 0LL);
    std::vector<int> counts(weights.size());
    std::vector<std::pair<long long, std::size_t>> remainders;
    int assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const long long scaled = static_cast<long long>(total) * weights[i];
        counts[i] = static_cast<int>(scaled / sum);
        assigned += counts[i];
        remainders.emplace_back(scaled % sum, i);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int k = 0; k < total - assigned; ++k) ++counts[remainders[static_cast<std::size_t>(k)].second];
    return counts;
}

struct FixtureRatios {
    std::vector<int> problem_type{29, 10, 1};      // calculation : proof : open-ended
    std::vector<int> difficulty{4, 15, 31};        // easy : medium : hard
    // Primary categories in taxonomy reading order (elementary, modern,
    // contemporary, applied). Which count belongs to which category is an
    // assumption: the source ratio is only given in table order.
    std::vector<int> category{53, 40, 67, 40};
};

inline const std::vector<std::string>& fixture_generators() {
    static const std::vector<std::string> names{
        "gpt-4o-2024-08-06", "o1-mini-2024-09-12", "claude-3.5-sonnet-2024-06-20",
        "gemini-1.5-pro-002", "llama-3.1-70b-instruct-turbo"};
    return names;
}

namespace detail {

// Distribution objects are implementation-defined; these keep fixtures
// identical across standard libraries.
inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

template <typename Enum, std::size_t N>
std::vector<Enum> expand(const std::array<Enum, N>& values, const std::vector<int>& counts) {
    std::vector<Enum> out;
    for (std::size_t i = 0; i < N; ++i) out.insert(out.end(), static_cast<std::size_t>(counts[i]), values[i]);
    return out;
}

}  // namespace detail

/// Deterministic synthetic records with annotations and matching gold, split
/// by the benchmark's type, difficulty and category ratios.
inline std::vector<DatasetRecord> synth_fixtures(std::uint64_t seed, int count,
                                                 const FixtureRatios& ratios = {}) {
    if (count <= 0) return {};
    std::mt19937_64 rng(seed);
    auto types = detail::expand(kProblemTypes, apportion(count, ratios.problem_type));
    auto levels = detail::expand(kDifficulties, apportion(count, ratios.difficulty));
    auto cats = detail::expand(kPrimaryCategories, apportion(count, ratios.category));
    detail::shuffle(types, rng);
    detail::shuffle(levels, rng);
    detail::shuffle(cats, rng);

    const auto& registry = CategoryRegistry::builtin();
    std::vector<DatasetRecord> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        DatasetRecord r;
        char id[16];
        std::snprintf(id, sizeof id, "syn%04d", k + 1);
        r.problem.id = id;
        r.problem.problem_type = types[idx];
        r.problem.difficulty = levels[idx];
        r.problem.category_primary = cats[idx];
        const auto& secondaries = registry.secondaries(cats[idx]);
        r.problem.category_secondary = secondaries[detail::below(rng, secondaries.size())];
        r.problem.statement = "Synthetic problem " + std::to_string(k + 1) + " (" +
                              r.problem.category_secondary + ")";
        r.generator = fixture_generators()[idx % fixture_generators().size()];

        const int answer = static_cast<int>(detail::below(rng, 100));
        if (r.problem.problem_type == ProblemType::Calculation) {
            r.problem.reference_answer = std::to_string(answer);
            r.problem.constraint = "Give the answer as an integer.";
        }

        const int n = 2 + static_cast<int>(detail::below(rng, 9));  // 2..10 steps
        std::vector<Step> steps;
        bool derailed = false;
        for (int i = 1; i <= n; ++i) {
            Step s;
            s.index = i;
            s.text = "Synthetic reasoning step " + std::to_string(i) + " of " + r.problem.id;
            const bool ok = detail::below(rng, 100) < 72;
            if (!ok) {
                s.label = StepLabel::Incorrect;
                derailed = true;
            } else if (derailed && detail::below(rng, 2) == 0) {
                s.label = StepLabel::CorrectButMeaningless;
            } else {
                s.label = StepLabel::Correct;
            }
            steps.push_back(std::move(s));
        }

        std::string body;
        for (const auto& s : steps) body += (body.empty() ? "" : "\n") + s.text;
        if (r.problem.problem_type == ProblemType::Calculation) {
            const bool right = steps.back().label == StepLabel::Correct;
            const int given = right ? answer : answer + 1;
            r.solution_text = "解题过程：\n【" + body + "】\n\n最终答案：\n【" + std::to_string(given) + "】";
        } else {
            r.solution_text = body;
        }
        r.annotation = std::move(steps);
        r.gold = gold_score(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace stepmath
