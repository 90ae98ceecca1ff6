#pragma once

// Benchmark summary: pairs run outcomes with gold grades, computes metrics and
// renders them as JSON or as Markdown tables.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/agent.hpp"
#include "stepmath/dataset.hpp"
#include "stepmath/metrics.hpp"
#include "stepmath/runner.hpp"

namespace stepmath {

struct BenchReport {
    std::string mode;
    std::size_t total = 0;
    std::size_t scored = 0;
    std::size_t failed = 0;
    std::size_t missing_gold = 0;
    std::size_t score_mismatches = 0;
    std::size_t bypasses = 0;
    std::size_t reasked = 0;
    std::map<std::string, std::size_t> failures_by_kind;
    /// Absent when no record could be scored.
    std::optional<MetricsReport> metrics;
};

/// Outcomes are matched to records by id. Answer-level modes compare binary
/// grades scaled by 10; the others compare 0..10 grades.
inline BenchReport summarize(const std::vector<DatasetRecord>& records,
                             const std::vector<RecordOutcome>& outcomes) {
    std::map<std::string, const DatasetRecord*> by_id;
    for (const auto& r : records) by_id[r.key()] = &r;

    BenchReport rep;
    rep.total = outcomes.size();
    std::vector<int> assigned, gold;
    std::vector<SliceKey> keys;
    for (const auto& o : outcomes) {
        if (!o.ok()) {
            ++rep.failed;
            ++rep.failures_by_kind[o.error_kind.empty() ? "unknown" : o.error_kind];
            continue;
        }
        const auto& res = *o.result;
        if (rep.mode.empty()) rep.mode = std::string(to_string(res.mode));
        rep.score_mismatches += res.score_mismatch ? 1 : 0;
        rep.bypasses += res.bypass ? 1 : 0;
        rep.reasked += res.reasks > 0 ? 1 : 0;

        const auto it = by_id.find(o.id);
        if (it == by_id.end()) throw Error("result id '" + o.id + "' is not in the dataset");
        const auto g = effective_gold(*it->second);
        if (!g) {
            ++rep.missing_gold;
            continue;
        }
        if (is_answer_mode(res.mode)) {
            assigned.push_back(res.binary.value_or(0) * 10);
            gold.push_back(g->binary_score * 10);
        } else {
            assigned.push_back(res.final_score);
            gold.push_back(g->gold_score);
        }
        const auto& p = it->second->problem;
        keys.push_back({p.problem_type, p.category_primary, p.difficulty});
    }
    rep.scored = assigned.size();
    if (!assigned.empty()) rep.metrics = compute_metrics(assigned, gold, keys);
    return rep;
}

namespace detail {

inline double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

inline nlohmann::json slice_json(const SliceMetrics& m) {
    return {{"count", m.count},
            {"avg_s", round4(m.avg_s)},
            {"gold_avg_s", round4(m.gold_avg_s)},
            {"corr", round4(m.corr)},
            {"corr_undefined", m.corr_undefined},
            {"mse", round4(m.mse)},
            {"or", round4(m.or_rate)}};
}

inline nlohmann::json slices_json(const std::vector<std::pair<std::string, SliceMetrics>>& slices) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, m] : slices) out[name] = slice_json(m);
    return out;
}

inline std::string fmt1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

inline const SliceMetrics* find_slice(const std::vector<std::pair<std::string, SliceMetrics>>& slices,
                                      std::string_view name) {
    for (const auto& [n, m] : slices) {
        if (n == name) return &m;
    }
    return nullptr;
}

}  // namespace detail

inline nlohmann::json to_json(const MetricsReport& m) {
    return {{"overall", detail::slice_json(m.overall)},
            {"problem_type", detail::slices_json(m.by_problem_type)},
            {"category_primary", detail::slices_json(m.by_category)},
            {"difficulty", detail::slices_json(m.by_difficulty)}};
}

inline nlohmann::json to_json(const BenchReport& r) {
    nlohmann::json kinds = nlohmann::json::object();
    for (const auto& [k, n] : r.failures_by_kind) kinds[k] = n;
    return {{"mode", r.mode},
            {"total", r.total},
            {"scored", r.scored},
            {"failed", r.failed},
            {"failures_by_kind", std::move(kinds)},
            {"missing_gold", r.missing_gold},
            {"score_mismatches", r.score_mismatches},
            {"bypasses", r.bypasses},
            {"reasked", r.reasked},
            {"metrics", r.metrics ? to_json(*r.metrics) : nlohmann::json()}};
}

/// Markdown tables: a run row and a gold row per problem type, then the
/// category and difficulty slices. Missing slices print "-".
inline std::string render_markdown(const BenchReport& r, const std::string& label = "run") {
    using detail::fmt1;
    std::string out;
    out += "| " + std::string("Evaluator") +
           " | All AvgS | All Corr | All MSE | All OR"
           " | Calc AvgS | Calc Corr | Calc MSE | Calc OR"
           " | Proof AvgS | Proof Corr | Proof MSE | Proof OR"
           " | Open AvgS | Open Corr | Open MSE | Open OR |\n";
    out += "|---";
    for (int i = 0; i < 16; ++i) out += "|---:";
    out += "|\n";

    std::vector<const SliceMetrics*> cols(4, nullptr);
    if (r.metrics) {
        cols[0] = &r.metrics->overall;
        cols[1] = detail::find_slice(r.metrics->by_problem_type, "calculation");
        cols[2] = detail::find_slice(r.metrics->by_problem_type, "proof");
        cols[3] = detail::find_slice(r.metrics->by_problem_type, "open_ended");
    }
    out += "| " + label;
    for (const auto* m : cols) {
        if (!m) {
            out += " | - | - | - | -";
            continue;
        }
        out += " | " + fmt1(m->avg_s) + " | " + (m->corr_undefined ? std::string("-") : fmt1(m->corr)) + " | " + fmt1(m->mse) + " | " +
               fmt1(m->or_rate);
    }
    out += " |\n| Gold";
    for (const auto* m : cols) {
        out += m ? " | " + fmt1(m->gold_avg_s) + " | - | - | -" : std::string(" | - | - | - | -");
    }
    out += " |\n";

    auto slice_table = [&](const char* title, const std::vector<std::pair<std::string, SliceMetrics>>& s) {
        out += "\n| ";
        out += title;
        out += " | K | AvgS | Gold AvgS | Corr | MSE | OR |\n|---|---:|---:|---:|---:|---:|---:|\n";
        for (const auto& [name, m] : s) {
            out += "| " + name + " | " + std::to_string(m.count) + " | " + fmt1(m.avg_s) + " | " +
                   fmt1(m.gold_avg_s) + " | " + (m.corr_undefined ? std::string("-") : fmt1(m.corr)) +
                   " | " + fmt1(m.mse) + " | " + fmt1(m.or_rate) + " |\n";
        }
    };
    if (r.metrics) {
        slice_table("Category", r.metrics->by_category);
        slice_table("Difficulty", r.metrics->by_difficulty);
    }

    out += "\nrecords: " + std::to_string(r.total) + ", scored: " + std::to_string(r.scored) +
           ", failed: " + std::to_string(r.failed) + ", missing gold: " + std::to_string(r.missing_gold) +
           ", score mismatches: " + std::to_string(r.score_mismatches) +
           ", bypass verdicts: " + std::to_string(r.bypasses) +
           ", re-asked: " + std::to_string(r.reasked) + "\n";
    return out;
}

}  // namespace stepmath
