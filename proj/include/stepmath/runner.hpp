#pragma once

// Benchmark execution over a dataset with a bounded worker pool.
//
// Each finished record is appended to a checkpoint JSONL file as soon as it
// completes. A resumed run reads that file and skips every id already in it,
// so an interrupted run only evaluates what is left. Output order always
// matches input order.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/agent.hpp"
#include "stepmath/backend.hpp"
#include "stepmath/dataset.hpp"
#include "stepmath/errors.hpp"

namespace stepmath {

struct RecordOutcome {
    std::string id;  // DatasetRecord::key()
    std::optional<EvaluationResult> result;
    std::optional<std::string> error;
    std::string error_kind;
    std::string transcript_path;

    bool ok() const { return result.has_value(); }
};

struct RunOptions {
    int parallelism = 1;
    /// Directory for transcripts/ (and nothing else). Empty disables transcript files.
    std::filesystem::path out_dir;
    /// Checkpoint file appended per finished record. Empty disables checkpointing.
    std::filesystem::path checkpoint;
    bool resume = false;
    /// Stop scheduling after this many new evaluations (partial runs).
    std::optional<std::size_t> limit;
};

// ---------------------------------------------------------------------------
// Result rows (one JSON object per line in results/checkpoint files)
// ---------------------------------------------------------------------------

inline nlohmann::json to_row(const RecordOutcome& o) {
    nlohmann::json row;
    row["id"] = o.id;
    if (o.result) {
        const auto& r = *o.result;
        row["mode"] = to_string(r.mode);
        row["final_score"] = r.final_score;
        row["binary"] = r.binary ? nlohmann::json(*r.binary) : nlohmann::json();
        row["score_mismatch"] = r.score_mismatch;
        row["reported_final"] = r.reported_final ? nlohmann::json(*r.reported_final) : nlohmann::json();
        row["bypass"] = r.bypass;
        row["reasks"] = r.reasks;
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& s : r.steps) steps.push_back({{"index", s.index}, {"text", s.text}, {"score", s.score}});
        row["steps"] = std::move(steps);
        row["chains"] = chains_to_json(r.chains);
        row["diagnostics"] = r.diagnostics;
        row["error"] = nullptr;
    } else {
        row["final_score"] = nullptr;
        row["error"] = o.error.value_or("unknown error");
        row["error_kind"] = o.error_kind;
    }
    row["transcript_path"] = o.transcript_path;
    return row;
}

/// Rebuilds an outcome from a row. Transcripts and forests are not stored in
/// rows; the forest is rebuilt from the chains.
inline RecordOutcome from_row(const nlohmann::json& row) {
    RecordOutcome o;
    o.id = row.at("id").get<std::string>();
    o.transcript_path = row.value("transcript_path", "");
    if (!row.contains("error") || row.at("error").is_null()) {
        EvaluationResult r;
        r.mode = parse_eval_mode(row.at("mode").get<std::string>());
        r.final_score = row.at("final_score").get<int>();
        if (row.contains("binary") && !row.at("binary").is_null()) r.binary = row.at("binary").get<int>();
        r.score_mismatch = row.value("score_mismatch", false);
        if (row.contains("reported_final") && !row.at("reported_final").is_null()) {
            r.reported_final = row.at("reported_final").get<int>();
        }
        r.bypass = row.value("bypass", false);
        r.reasks = row.value("reasks", 0);
        if (row.contains("steps")) {
            for (const auto& s : row.at("steps")) {
                r.steps.push_back({s.at("index").get<int>(), s.at("text").get<std::string>(),
                                   s.at("score").get<int>()});
            }
        }
        if (row.contains("chains")) r.chains = chains_from_json(row.at("chains"));
        r.forest = build_forest(r.chains).forest;
        if (row.contains("diagnostics")) {
            r.diagnostics = row.at("diagnostics").get<std::vector<std::string>>();
        }
        o.result = std::move(r);
    } else {
        o.error = row.at("error").get<std::string>();
        o.error_kind = row.value("error_kind", "");
    }
    return o;
}

inline std::vector<RecordOutcome> read_rows(const std::filesystem::path& path) {
    std::vector<RecordOutcome> out;
    std::ifstream in(path);
    if (!in) throw Error("cannot open results file '" + path.string() + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        auto doc = nlohmann::json::parse(line, nullptr, false);
        // A run killed mid-write can leave a truncated last line; skip it.
        if (doc.is_discarded()) continue;
        try {
            out.push_back(from_row(doc));
        } catch (const std::exception& e) {
            throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

namespace detail {

inline std::string file_stem_for(const std::string& key) {
    std::string out;
    for (char c : key) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                          c == '-' || c == '.' || c == '_';
        out += keep ? c : '_';
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

/// Evaluates every record; per-record failures are captured, never thrown.
inline std::vector<RecordOutcome> run_benchmark(const std::vector<DatasetRecord>& records,
                                                const EvalConfig& config, CompletionBackend& backend,
                                                const RunOptions& options = {}) {
    if (records.empty()) throw Error("dataset is empty");
    if (options.parallelism < 1) throw Error("parallelism must be >= 1");
    config.validate();

    std::map<std::string, RecordOutcome> done;
    if (options.resume && !options.checkpoint.empty() && std::filesystem::exists(options.checkpoint)) {
        for (auto& o : read_rows(options.checkpoint)) done[o.id] = std::move(o);
    }
    if (!options.resume && !options.checkpoint.empty()) {
        std::ofstream truncate(options.checkpoint, std::ios::trunc);
    }
    const auto transcript_dir = options.out_dir.empty() ? std::filesystem::path{}
                                                        : options.out_dir / "transcripts";
    if (!transcript_dir.empty()) std::filesystem::create_directories(transcript_dir);

    std::vector<std::optional<RecordOutcome>> slots(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (auto it = done.find(records[i].key()); it != done.end()) slots[i] = it->second;
    }

    std::mutex checkpoint_mu;
    std::ofstream checkpoint;
    if (!options.checkpoint.empty()) checkpoint.open(options.checkpoint, std::ios::app);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> started{0};

    auto evaluate_one = [&](const DatasetRecord& record) {
        RecordOutcome o;
        o.id = record.key();
        std::vector<Transcript> transcripts;
        try {
            auto result = evaluate_any(record.problem, record.solution_text, config, backend, o.id);
            transcripts = result.transcripts;
            o.result = std::move(result);
        } catch (const EvaluationError& e) {
            o.error = e.what();
            o.error_kind = e.kind();
            transcripts = e.transcripts();
        } catch (const std::exception& e) {
            o.error = e.what();
            o.error_kind = "internal";
        }
        if (!transcript_dir.empty() && !transcripts.empty()) {
            const auto name = detail::file_stem_for(o.id) + ".json";
            nlohmann::json doc = nlohmann::json::array();
            for (const auto& t : transcripts) doc.push_back(to_json(t));
            std::ofstream(transcript_dir / name) << doc.dump(2) << '\n';
            o.transcript_path = "transcripts/" + name;
        }
        return o;
    };

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            if (slots[i]) continue;
            if (options.limit && started.fetch_add(1) >= *options.limit) return;
            auto outcome = evaluate_one(records[i]);
            {
                std::lock_guard lock(checkpoint_mu);
                if (checkpoint.is_open()) {
                    checkpoint << to_row(outcome).dump() << '\n';
                    checkpoint.flush();
                }
            }
            slots[i] = std::move(outcome);
        }
    };

    {
        std::vector<std::jthread> pool;
        const auto workers = std::min<std::size_t>(static_cast<std::size_t>(options.parallelism), records.size());
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    std::vector<RecordOutcome> out;
    out.reserve(records.size());
    for (auto& s : slots) {
        if (s) out.push_back(std::move(*s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Solution generation
// ---------------------------------------------------------------------------

struct GenerationOutcome {
    std::string problem_id;
    std::optional<std::string> solution_text;
    std::optional<std::string> error;
};

/// Asks the backend to solve each problem with the type-appropriate prompt.
inline std::vector<GenerationOutcome> generate_solutions(const std::vector<Problem>& problems,
                                                         CompletionBackend& backend,
                                                         const EvalConfig& config) {
    std::vector<GenerationOutcome> out;
    for (const auto& p : problems) {
        GenerationOutcome g;
        g.problem_id = p.id;
        try {
            auto req = detail::make_request(config, build_generation_prompt(p, config.language), p.id);
            g.solution_text = backend.complete(req).raw_response;
        } catch (const std::exception& e) {
            g.error = e.what();
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace stepmath
