// stepmath: command-line front end.
//
// Exit codes: 0 success, 1 evaluation or operational failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stepmath/http_backend.hpp"
#include "stepmath/stepmath.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stepmath;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Misuse of the command line or unusable input files.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    auto doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded()) throw UsageError("'" + path + "' is not valid JSON");
    return doc;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

// ---------------------------------------------------------------------------
// Shared option groups
// ---------------------------------------------------------------------------

struct BackendFlags {
    std::string backend;
    std::string mock_script;
    std::string base_url;
    std::string api_key;
    std::string model;
    double temperature = 0.0;
    int max_tokens = 0;
    int timeout_ms = 0;
    CLI::Option* backend_opt = nullptr;
    CLI::Option* base_url_opt = nullptr;
    CLI::Option* api_key_opt = nullptr;
    CLI::Option* model_opt = nullptr;
    CLI::Option* temperature_opt = nullptr;
    CLI::Option* max_tokens_opt = nullptr;
    CLI::Option* timeout_opt = nullptr;

    void attach(CLI::App* app) {
        backend_opt = app->add_option("--backend", backend, "Completion backend: mock or http (default http)")
                          ->check(CLI::IsMember({"mock", "http"}));
        app->add_option("--mock-script", mock_script,
                        "Mock responses: JSON array, or {\"responses\": [...], \"by_tag\": {id: [...]}}");
        base_url_opt = app->add_option("--base-url", base_url,
                                       "OpenAI-compatible API base URL (env STEPMATH_BASE_URL)");
        api_key_opt = app->add_option("--api-key", api_key, "API key (env STEPMATH_API_KEY)");
        model_opt = app->add_option("--model", model, "Model name (env STEPMATH_MODEL)");
        temperature_opt = app->add_option("--temperature", temperature, "Sampling temperature (default 0)");
        max_tokens_opt = app->add_option("--max-tokens", max_tokens, "Maximum output tokens");
        timeout_opt = app->add_option("--timeout-ms", timeout_ms, "Per-request timeout in ms (default 120000)");
    }

    static std::optional<std::string> flag(const CLI::Option* opt, const std::string& value) {
        return opt && opt->count() ? std::optional<std::string>(value) : std::nullopt;
    }
};

struct EvalFlags {
    std::string mode = "agent";
    std::string modules;
    int step_hint = 0;
    bool preset = false;
    std::string language;
    CLI::Option* step_hint_opt = nullptr;
    CLI::Option* language_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--mode", mode, "agent, v1, v2, v3 or rule-em (default agent)");
        app->add_option("--modules", modules,
                        "Agent modules: none, difficulty, simplicity, completeness, format, "
                        "simplicity,completeness,format or all");
        step_hint_opt = app->add_option("--step-hint", step_hint, "Ask for roughly this many reasoning steps");
        app->add_flag("--preset", preset, "Restrict --step-hint to 4, 6, 8, 10 or 12");
        language_opt = app->add_option("--language", language, "Prompt language: zh or en (default zh)");
    }
};

class Cli {
public:
    const Settings& settings() const { return *settings_; }
    void load_settings(const std::string& config_path) {
        if (config_path.empty()) return;
        try {
            settings_ = std::make_unique<Settings>(Settings::from_file(config_path));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }

    EvalConfig eval_config(const EvalFlags& ef, const BackendFlags& bf) const {
        EvalConfig c;
        try {
            c.mode = parse_eval_mode(ef.mode);
            c.modules = parse_modules(ef.modules);
            c.language = parse_prompt_language(
                settings().get("language", BackendFlags::flag(ef.language_opt, ef.language), "zh"));
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
        if (ef.step_hint_opt && ef.step_hint_opt->count()) c.step_hint = ef.step_hint;
        c.grid_preset = ef.preset;
        c.model_name = settings().get("model", BackendFlags::flag(bf.model_opt, bf.model), c.model_name);
        try {
            c.temperature = std::stod(settings().get(
                "temperature", BackendFlags::flag(bf.temperature_opt, std::to_string(bf.temperature)), "0"));
        } catch (const std::logic_error&) {
            throw UsageError("temperature must be a number");
        }
        const int max_tokens = settings().get_int(
            "max_tokens", bf.max_tokens_opt->count() ? std::optional<int>(bf.max_tokens) : std::nullopt, 0);
        if (max_tokens > 0) c.max_output_tokens = max_tokens;
        c.timeout = std::chrono::milliseconds(settings().get_int(
            "timeout_ms", bf.timeout_opt->count() ? std::optional<int>(bf.timeout_ms) : std::nullopt, 120000));
        try {
            c.validate();
        } catch (const UnsupportedError& e) {
            throw UsageError(e.what());
        }
        return c;
    }

    std::unique_ptr<CompletionBackend> backend(const BackendFlags& bf) const {
        const auto kind = settings().get("backend", BackendFlags::flag(bf.backend_opt, bf.backend), "http");
        if (kind == "mock") {
            const auto script = settings().get("mock_script", bf.mock_script.empty()
                                                                  ? std::nullopt
                                                                  : std::optional<std::string>(bf.mock_script),
                                               "");
            if (script.empty()) throw UsageError("--backend mock needs --mock-script");
            try {
                return std::make_unique<MockBackend>(MockBackend::from_json(read_json_file(script)));
            } catch (const ParseError& e) {
                throw UsageError(std::string("mock script: ") + e.what());
            }
        }
        if (kind != "http") throw UsageError("unknown backend '" + kind + "'");
        HttpBackendConfig hc;
        hc.base_url = settings().get("base_url", BackendFlags::flag(bf.base_url_opt, bf.base_url), hc.base_url);
        hc.api_key = settings().get("api_key", BackendFlags::flag(bf.api_key_opt, bf.api_key), "");
        if (hc.api_key.empty()) throw UsageError("no API key: set --api-key or STEPMATH_API_KEY");
        try {
            return std::make_unique<HttpBackend>(std::move(hc));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }

private:
    std::unique_ptr<Settings> settings_ = std::make_unique<Settings>();
};

std::vector<DatasetRecord> load_records(const std::string& path, bool lenient) {
    try {
        LoadOptions opts;
        opts.strict = !lenient;
        auto loaded = load_dataset(path, opts);
        for (const auto& d : loaded.diagnostics) std::cerr << "skipped: " << d << '\n';
        return std::move(loaded.records);
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string render_forest(const EvaluationResult& r, const std::string& format) {
    if (format == "json") return export_json(r.forest) + "\n";
    std::map<int, std::string> texts;
    for (const auto& s : r.steps) texts[s.index] = s.text;
    return export_dot(r.forest, texts);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct EvaluateCmd {
    std::string problem_file, solution_file, solution_text, out, tree, tree_out, transcript_out;
    EvalFlags ef;
    BackendFlags bf;

    void attach(CLI::App* app) {
        app->add_option("--problem", problem_file, "Problem JSON file (dataset record fields)")->required();
        auto* sf = app->add_option("--solution", solution_file, "File holding the response to grade");
        auto* st = app->add_option("--solution-text", solution_text, "Response to grade, inline");
        sf->excludes(st);
        app->add_option("--out", out, "Result JSON path (default stdout)");
        app->add_option("--tree", tree, "Also export the error forest: dot or json")
            ->check(CLI::IsMember({"dot", "json"}));
        app->add_option("--tree-out", tree_out, "Forest output path (default <out>.dot / <out>.tree.json, or stdout)");
        app->add_option("--transcript-out", transcript_out, "Write raw backend transcripts to this JSON file");
        ef.attach(app);
        bf.attach(app);
    }

    int run(const Cli& cli) {
        if (solution_file.empty() && solution_text.empty()) {
            throw UsageError("one of --solution or --solution-text is required");
        }
        Problem problem;
        try {
            problem = problem_from_json(read_json_file(problem_file));
        } catch (const ParseError& e) {
            throw UsageError(problem_file + ": " + e.what());
        }
        const std::string solution = solution_file.empty() ? solution_text : read_file(solution_file);
        const auto config = cli.eval_config(ef, bf);
        std::unique_ptr<CompletionBackend> backend;
        if (config.mode != EvalMode::RuleEM) backend = cli.backend(bf);
        MockBackend unused;

        EvaluationResult result;
        try {
            result = evaluate_any(problem, solution, config, backend ? *backend : unused, problem.id);
        } catch (const EvaluationError& e) {
            std::cerr << "evaluation failed (" << e.kind() << "): " << e.what() << '\n';
            if (!transcript_out.empty()) write_transcripts(e.transcripts());
            return kExitFailure;
        }
        for (const auto& d : result.diagnostics) std::cerr << "note: " << d << '\n';
        write_text(out, to_json(result).dump(2) + "\n");
        if (!transcript_out.empty()) write_transcripts(result.transcripts);
        if (!tree.empty()) {
            std::string target = tree_out;
            if (target.empty() && !out.empty() && out != "-") {
                target = out + (tree == "dot" ? ".dot" : ".tree.json");
            }
            write_text(target, render_forest(result, tree));
        }
        return kExitOk;
    }

    void write_transcripts(const std::vector<Transcript>& ts) const {
        json doc = json::array();
        for (const auto& t : ts) doc.push_back(to_json(t));
        write_text(transcript_out, doc.dump(2) + "\n");
    }
};

struct BenchCmd {
    std::string dataset, out_dir;
    int parallelism = 1;
    int limit = 0;
    bool resume = false, strict = false, lenient = false;
    EvalFlags ef;
    BackendFlags bf;
    CLI::Option* parallelism_opt = nullptr;
    CLI::Option* limit_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--dataset", dataset, "Dataset JSONL")->required();
        app->add_option("--out-dir", out_dir,
                        "Output directory: results.jsonl, checkpoint.jsonl, metrics.json, metrics.md, transcripts/")
            ->required();
        parallelism_opt = app->add_option("--parallelism", parallelism, "Concurrent evaluations (>= 1, default 1)");
        app->add_flag("--resume", resume, "Skip records already in <out-dir>/checkpoint.jsonl");
        app->add_flag("--strict", strict, "Exit 1 when any record fails");
        app->add_flag("--lenient", lenient, "Skip invalid dataset records instead of aborting");
        limit_opt = app->add_option("--limit", limit, "Stop after this many new evaluations");
        ef.attach(app);
        bf.attach(app);
    }

    int run(const Cli& cli) {
        const int workers = cli.settings().get_int(
            "parallelism", parallelism_opt->count() ? std::optional<int>(parallelism) : std::nullopt, 1);
        if (workers < 1) throw UsageError("--parallelism must be >= 1");
        if (limit_opt->count() && limit < 0) throw UsageError("--limit must be >= 0");
        const auto records = load_records(dataset, lenient);
        if (records.empty()) throw UsageError("dataset '" + dataset + "' is empty");
        const auto config = cli.eval_config(ef, bf);
        std::unique_ptr<CompletionBackend> backend;
        if (config.mode != EvalMode::RuleEM) backend = cli.backend(bf);
        MockBackend unused;

        fs::create_directories(out_dir);
        RunOptions opts;
        opts.parallelism = workers;
        opts.out_dir = out_dir;
        opts.checkpoint = fs::path(out_dir) / "checkpoint.jsonl";
        opts.resume = resume;
        if (limit_opt->count()) opts.limit = static_cast<std::size_t>(limit);
        const auto outcomes = run_benchmark(records, config, backend ? *backend : unused, opts);

        std::string rows;
        for (const auto& o : outcomes) rows += to_row(o).dump() + "\n";
        write_text((fs::path(out_dir) / "results.jsonl").string(), rows);
        const auto report = summarize(records, outcomes);
        write_text((fs::path(out_dir) / "metrics.json").string(), to_json(report).dump(2) + "\n");
        write_text((fs::path(out_dir) / "metrics.md").string(), render_markdown(report, report.mode));

        std::cerr << "evaluated " << outcomes.size() << "/" << records.size() << " records, "
                  << report.failed << " failed\n";
        for (const auto& o : outcomes) {
            if (!o.ok()) std::cerr << "  " << o.id << ": " << o.error_kind << ": " << *o.error << '\n';
        }
        return strict && report.failed > 0 ? kExitFailure : kExitOk;
    }
};

struct GoldCmd {
    std::string dataset, out;
    bool lenient = false;

    void attach(CLI::App* app) {
        app->add_option("--dataset", dataset, "Dataset JSONL")->required();
        app->add_option("--out", out, "Output JSONL (default stdout)");
        app->add_flag("--lenient", lenient, "Skip invalid records instead of aborting");
    }

    int run(const Cli&) {
        std::string rows;
        for (const auto& r : load_records(dataset, lenient)) {
            json row{{"id", r.problem.id},
                     {"generator", r.generator},
                     {"problem_type", to_string(r.problem.problem_type)}};
            if (r.annotation) {
                const auto g = gold_score(r);
                row["gold"] = {{"score", g.gold_score}, {"binary", g.binary_score}};
                row["source"] = "annotation";
            } else if (r.gold) {
                row["gold"] = {{"score", r.gold->gold_score}, {"binary", r.gold->binary_score}};
                row["source"] = "stored";
            } else {
                row["gold"] = nullptr;
                row["source"] = nullptr;
            }
            rows += row.dump() + "\n";
        }
        write_text(out, rows);
        return kExitOk;
    }
};

struct MetricsCmd {
    std::string results, dataset, out, format = "md";

    void attach(CLI::App* app) {
        app->add_option("--results", results, "Results JSONL from bench")->required();
        app->add_option("--dataset", dataset, "Dataset JSONL with gold grades")->required();
        app->add_option("--format", format, "md or json (default md)")->check(CLI::IsMember({"md", "json"}));
        app->add_option("--out", out, "Output path (default stdout)");
    }

    int run(const Cli&) {
        const auto records = load_records(dataset, false);
        std::vector<RecordOutcome> outcomes;
        try {
            outcomes = read_rows(results);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        BenchReport report;
        try {
            report = summarize(records, outcomes);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitFailure;
        }
        write_text(out, format == "json" ? to_json(report).dump(2) + "\n" : render_markdown(report, report.mode));
        return kExitOk;
    }
};

struct TreeCmd {
    std::string result, chains, format = "dot", out;

    void attach(CLI::App* app) {
        auto* r = app->add_option("--result", result, "Result JSON from evaluate, or one results.jsonl row");
        auto* c = app->add_option("--chains", chains, "Error chains, e.g. \"(3)-(4)-(6), (5)-(6)\"");
        r->excludes(c);
        app->add_option("--format", format, "dot or json (default dot)")->check(CLI::IsMember({"dot", "json"}));
        app->add_option("--out", out, "Output path (default stdout)");
    }

    int run(const Cli&) {
        if (result.empty() && chains.empty()) throw UsageError("one of --result or --chains is required");
        EvaluationResult r;
        try {
            if (!chains.empty()) {
                r.chains = parse_chains(chains);
            } else {
                const auto doc = read_json_file(result);
                if (doc.contains("chains")) r.chains = chains_from_json(doc.at("chains"));
                if (doc.contains("steps")) {
                    for (const auto& s : doc.at("steps")) {
                        r.steps.push_back({s.at("index").get<int>(), s.at("text").get<std::string>(),
                                           s.at("score").get<int>()});
                    }
                }
            }
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        } catch (const json::exception& e) {
            throw UsageError(result + ": " + e.what());
        }
        auto built = build_forest(r.chains);
        for (const auto& d : built.diagnostics) std::cerr << "note: " << d << '\n';
        r.forest = std::move(built.forest);
        write_text(out, render_forest(r, format));
        return kExitOk;
    }
};

struct GenCmd {
    std::string problems, generator, out;
    bool lenient = false;
    EvalFlags ef;
    BackendFlags bf;

    void attach(CLI::App* app) {
        app->add_option("--problems", problems, "JSONL of problems (dataset record fields)")->required();
        app->add_option("--generator", generator, "Generator name stored on records (default: the model name)");
        app->add_option("--out", out, "Output dataset JSONL (default stdout)");
        ef.language_opt = app->add_option("--language", ef.language, "Prompt language: zh or en (default zh)");
        bf.attach(app);
    }

    int run(const Cli& cli) {
        std::vector<Problem> list;
        std::istringstream in(read_file(problems));
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (text::trim(line).empty()) continue;
            auto doc = json::parse(line, nullptr, false);
            if (doc.is_discarded()) throw UsageError(problems + " line " + std::to_string(line_no) + ": malformed JSON");
            try {
                list.push_back(problem_from_json(doc));
            } catch (const ParseError& e) {
                throw UsageError(problems + " line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        const auto config = cli.eval_config(ef, bf);
        auto backend = cli.backend(bf);
        const auto generated = generate_solutions(list, *backend, config);
        std::string rows;
        int failures = 0;
        for (std::size_t i = 0; i < generated.size(); ++i) {
            if (!generated[i].solution_text) {
                ++failures;
                std::cerr << "generation failed for '" << generated[i].problem_id << "': " << *generated[i].error << '\n';
                continue;
            }
            DatasetRecord rec;
            rec.problem = list[i];
            rec.generator = generator.empty() ? config.model_name : generator;
            rec.solution_text = *generated[i].solution_text;
            rows += to_json(rec).dump() + "\n";
        }
        write_text(out, rows);
        return failures ? kExitFailure : kExitOk;
    }
};

struct FixturesCmd {
    std::uint64_t seed = 1;
    int count = 200;
    std::string out;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Random seed (default 1)");
        app->add_option("--count", count, "Number of records (default 200)")->check(CLI::NonNegativeNumber);
        app->add_option("--out", out, "Output JSONL (default stdout)");
    }

    int run(const Cli&) {
        std::ostringstream ss;
        write_jsonl(ss, synth_fixtures(seed, count));
        write_text(out, ss.str());
        return kExitOk;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Step-wise grading of mathematical solutions with LLM judges"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON settings file; precedence is flags > environment > config file > defaults");

    EvaluateCmd evaluate_cmd;
    BenchCmd bench_cmd;
    GoldCmd gold_cmd;
    MetricsCmd metrics_cmd;
    TreeCmd tree_cmd;
    GenCmd gen_cmd;
    FixturesCmd fixtures_cmd;

    auto* evaluate_app = app.add_subcommand("evaluate", "Grade one response");
    evaluate_cmd.attach(evaluate_app);
    auto* bench_app = app.add_subcommand("bench", "Grade a dataset and compute metrics against gold");
    bench_cmd.attach(bench_app);
    auto* gold_app = app.add_subcommand("gold", "Compute gold grades from step annotations");
    gold_cmd.attach(gold_app);
    auto* metrics_app = app.add_subcommand("metrics", "Recompute metrics from a results file");
    metrics_cmd.attach(metrics_app);
    auto* tree_app = app.add_subcommand("tree", "Export an error forest as DOT or JSON");
    tree_cmd.attach(tree_app);
    auto* gen_app = app.add_subcommand("gen", "Generate solutions for problems");
    gen_cmd.attach(gen_app);
    auto* fixtures_app = app.add_subcommand("fixtures", "Write synthetic annotated records");
    fixtures_cmd.attach(fixtures_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Cli cli;
    try {
        cli.load_settings(config_path);
        if (evaluate_app->parsed()) return evaluate_cmd.run(cli);
        if (bench_app->parsed()) return bench_cmd.run(cli);
        if (gold_app->parsed()) return gold_cmd.run(cli);
        if (metrics_app->parsed()) return metrics_cmd.run(cli);
        if (tree_app->parsed()) return tree_cmd.run(cli);
        if (gen_app->parsed()) return gen_cmd.run(cli);
        if (fixtures_app->parsed()) return fixtures_cmd.run(cli);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
