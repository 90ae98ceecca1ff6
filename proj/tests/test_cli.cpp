#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = STEPMATH_CLI_PATH;
const fs::path kData = STEPMATH_TEST_DATA;

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("stepmath_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    /// Runs the CLI with `args` (already shell-quoted) and a clean API environment.
    Invocation run(const std::string& args) const {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = "env -u STEPMATH_API_KEY -u STEPMATH_BASE_URL -u STEPMATH_MODEL '" + kCli +
                                "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path write(const std::string& name, const std::string& content) const {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p;
    }

    static std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

    fs::path dir_;
};

const char* kProblem = R"({"id": "q1", "statement": "求 1+2+…+10。", "problem_type": "calculation",
  "category_primary": "elementary", "category_secondary": "Arithmetic", "difficulty": 1,
  "reference_answer": "55"})";

// Four steps, last two wrong: 6 * 2/3 + 4 * 0 = 4; the model claims 9.
const char* kVerdict =
    R"(["{\"（1）配对\": 1, \"（2）求和\": 1, \"（3）相加\": 0, \"（4）结论\": 0, \"最终得分\": 9, \"错误链\": \"(3)-(4)\"}"])";

}  // namespace

TEST_F(CliTest, HelpExitsZeroEverywhere) {
    for (const char* sub : {"", "evaluate", "bench", "gold", "metrics", "tree", "gen", "fixtures"}) {
        const auto r = run(std::string(sub) + " --help");
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_NE(r.out.find("--"), std::string::npos) << sub;
    }
    const auto bench = run("bench --help").out;
    for (const char* flag : {"--dataset", "--out-dir", "--parallelism", "--resume", "--strict", "--mode",
                             "--modules", "--backend", "--mock-script", "--api-key", "--base-url"}) {
        EXPECT_NE(bench.find(flag), std::string::npos) << flag;
    }
}

TEST_F(CliTest, UsageErrorsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("evaluate").code, 2);
    EXPECT_EQ(run("tree --format svg --chains '(1)'").code, 2);
    EXPECT_EQ(run("fixtures --count -3").code, 2);
    EXPECT_EQ(run("--config /nonexistent/cfg.json fixtures --count 1").code, 2);
}

TEST_F(CliTest, EvaluateWritesResultAndTree) {
    const auto problem = write("problem.json", kProblem);
    const auto script = write("mock.json", kVerdict);
    const auto out = dir_ / "result.json";
    const auto r = run("evaluate --problem " + q(problem) + " --solution-text 答案 --backend mock --mock-script " +
                       q(script) + " --out " + q(out) + " --tree dot");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(slurp(out));
    EXPECT_EQ(doc.at("final_score"), 4);
    EXPECT_EQ(doc.at("reported_final"), 9);
    EXPECT_EQ(doc.at("score_mismatch"), true);
    const auto dot = slurp(fs::path(out.string() + ".dot"));
    EXPECT_NE(dot.find("s4 -> s3;"), std::string::npos) << dot;
    EXPECT_NE(dot.find("(4) 结论"), std::string::npos) << dot;

    const auto tree = run("tree --result " + q(out) + " --format json");
    ASSERT_EQ(tree.code, 0) << tree.err;
    EXPECT_EQ(json::parse(tree.out).at("roots").size(), 1u);
}

TEST_F(CliTest, UnsupportedModuleComboExitsTwo) {
    const auto problem = write("problem.json", kProblem);
    const auto script = write("mock.json", kVerdict);
    const auto r = run("evaluate --problem " + q(problem) + " --solution-text x --backend mock --mock-script " +
                       q(script) + " --modules simplicity,difficulty");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, RuleEmWithoutReferenceExitsOne) {
    auto doc = json::parse(kProblem);
    doc.erase("reference_answer");
    const auto problem = write("problem.json", doc.dump());
    const auto r = run("evaluate --problem " + q(problem) + " --solution-text '最终答案：【55】' --mode rule-em");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("reference answer"), std::string::npos) << r.err;

    const auto with_ref = write("with_ref.json", kProblem);
    const auto ok = run("evaluate --problem " + q(with_ref) + " --solution-text '最终答案：【55】' --mode rule-em");
    ASSERT_EQ(ok.code, 0) << ok.err;
    EXPECT_EQ(json::parse(ok.out).at("binary"), 1);
}

TEST_F(CliTest, MissingApiKeyIsAUsageError) {
    const auto problem = write("problem.json", kProblem);
    EXPECT_EQ(run("evaluate --problem " + q(problem) + " --solution-text x").code, 2);
}

TEST_F(CliTest, EvaluationFailureExitsOne) {
    const auto problem = write("problem.json", kProblem);
    const auto script = write("mock.json", R"(["nothing", "still nothing"])");
    const auto r = run("evaluate --problem " + q(problem) + " --solution-text x --backend mock --mock-script " +
                       q(script));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("extraction"), std::string::npos) << r.err;
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
    const auto problem = write("problem.json", kProblem);
    const auto script = write("mock.json", kVerdict);
    const auto cfg = write("cfg.json", json{{"backend", "mock"}, {"mock_script", script.string()}}.dump());
    const auto r = run("--config " + q(cfg) + " evaluate --problem " + q(problem) + " --solution-text x");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out).at("final_score"), 4);
}

TEST_F(CliTest, FixturesSplitAndDeterminism) {
    const auto a = run("fixtures --seed 1 --count 200");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, run("fixtures --seed 1 --count 200").out);
    std::map<std::string, int> types;
    std::istringstream in(a.out);
    std::string line;
    while (std::getline(in, line)) ++types[json::parse(line).at("problem_type").get<std::string>()];
    EXPECT_EQ(types["calculation"], 145);
    EXPECT_EQ(types["proof"], 50);
    EXPECT_EQ(types["open_ended"], 5);
}

TEST_F(CliTest, GoldMatchesStoredGold) {
    const auto fx = dir_ / "fx.jsonl";
    ASSERT_EQ(run("fixtures --seed 3 --count 40 --out " + q(fx)).code, 0);
    const auto r = run("gold --dataset " + q(fx));
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream gold_rows(r.out);
    std::istringstream records(slurp(fx));
    std::string g, rec;
    int n = 0;
    while (std::getline(gold_rows, g) && std::getline(records, rec)) {
        EXPECT_EQ(json::parse(g).at("gold"), json::parse(rec).at("gold"));
        EXPECT_EQ(json::parse(g).at("source"), "annotation");
        ++n;
    }
    EXPECT_EQ(n, 40);
}

TEST_F(CliTest, TreeFromChains) {
    const auto r = run("tree --chains '(3)-(4)-(6), (5)-(6)' --format dot");
    ASSERT_EQ(r.code, 0);
    int nodes = 0, edges = 0;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("[label=") != std::string::npos) ++nodes;
        if (line.find("->") != std::string::npos) ++edges;
    }
    EXPECT_EQ(nodes, 4);
    EXPECT_EQ(edges, 3);
    EXPECT_EQ(run("tree --chains '(4)-(2)'").code, 2);
}

TEST_F(CliTest, BenchMatchesGoldenReport) {
    const auto out = dir_ / "run";
    const auto r = run("bench --dataset " + q(kData / "e2e/dataset.jsonl") + " --out-dir " + q(out) +
                       " --backend mock --mock-script " + q(kData / "e2e/mock.json") +
                       " --modules difficulty --parallelism 4");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(out / "metrics.md"), slurp(kData / "e2e/expected_metrics.md"));
    EXPECT_EQ(slurp(out / "metrics.json"), slurp(kData / "e2e/expected_metrics.json"));
    EXPECT_EQ(slurp(out / "results.jsonl"), slurp(kData / "e2e/expected_results.jsonl"));

    const auto md = run("metrics --results " + q(out / "results.jsonl") + " --dataset " +
                        q(kData / "e2e/dataset.jsonl"));
    ASSERT_EQ(md.code, 0) << md.err;
    EXPECT_EQ(md.out, slurp(kData / "e2e/expected_metrics.md"));

    // Resuming a finished run must not touch the backend: an empty script
    // would fail every call.
    const auto empty = write("empty.json", R"({"by_tag": {}})");
    const auto again = run("bench --dataset " + q(kData / "e2e/dataset.jsonl") + " --out-dir " + q(out) +
                           " --backend mock --mock-script " + q(empty) + " --modules difficulty --resume");
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(slurp(out / "metrics.json"), slurp(kData / "e2e/expected_metrics.json"));

    const auto strict = run("bench --dataset " + q(kData / "e2e/dataset.jsonl") + " --out-dir " + q(out) +
                            " --backend mock --mock-script " + q(kData / "e2e/mock.json") +
                            " --modules difficulty --strict");
    EXPECT_EQ(strict.code, 1);
}

TEST_F(CliTest, BenchUsageErrors) {
    const auto ds = kData / "e2e/dataset.jsonl";
    const auto script = kData / "e2e/mock.json";
    const std::string common = " --out-dir " + q(dir_ / "o") + " --backend mock --mock-script " + q(script);
    EXPECT_EQ(run("bench --dataset " + q(ds) + common + " --parallelism 0").code, 2);
    EXPECT_EQ(run("bench --dataset " + q(write("empty.jsonl", "")) + common).code, 2);
    EXPECT_EQ(run("bench --dataset " + q(dir_ / "missing.jsonl") + common).code, 2);
}

TEST_F(CliTest, GenWritesRecords) {
    const auto problems = write("problems.jsonl", json::parse(kProblem).dump() + "\n");
    const auto script = write("mock.json", R"(["解题过程：\n【略】\n\n最终答案：\n【55】"])");
    const auto r = run("gen --problems " + q(problems) + " --generator g1 --backend mock --mock-script " + q(script));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rec = json::parse(r.out);
    EXPECT_EQ(rec.at("generator"), "g1");
    EXPECT_EQ(rec.at("solution_text"), "解题过程：\n【略】\n\n最终答案：\n【55】");
}
