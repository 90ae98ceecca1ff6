// Grades one calculation response with a scripted backend and prints the
// score, the per-step verdicts and the error forest.

#include <iostream>

#include "stepmath/stepmath.hpp"

int main() {
    using namespace stepmath;

    Problem problem;
    problem.id = "demo-1";
    problem.statement = "求 1 + 2 + ... + 10 的值。";
    problem.problem_type = ProblemType::Calculation;
    problem.category_primary = PrimaryCategory::Elementary;
    problem.category_secondary = "Arithmetic";
    problem.reference_answer = "55";

    const std::string solution =
        "解题过程：\n【首项加末项得 11，共 5 对，11×5=55。】\n最终答案：\n【55】";

    // What a grader model might return: three steps, step 2 wrong, the error
    // carried into step 3.
    MockBackend backend({R"j(评分如下。
{"（1）首项加末项得 11": 1, "（2）共 6 对": 0, "（3）11×5=55": 0, "最终得分": 5, "错误链": "(2)-(3)"})j"});

    EvalConfig config;
    const auto result = evaluate(problem, solution, config, backend, problem.id);

    std::cout << "final score: " << result.final_score << " (model reported "
              << result.reported_final.value_or(-1) << ")\n";
    for (const auto& s : result.steps) {
        std::cout << "  (" << s.index << ") " << s.score << "  " << s.text << '\n';
    }
    for (const auto& d : result.diagnostics) std::cout << "note: " << d << '\n';
    std::cout << export_dot(result.forest);
}
