#pragma once

// Final-score arithmetic. Calculation problems weight the process (all steps
// but the last) against the final answer step; proof and open-ended problems
// weight the process only. All arithmetic is exact rational.

#include <cstdint>
#include <numeric>
#include <span>
#include <string>

#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"

namespace stepmath {

/// Normalized fraction with a positive denominator.
class Rational {
public:
    constexpr Rational(std::int64_t value = 0) : num_(value), den_(1) {}  // NOLINT

    constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend constexpr bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend constexpr bool operator<(Rational a, Rational b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

/// Nearest integer, ties away from zero.
constexpr std::int64_t round_half_away(Rational x) {
    if (x.num() < 0) return -round_half_away(Rational(-x.num(), x.den()));
    return (2 * x.num() + x.den()) / (2 * x.den());
}

struct AggregationPolicy {
    Rational process_weight{6};
    Rational answer_weight{4};
    Rational scale{10};

    static AggregationPolicy standard() { return {}; }

    void validate() const {
        if (process_weight < Rational(0) || answer_weight < Rational(0) || scale < Rational(0)) {
            throw Error("aggregation weights must be non-negative");
        }
        if (!(process_weight + answer_weight == scale)) {
            throw Error("process_weight + answer_weight must equal scale");
        }
    }
};

struct AggregateOutcome {
    int score = 0;
    /// Calculation with a single step: the process term is undefined and the
    /// step is scored as the answer on the full scale.
    bool degenerate_single_step = false;
};

inline AggregateOutcome aggregate_detailed(ProblemType type, std::span<const int> scores,
                                           const AggregationPolicy& policy = {}) {
    policy.validate();
    if (scores.empty()) throw Error("cannot aggregate an empty score list");
    std::int64_t correct = 0;
    for (int g : scores) {
        if (g != 0 && g != 1) throw Error("step scores must be 0 or 1");
        correct += g;
    }
    const auto n = static_cast<std::int64_t>(scores.size());

    if (type == ProblemType::Calculation) {
        const int answer = scores.back();
        if (n == 1) {
            return {static_cast<int>(round_half_away(policy.scale * Rational(answer))), true};
        }
        const Rational process = policy.process_weight * Rational(correct - answer, n - 1);
        return {static_cast<int>(round_half_away(process + policy.answer_weight * Rational(answer))),
                false};
    }
    return {static_cast<int>(round_half_away(policy.scale * Rational(correct, n))), false};
}

/// Final 0..10 grade for a list of 0/1 step scores.
inline int aggregate_score(ProblemType type, std::span<const int> scores,
                           const AggregationPolicy& policy = {}) {
    return aggregate_detailed(type, scores, policy).score;
}

/// Answer-level 0/1 grade: the last step for calculation problems, otherwise
/// whether the final score exceeds 5.
inline int binary_score(ProblemType type, std::span<const int> scores, int final_score) {
    if (type == ProblemType::Calculation) {
        if (scores.empty()) throw Error("calculation binary score needs the step scores");
        return scores.back();
    }
    return final_score <= 5 ? 0 : 1;
}

}  // namespace stepmath
