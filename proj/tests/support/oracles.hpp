#pragma once

// Independent reference implementations used to check the library. They share
// no code with it and favour obviousness over speed.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stepmath/core.hpp"

namespace oracle {

/// Rounds p/q (q > 0, p >= 0) to the nearest integer, halves going up.
inline std::int64_t round_nonneg(std::int64_t p, std::int64_t q) { return (2 * p + q) / (2 * q); }

/// Weighted step score on 0..10. Calculation: 6 * (correct among the first
/// N-1) / (N-1) + 4 * last; a single step scores 10 * last. Otherwise
/// 10 * correct / N.
inline int weighted_score(stepmath::ProblemType type, const std::vector<int>& g) {
    const auto n = static_cast<std::int64_t>(g.size());
    std::int64_t correct = 0;
    for (int x : g) correct += x;
    if (type == stepmath::ProblemType::Calculation) {
        if (n == 1) return 10 * g[0];
        const std::int64_t prefix = correct - g.back();
        // 6*prefix/(n-1) + 4*last == (6*prefix + 4*last*(n-1)) / (n-1)
        return static_cast<int>(round_nonneg(6 * prefix + 4 * g.back() * (n - 1), n - 1));
    }
    return static_cast<int>(round_nonneg(10 * correct, n));
}

inline int pass_fail(stepmath::ProblemType type, const std::vector<int>& g, int score) {
    if (type == stepmath::ProblemType::Calculation) return g.back();
    return score > 5 ? 1 : 0;
}

/// Leaf-to-root paths implied by a set of chains: the successor relation is
/// taken from the first chain that mentions each index.
inline std::set<std::vector<int>> implied_paths(const std::vector<std::vector<int>>& chains) {
    std::map<int, int> next;
    std::set<int> nodes;
    for (const auto& c : chains) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            nodes.insert(c[i]);
            if (i + 1 < c.size()) next.emplace(c[i], c[i + 1]);
        }
    }
    std::set<int> has_child;
    for (const auto& [from, to] : next) has_child.insert(to);
    std::set<std::vector<int>> paths;
    for (int n : nodes) {
        if (has_child.count(n)) continue;
        std::vector<int> path{n};
        while (next.count(path.back())) path.push_back(next.at(path.back()));
        paths.insert(path);
    }
    return paths;
}

}  // namespace oracle
