#pragma once

// Seeded random inputs for property tests.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace gen {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Chains that are exactly the leaf-to-root paths of a random forest over
/// steps 1..max_step, in shuffled order.
inline std::vector<std::vector<int>> consistent_chains(std::mt19937_64& rng, int max_step) {
    std::set<int> used;
    for (int s = 1; s <= max_step; ++s) {
        if (uniform(rng, 0, 2) != 0) used.insert(s);
    }
    if (used.empty()) used.insert(uniform(rng, 1, max_step));
    std::map<int, int> parent;
    for (int s : used) {
        std::vector<int> later;
        for (int t : used) {
            if (t > s) later.push_back(t);
        }
        if (!later.empty() && uniform(rng, 0, 3) != 0) {
            parent[s] = later[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(later.size()) - 1))];
        }
    }
    std::set<int> has_child;
    for (const auto& [c, p] : parent) has_child.insert(p);
    std::vector<std::vector<int>> chains;
    for (int s : used) {
        if (has_child.count(s)) continue;
        std::vector<int> chain{s};
        while (parent.count(chain.back())) chain.push_back(parent.at(chain.back()));
        chains.push_back(chain);
    }
    std::shuffle(chains.begin(), chains.end(), rng);
    return chains;
}

/// Arbitrary strictly increasing chains; they may conflict with each other.
inline std::vector<std::vector<int>> arbitrary_chains(std::mt19937_64& rng, int max_step, int max_chains) {
    std::vector<std::vector<int>> chains;
    const int count = uniform(rng, 0, max_chains);
    for (int c = 0; c < count; ++c) {
        std::vector<int> chain;
        for (int s = 1; s <= max_step; ++s) {
            if (uniform(rng, 0, 3) == 0) chain.push_back(s);
        }
        if (chain.empty()) chain.push_back(uniform(rng, 1, max_step));
        chains.push_back(chain);
    }
    return chains;
}

}  // namespace gen
