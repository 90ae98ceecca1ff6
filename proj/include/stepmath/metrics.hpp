#pragma once

// Agreement metrics between assigned and gold grades on the 0..10 scale, all
// reported on 0..100:
//   AvgS = 10 * mean(G)
//   Corr = 100 * Pearson(G, gold)
//   MSE  = 100 * mean(((G - gold) / 10)^2)
//   OR   = 100 * fraction of exact matches

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"

namespace stepmath {

namespace detail {
__extension__ using wide_int = __int128;
}  // namespace detail

struct SliceMetrics {
    std::size_t count = 0;
    double avg_s = 0.0;
    double gold_avg_s = 0.0;
    double corr = 0.0;
    /// One of the vectors is constant; corr is reported as 0.
    bool corr_undefined = false;
    double mse = 0.0;
    double or_rate = 0.0;
};

struct SliceKey {
    ProblemType problem_type = ProblemType::Calculation;
    PrimaryCategory category = PrimaryCategory::Elementary;
    Difficulty difficulty = Difficulty::Easy;
};

struct MetricsReport {
    SliceMetrics overall;
    // Slices in enum order; empty slices are omitted.
    std::vector<std::pair<std::string, SliceMetrics>> by_problem_type;
    std::vector<std::pair<std::string, SliceMetrics>> by_category;
    std::vector<std::pair<std::string, SliceMetrics>> by_difficulty;
};

/// Metrics over one slice. Integer accumulation keeps identities exact
/// (Corr(x, x) is exactly 100).
inline SliceMetrics slice_metrics(std::span<const int> assigned, std::span<const int> gold) {
    if (assigned.size() != gold.size()) {
        throw Error("assigned and gold score lists differ in length (" +
                    std::to_string(assigned.size()) + " vs " + std::to_string(gold.size()) + ")");
    }
    if (assigned.empty()) throw Error("metrics need at least one scored record");

    std::int64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sdd = 0, matches = 0;
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        const std::int64_t x = assigned[i];
        const std::int64_t y = gold[i];
        if (x < 0 || x > 10 || y < 0 || y > 10) throw Error("scores must lie in [0,10]");
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        sdd += (x - y) * (x - y);
        matches += x == y ? 1 : 0;
    }
    const auto n = static_cast<std::int64_t>(assigned.size());
    const double dn = static_cast<double>(n);

    SliceMetrics m;
    m.count = assigned.size();
    m.avg_s = 10.0 * static_cast<double>(sx) / dn;
    m.gold_avg_s = 10.0 * static_cast<double>(sy) / dn;
    m.mse = static_cast<double>(sdd) / dn;
    m.or_rate = 100.0 * static_cast<double>(matches) / dn;

    const std::int64_t cxx = n * sxx - sx * sx;
    const std::int64_t cyy = n * syy - sy * sy;
    const std::int64_t cxy = n * sxy - sx * sy;
    if (cxx == 0 || cyy == 0) {
        m.corr = 0.0;
        m.corr_undefined = true;
    } else if (static_cast<detail::wide_int>(cxy) * cxy == static_cast<detail::wide_int>(cxx) * cyy) {
        m.corr = cxy > 0 ? 100.0 : -100.0;
    } else {
        const long double r = static_cast<long double>(cxy) /
                              (std::sqrt(static_cast<long double>(cxx)) *
                               std::sqrt(static_cast<long double>(cyy)));
        m.corr = static_cast<double>(100.0L * std::clamp(r, -1.0L, 1.0L));
    }
    return m;
}

/// Overall and per-slice metrics for paired assigned/gold grades.
inline MetricsReport compute_metrics(std::span<const int> assigned, std::span<const int> gold,
                                     std::span<const SliceKey> keys) {
    if (assigned.size() != gold.size() || assigned.size() != keys.size()) {
        throw Error("assigned, gold and slice key lists must have equal lengths");
    }
    MetricsReport report;
    report.overall = slice_metrics(assigned, gold);

    auto slice = [&](auto values, auto&& key_of, auto& target) {
        for (auto v : values) {
            std::vector<int> a;
            std::vector<int> g;
            for (std::size_t i = 0; i < keys.size(); ++i) {
                if (key_of(keys[i]) == v) {
                    a.push_back(assigned[i]);
                    g.push_back(gold[i]);
                }
            }
            if (!a.empty()) target.emplace_back(std::string(to_string(v)), slice_metrics(a, g));
        }
    };
    slice(kProblemTypes, [](const SliceKey& k) { return k.problem_type; }, report.by_problem_type);
    slice(kPrimaryCategories, [](const SliceKey& k) { return k.category; }, report.by_category);
    slice(kDifficulties, [](const SliceKey& k) { return k.difficulty; }, report.by_difficulty);
    return report;
}

}  // namespace stepmath
