#pragma once

#include <array>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"

namespace msdkit {

struct JudgeAggregate {
    JudgeScores dimension_means;
    double overall = 0.0; // mean of the five dimension means
    std::size_t count = 0;
};

inline JudgeAggregate judge_aggregate(const std::vector<JudgeScores>& scores) {
    if (scores.empty()) raise(errc::input, "judge aggregation requires at least one record");

    std::array<double, 5> sums{};
    for (const auto& s : scores) {
        const auto values = s.values();
        for (std::size_t d = 0; d < values.size(); ++d) sums[d] += values[d];
    }

    JudgeAggregate agg;
    agg.count = scores.size();
    const double n = static_cast<double>(scores.size());
    agg.dimension_means.details_of_movements = sums[0] / n;
    agg.dimension_means.interaction_with_environment = sums[1] / n;
    agg.dimension_means.motivation_and_reason = sums[2] / n;
    agg.dimension_means.micro_expressions_and_emotions = sums[3] / n;
    agg.dimension_means.character_attributes = sums[4] / n;

    double total = 0.0;
    for (double mean : agg.dimension_means.values()) total += mean;
    agg.overall = total / 5.0;
    return agg;
}

inline JudgeAggregate judge_aggregate(const std::vector<JudgeRecord>& records) {
    std::vector<JudgeScores> scores;
    scores.reserve(records.size());
    for (const auto& r : records) scores.push_back(r.scores);
    return judge_aggregate(scores);
}

} // namespace msdkit
