#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/metrics/porter.hpp"
#include "msdkit/metrics/tokenize.hpp"

namespace msdkit {

namespace detail {

struct MeteorAlignment {
    std::vector<int> cand_to_ref; // -1 for unmatched candidate tokens
    std::size_t matches = 0;
};

// Two-stage unigram alignment: exact surface matches first, then Porter-stem
// matches over the leftovers. Within a stage candidates are scanned left to
// right and take the first free reference token.
inline MeteorAlignment align_unigrams(const std::vector<std::string>& cand,
                                      const std::vector<std::string>& ref) {
    MeteorAlignment alignment;
    alignment.cand_to_ref.assign(cand.size(), -1);
    std::vector<bool> ref_used(ref.size(), false);

    auto run_stage = [&](auto&& key) {
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (alignment.cand_to_ref[i] != -1) continue;
            for (std::size_t j = 0; j < ref.size(); ++j) {
                if (ref_used[j]) continue;
                if (key(cand[i]) == key(ref[j])) {
                    alignment.cand_to_ref[i] = static_cast<int>(j);
                    ref_used[j] = true;
                    ++alignment.matches;
                    break;
                }
            }
        }
    };
    run_stage([](const std::string& t) { return t; });
    run_stage([](const std::string& t) { return porter_stem(t); });
    return alignment;
}

// Chunks: maximal runs of matched candidate positions whose reference
// positions are also consecutive.
inline std::size_t chunk_count(const MeteorAlignment& alignment) {
    std::size_t chunks = 0;
    int prev_ref = -2;
    bool in_chunk = false;
    for (int ref_pos : alignment.cand_to_ref) {
        if (ref_pos < 0) {
            in_chunk = false;
            continue;
        }
        if (!in_chunk || ref_pos != prev_ref + 1) ++chunks;
        in_chunk = true;
        prev_ref = ref_pos;
    }
    return chunks;
}

inline double meteor_pair_score(const std::vector<std::string>& cand,
                                const std::vector<std::string>& ref) {
    if (cand.empty() || ref.empty()) return 0.0;
    const auto alignment = align_unigrams(cand, ref);
    if (alignment.matches == 0) return 0.0;

    const double m = static_cast<double>(alignment.matches);
    const double precision = m / static_cast<double>(cand.size());
    const double recall = m / static_cast<double>(ref.size());
    const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
    const double chunks = static_cast<double>(chunk_count(alignment));
    const double ratio = chunks / m;
    const double penalty = 0.5 * ratio * ratio * ratio;
    return f_mean * (1.0 - penalty);
}

} // namespace detail

// Simplified METEOR: exact + Porter-stem unigram alignment, no synonym
// stage. Per pair the best score over references; corpus mean over pairs.
inline double meteor_simplified(const std::vector<CaptionPair>& pairs) {
    if (pairs.empty()) raise(errc::input, "METEOR requires a non-empty corpus");
    double sum = 0.0;
    for (const auto& pair : pairs) {
        const auto cand = tokenize(pair.candidate);
        double best = 0.0;
        for (const auto& ref : pair.references)
            best = std::max(best, detail::meteor_pair_score(cand, tokenize(ref)));
        sum += best;
    }
    return sum / static_cast<double>(pairs.size());
}

} // namespace msdkit
