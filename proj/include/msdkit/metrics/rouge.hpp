#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/metrics/tokenize.hpp"

namespace msdkit {

enum class RougeVariant {
    f1,     // balanced F-measure (beta = 1)
    recall, // the classical recall-oriented score
};

namespace detail {

inline double precision_recall_score(double overlap, double cand_total, double ref_total,
                                     RougeVariant variant) {
    const double recall = ref_total > 0.0 ? overlap / ref_total : 0.0;
    if (variant == RougeVariant::recall) return recall;
    const double precision = cand_total > 0.0 ? overlap / cand_total : 0.0;
    if (precision + recall <= 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

// Token-level longest common subsequence length.
inline std::size_t lcs_length(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                curr[j] = prev[j - 1] + 1;
            else
                curr[j] = std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

} // namespace detail

// ROUGE-N: per pair the best score over references of the n-gram overlap;
// corpus value is the mean over pairs.
inline double rouge_n(const std::vector<CaptionPair>& pairs, int n,
                      RougeVariant variant = RougeVariant::f1) {
    if (n < 1 || n > 2) raise(errc::input, "ROUGE-N order must be 1 or 2");
    if (pairs.empty()) raise(errc::input, "ROUGE requires a non-empty corpus");

    double sum = 0.0;
    for (const auto& pair : pairs) {
        const auto candidate = tokenize(pair.candidate);
        const auto cand_ngrams = ngram_counts(candidate, n);
        double cand_total = 0.0;
        for (const auto& [gram, count] : cand_ngrams) cand_total += count;

        double best = 0.0;
        for (const auto& ref : pair.references) {
            const auto ref_tokens = tokenize(ref);
            const auto ref_ngrams = ngram_counts(ref_tokens, n);
            double ref_total = 0.0;
            double overlap = 0.0;
            for (const auto& [gram, count] : ref_ngrams) {
                ref_total += count;
                auto it = cand_ngrams.find(gram);
                if (it != cand_ngrams.end()) overlap += std::min(count, it->second);
            }
            best = std::max(best, detail::precision_recall_score(overlap, cand_total, ref_total,
                                                                 variant));
        }
        sum += best;
    }
    return sum / static_cast<double>(pairs.size());
}

// ROUGE-L: like rouge_n with the longest-common-subsequence length in place
// of n-gram overlap.
inline double rouge_l(const std::vector<CaptionPair>& pairs,
                      RougeVariant variant = RougeVariant::f1) {
    if (pairs.empty()) raise(errc::input, "ROUGE requires a non-empty corpus");

    double sum = 0.0;
    for (const auto& pair : pairs) {
        const auto candidate = tokenize(pair.candidate);
        double best = 0.0;
        for (const auto& ref : pair.references) {
            const auto ref_tokens = tokenize(ref);
            const double lcs = static_cast<double>(detail::lcs_length(candidate, ref_tokens));
            best = std::max(best, detail::precision_recall_score(
                                      lcs, static_cast<double>(candidate.size()),
                                      static_cast<double>(ref_tokens.size()), variant));
        }
        sum += best;
    }
    return sum / static_cast<double>(pairs.size());
}

} // namespace msdkit
