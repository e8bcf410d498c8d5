#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/metrics/tokenize.hpp"

namespace msdkit {

enum class BleuMode {
    corpus,            // canonical corpus-level, no smoothing
    sentence_smoothed, // mean of add-one smoothed sentence scores, for debugging
};

namespace detail {

// Closest reference length to the candidate; ties prefer the shorter.
inline std::size_t effective_reference_length(std::size_t candidate_len,
                                              const std::vector<std::size_t>& ref_lens) {
    std::size_t best = ref_lens.front();
    for (std::size_t len : ref_lens) {
        const auto diff = [&](std::size_t l) {
            return l > candidate_len ? l - candidate_len : candidate_len - l;
        };
        if (diff(len) < diff(best) || (diff(len) == diff(best) && len < best)) best = len;
    }
    return best;
}

struct BleuCounts {
    std::vector<double> matched;
    std::vector<double> total;
    double candidate_len = 0.0;
    double reference_len = 0.0;
};

inline BleuCounts bleu_counts(const CaptionPair& pair, int max_order) {
    BleuCounts counts;
    counts.matched.assign(static_cast<std::size_t>(max_order), 0.0);
    counts.total.assign(static_cast<std::size_t>(max_order), 0.0);

    const auto candidate = tokenize(pair.candidate);
    std::vector<std::vector<std::string>> references;
    std::vector<std::size_t> ref_lens;
    for (const auto& ref : pair.references) {
        references.push_back(tokenize(ref));
        ref_lens.push_back(references.back().size());
    }
    counts.candidate_len = static_cast<double>(candidate.size());
    counts.reference_len =
        static_cast<double>(effective_reference_length(candidate.size(), ref_lens));

    for (int n = 1; n <= max_order; ++n) {
        const auto cand_ngrams = ngram_counts(candidate, n);
        NgramCounts max_ref;
        for (const auto& ref : references)
            for (const auto& [gram, count] : ngram_counts(ref, n))
                max_ref[gram] = std::max(max_ref[gram], count);

        double matched = 0.0;
        double total = 0.0;
        for (const auto& [gram, count] : cand_ngrams) {
            total += count;
            auto it = max_ref.find(gram);
            if (it != max_ref.end()) matched += std::min(count, it->second);
        }
        counts.matched[static_cast<std::size_t>(n - 1)] = matched;
        counts.total[static_cast<std::size_t>(n - 1)] = total;
    }
    return counts;
}

inline double bleu_from_counts(const BleuCounts& counts, int max_order, bool smooth) {
    double log_precision_sum = 0.0;
    for (int n = 0; n < max_order; ++n) {
        double matched = counts.matched[static_cast<std::size_t>(n)];
        double total = counts.total[static_cast<std::size_t>(n)];
        if (smooth) {
            matched += 1.0;
            total += 1.0;
        }
        if (matched <= 0.0 || total <= 0.0) return 0.0;
        log_precision_sum += std::log(matched / total);
    }
    if (counts.candidate_len <= 0.0) return 0.0;
    const double brevity =
        std::min(0.0, 1.0 - counts.reference_len / counts.candidate_len);
    return std::exp(log_precision_sum / max_order + brevity);
}

} // namespace detail

// BLEU-n over the corpus. Corpus mode pools clipped n-gram counts and
// candidate/reference lengths across pairs before taking the geometric
// mean of precisions and the brevity penalty.
inline double bleu(const std::vector<CaptionPair>& pairs, int max_order,
                   BleuMode mode = BleuMode::corpus,
                   std::vector<std::string>* warnings = nullptr) {
    if (max_order < 1 || max_order > 4) raise(errc::input, "BLEU order must lie in 1..4");
    if (pairs.empty()) raise(errc::input, "BLEU requires a non-empty corpus");

    if (mode == BleuMode::sentence_smoothed) {
        double sum = 0.0;
        for (const auto& pair : pairs)
            sum += detail::bleu_from_counts(detail::bleu_counts(pair, max_order), max_order,
                                            /*smooth=*/true);
        return sum / static_cast<double>(pairs.size());
    }

    detail::BleuCounts pooled;
    pooled.matched.assign(static_cast<std::size_t>(max_order), 0.0);
    pooled.total.assign(static_cast<std::size_t>(max_order), 0.0);
    for (const auto& pair : pairs) {
        const auto counts = detail::bleu_counts(pair, max_order);
        for (int n = 0; n < max_order; ++n) {
            pooled.matched[static_cast<std::size_t>(n)] +=
                counts.matched[static_cast<std::size_t>(n)];
            pooled.total[static_cast<std::size_t>(n)] += counts.total[static_cast<std::size_t>(n)];
        }
        pooled.candidate_len += counts.candidate_len;
        pooled.reference_len += counts.reference_len;
    }
    if (pooled.candidate_len <= 0.0) {
        if (warnings) warnings->push_back("bleu: empty candidate corpus, score undefined");
        return 0.0;
    }
    return detail::bleu_from_counts(pooled, max_order, /*smooth=*/false);
}

} // namespace msdkit
