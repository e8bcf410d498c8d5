#pragma once

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "msdkit/core/error.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/metrics/tokenize.hpp"

namespace msdkit {

namespace detail {

// Document frequency per n-gram order: in how many pairs' reference sets
// the n-gram occurs (a pair counts once however many references repeat it).
inline std::array<std::unordered_map<std::string, int>, 4>
reference_document_frequency(const std::vector<CaptionPair>& pairs) {
    std::array<std::unordered_map<std::string, int>, 4> df;
    for (const auto& pair : pairs) {
        std::array<std::unordered_map<std::string, bool>, 4> seen;
        for (const auto& ref : pair.references) {
            const auto tokens = tokenize(ref);
            for (int n = 1; n <= 4; ++n)
                for (const auto& [gram, count] : ngram_counts(tokens, n))
                    seen[static_cast<std::size_t>(n - 1)][gram] = true;
        }
        for (std::size_t n = 0; n < 4; ++n)
            for (const auto& [gram, present] : seen[n]) ++df[n][gram];
    }
    return df;
}

using TfIdfVector = std::unordered_map<std::string, double>;

inline TfIdfVector tfidf_vector(const NgramCounts& counts,
                                const std::unordered_map<std::string, int>& df,
                                double corpus_size) {
    TfIdfVector vec;
    for (const auto& [gram, count] : counts) {
        auto it = df.find(gram);
        const double doc_freq = it == df.end() ? 1.0 : std::max(1.0, static_cast<double>(it->second));
        vec[gram] = static_cast<double>(count) * std::log(corpus_size / doc_freq);
    }
    return vec;
}

inline double cosine(const TfIdfVector& a, const TfIdfVector& b) {
    double dot = 0.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
    for (const auto& [gram, weight] : a) {
        norm_a += weight * weight;
        auto it = b.find(gram);
        if (it != b.end()) dot += weight * it->second;
    }
    for (const auto& [gram, weight] : b) norm_b += weight * weight;
    if (norm_a <= 0.0 || norm_b <= 0.0) return 0.0;
    return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

} // namespace detail

// CIDEr: per n-gram order 1..4 the cosine similarity of TF-IDF vectors
// between candidate and each reference, averaged over references; the pair
// score is 10 times the mean over orders and the corpus score the mean over
// pairs. IDF uses log(|corpus| / df) over the reference corpus, so a
// single-pair corpus degenerates to zero.
inline double cider(const std::vector<CaptionPair>& pairs,
                    std::vector<std::string>* warnings = nullptr) {
    if (pairs.empty()) raise(errc::input, "CIDEr requires a non-empty corpus");
    if (pairs.size() < 2 && warnings)
        warnings->push_back("cider: single-pair corpus, all IDF weights are zero");

    const auto df = detail::reference_document_frequency(pairs);
    const double corpus_size = static_cast<double>(pairs.size());

    double corpus_sum = 0.0;
    for (const auto& pair : pairs) {
        const auto cand_profile = NGramProfile::build(tokenize(pair.candidate));
        double order_sum = 0.0;
        for (std::size_t n = 0; n < 4; ++n) {
            const auto cand_vec = detail::tfidf_vector(cand_profile.counts[n], df[n], corpus_size);
            double ref_sum = 0.0;
            for (const auto& ref : pair.references) {
                const auto ref_vec =
                    detail::tfidf_vector(ngram_counts(tokenize(ref), static_cast<int>(n + 1)),
                                         df[n], corpus_size);
                ref_sum += detail::cosine(cand_vec, ref_vec);
            }
            order_sum += ref_sum / static_cast<double>(pair.references.size());
        }
        corpus_sum += 10.0 * order_sum / 4.0;
    }
    return corpus_sum / corpus_size;
}

} // namespace msdkit
